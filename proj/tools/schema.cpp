#include "schema.hpp"

#include <stdexcept>

#include "embedded_schemas.hpp"

namespace cmvkit::cli {

using nlohmann::json;

namespace {

bool has_type(const json& v, const std::string& t)
{
    if (t == "object")
        return v.is_object();
    if (t == "array")
        return v.is_array();
    if (t == "number")
        return v.is_number();
    if (t == "integer")
        return v.is_number_integer() || (v.is_number_float() && v.get<double>() == static_cast<double>(static_cast<long long>(v.get<double>())));
    if (t == "string")
        return v.is_string();
    if (t == "boolean")
        return v.is_boolean();
    if (t == "null")
        return v.is_null();
    throw std::logic_error("schema: unknown type " + t);
}

const json& resolve(const std::string& ref)
{
    const std::string prefix = "#/$defs/";
    if (ref.rfind(prefix, 0) != 0)
        throw std::logic_error("schema: unsupported $ref " + ref);
    return schema_document().at("$defs").at(ref.substr(prefix.size()));
}

std::optional<SchemaViolation> check(const json& v, const json& s, const std::string& path)
{
    auto fail = [&](std::string msg) { return SchemaViolation{path.empty() ? "/" : path, std::move(msg)}; };

    if (s.contains("$ref"))
        if (auto e = check(v, resolve(s.at("$ref").get<std::string>()), path))
            return e;

    if (s.contains("type")) {
        const auto& t = s.at("type");
        bool ok       = false;
        if (t.is_array()) {
            for (const auto& alt : t)
                ok = ok || has_type(v, alt.get<std::string>());
        } else {
            ok = has_type(v, t.get<std::string>());
        }
        if (!ok)
            return fail("expected type " + t.dump());
    }

    if (s.contains("enum")) {
        bool ok = false;
        for (const auto& e : s.at("enum"))
            ok = ok || e == v;
        if (!ok)
            return fail("value not in " + s.at("enum").dump());
    }

    if (s.contains("anyOf")) {
        std::optional<SchemaViolation> last;
        bool ok = false;
        for (const auto& alt : s.at("anyOf")) {
            last = check(v, alt, path);
            if (!last) {
                ok = true;
                break;
            }
        }
        if (!ok)
            return fail("no alternative of anyOf matched (" + last->message + " at " + last->path + ")");
    }

    if (v.is_number()) {
        if (s.contains("minimum") && v.get<double>() < s.at("minimum").get<double>())
            return fail("below minimum " + s.at("minimum").dump());
        if (s.contains("maximum") && v.get<double>() > s.at("maximum").get<double>())
            return fail("above maximum " + s.at("maximum").dump());
    }

    if (v.is_array()) {
        if (s.contains("minItems") && v.size() < s.at("minItems").get<std::size_t>())
            return fail("fewer than " + s.at("minItems").dump() + " items");
        if (s.contains("maxItems") && v.size() > s.at("maxItems").get<std::size_t>())
            return fail("more than " + s.at("maxItems").dump() + " items");
        if (s.contains("items"))
            for (std::size_t i = 0; i < v.size(); ++i)
                if (auto e = check(v[i], s.at("items"), path + "/" + std::to_string(i)))
                    return e;
    }

    if (v.is_object()) {
        if (s.contains("required"))
            for (const auto& key : s.at("required"))
                if (!v.contains(key.get<std::string>()))
                    return fail("missing required property \"" + key.get<std::string>() + "\"");
        const json props = s.value("properties", json::object());
        for (const auto& [key, val] : v.items()) {
            if (props.contains(key)) {
                if (auto e = check(val, props.at(key), path + "/" + key))
                    return e;
            } else if (s.contains("additionalProperties") && s.at("additionalProperties") == false) {
                return fail("unexpected property \"" + key + "\"");
            }
        }
    }
    return std::nullopt;
}

} // namespace

const json& schema_document()
{
    static const json doc = [] {
        for (const auto& [name, text] : embedded_schemas)
            if (name == "cmvkit-v1.schema.json")
                return json::parse(text);
        throw std::logic_error("schema: cmvkit-v1.schema.json not embedded");
    }();
    return doc;
}

std::optional<SchemaViolation> validate(const json& doc, const std::string& def)
{
    return check(doc, schema_document().at("$defs").at(def), "");
}

} // namespace cmvkit::cli
