#pragma once

// Validation of payloads against the shipped schema. Supports the keywords
// used there: type, enum, properties, required, additionalProperties, items,
// minItems, maxItems, minimum, maximum, anyOf and local $ref.

#include <optional>
#include <string>

#include <json.hpp>

namespace cmvkit::cli {

struct SchemaViolation
{
    std::string path;     ///< JSON pointer of the offending value
    std::string message;
};

/// The embedded schema document.
const nlohmann::json& schema_document();

/// Validates `doc` against `#/$defs/<def>`; empty on success.
std::optional<SchemaViolation> validate(const nlohmann::json& doc, const std::string& def);

} // namespace cmvkit::cli
