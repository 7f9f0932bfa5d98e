#include "commands.hpp"

#include <cmath>
#include <functional>
#include <map>

#include <Eigen/SVD>

#include "schema.hpp"

namespace cmvkit::cli {

namespace {

// Residual table; a check passes when value <= limit.
class Verification
{
public:
    void add(const std::string& name, double value, double limit)
    {
        const bool pass = std::isfinite(value) && value <= limit;
        checks_[name]   = {{"value", std::isfinite(value) ? json(value) : json("inf")},
                           {"limit", limit},
                           {"pass", pass}};
        ok_ = ok_ && pass;
    }

    void flag(const std::string& name, bool pass)
    {
        checks_[name] = {{"pass", pass}};
        ok_           = ok_ && pass;
    }

    bool ok() const { return ok_; }

    json to_json() const
    {
        json j      = checks_;
        j["all_pass"] = ok_;
        return j;
    }

private:
    json checks_ = json::object();
    bool ok_     = true;
};

struct NoSolutionSignal
{
    NoSolution ns;
};

Outcome finish(json body, const Verification& v)
{
    body["verification"] = v.to_json();
    return {v.ok() ? exit_ok : exit_numeric, std::move(body)};
}

double sample_gap(const std::function<Complex(Complex)>& f, const std::function<Complex(Complex)>& g,
                  int count = 16)
{
    double gap = 0.0;
    for (const auto& z : interior_samples(count))
        gap = std::max(gap, std::abs(f(z) - g(z)));
    return gap;
}

double top_singular(const Matrix& m)
{
    return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

json truncated_body(const TruncatedCmv& t)
{
    return {{"kind", "truncated"},
            {"dimension", t.dimension()},
            {"matrix", to_json(t.dense)},
            {"params", to_json(t.params)}};
}

std::vector<Complex> flat(const std::vector<Cluster>& m)
{
    return expand(m);
}

//
// Commands
//

Outcome cmd_schur_params(const json& in, const Options& o)
{
    const auto b = blaschke_from(in.at("blaschke"));
    const auto p = schur_params_of_blaschke(b, o.tol);
    Verification v;
    v.add("khrushchev_gap", param_distance(p, khrushchev_params(b.monic(), o.tol).rotated(b.phase)), o.tol.roots);
    const auto f = rational_from_schur_params(p, o.tol);
    v.add("synthesis_gap", sample_gap(b, f), o.tol.roots);
    return finish({{"params", to_json(p)}, {"order", b.order()}}, v);
}

Outcome cmd_synth(const json& in, const Options& o)
{
    const auto p = params_from(in.at("params"));
    const auto b = blaschke_from_schur_params(p, o.tol);
    const auto f = rational_from_schur_params(p, o.tol);
    Verification v;
    v.add("synthesis_gap", sample_gap(b, f), o.tol.roots);
    if (b.order() > 0)
        v.add("param_roundtrip_gap", param_distance(schur_params_of_blaschke(b, o.tol), p), o.tol.roots);
    return finish({{"blaschke", to_json(b)}, {"order", b.order()}}, v);
}

Outcome cmd_build_cmv(const json& in, const Options& o)
{
    const auto p = params_from(in.at("params"));
    const auto c = assemble_cmv(p, o.tol);
    const auto f = lm_factors(p, o.tol);
    const double n = c.dimension();
    Verification v;
    v.add("unitarity", unitarity_defect(c.dense), o.tol.structural * n);
    v.add("lm_residual", (f.L * f.M - c.dense).norm(), o.tol.structural * n);
    v.add("alternate_transpose_gap", max_gap(alternate_cmv(p, o.tol), c.dense.transpose()), o.tol.structural);
    return finish({{"kind", "cmv"}, {"dimension", c.dimension()}, {"matrix", to_json(c.dense)},
                   {"params", to_json(p)}},
                  v);
}

Outcome cmd_truncate(const json& in, const Options& o)
{
    const auto p = params_from(in.at("params"));
    const auto t = truncate(assemble_cmv(p, o.tol));
    Verification v;
    v.add("contraction_excess", std::max(0.0, top_singular(t.dense) - 1.0), o.tol.structural * t.dimension());
    v.add("block_reassembly_gap", max_gap(reassemble(blocks(t)), t.dense), 0.0);
    v.add("block_formula_gap", max_gap(reassemble(block_formulas(p, true, t.dimension())), t.dense),
          o.tol.structural);
    const auto d = defect_data(t, o.tol);
    v.add("left_defect_residual", d.left_gram_residual, o.tol.roots);
    v.add("right_defect_residual", d.right_gram_residual, o.tol.roots);
    v.add("defect_shift_residual", d.shift_residual, o.tol.roots);

    json body           = truncated_body(t);
    body["colligation"] = {{"S", to_json(t.colligation.S)},
                           {"G", to_json(std::span<const Complex>(t.colligation.G.data(), t.colligation.G.size()))},
                           {"F", to_json(std::span<const Complex>(t.colligation.F.data(), t.colligation.F.size()))}};
    return finish(std::move(body), v);
}

Matrix truncated_input(const json& in)
{
    Matrix m = matrix_from(in.at("matrix"));
    if (in.value("kind", std::string("truncated")) == "cmv") {
        if (m.rows() < 2)
            throw ArgumentError("a CMV matrix of dimension 1 has no truncation");
        m = Matrix(m.bottomRightCorner(m.rows() - 1, m.cols() - 1));
    }
    return m;
}

Outcome cmd_recover_params(const json& in, const Options& o)
{
    const auto rec = params_from_truncated(truncated_input(in), o.tol);
    Verification v;
    v.add("reassembly_residual", rec.residual, o.tol.roots);
    json body{{"params", to_json(rec.params)}, {"unique", rec.unique}};
    if (!rec.unique)
        body["note"] = "a 1x1 matrix fixes only conj(alpha_1) alpha_0; normal form alpha_1 = 1 returned";
    return finish(std::move(body), v);
}

Outcome cmd_spectrum(const json& in, const Options& o)
{
    const Matrix m  = matrix_from(in.at("matrix"));
    const auto spec = spectrum(m, o.tol);
    const double n  = static_cast<double>(m.rows());
    Verification v;
    double worst = 0.0;
    for (double r : spec.residuals)
        worst = std::max(worst, r);
    v.add("eigen_residual", worst, 10.0 * n * o.tol.structural * std::max(1.0, m.norm()));
    int total = 0;
    for (const auto& c : spec.clustered)
        total += c.multiplicity;
    v.flag("multiplicity_total", total == m.rows());
    if (in.value("kind", std::string("truncated")) == "truncated")
        v.flag("all_in_disk", spec.all_in_disk);
    return finish({{"dimension", m.rows()},
                   {"eigenvalues", to_json(std::span<const Cluster>(spec.clustered))},
                   {"max_modulus", spec.max_modulus}},
                  v);
}

Outcome cmd_charfun(const json& in, const Options& o)
{
    const auto p = params_from(in.at("params"));
    std::vector<Complex> points = o.at;
    if (in.contains("points"))
        for (const auto& z : complex_list_from(in.at("points")))
            points.push_back(z);
    if (o.grid > 0) {
        for (int i = 0; i < o.grid; ++i)
            for (int j = 0; j < o.grid; ++j) {
                const double step = o.grid > 1 ? 1.9 / (o.grid - 1) : 0.0;
                const Complex z(-0.95 + step * i, -0.95 + step * j);
                if (std::abs(z) < 0.95)
                    points.push_back(z);
            }
    }
    if (points.empty())
        throw ArgumentError("charfun: no evaluation points (use --at, --grid or \"points\")");

    const auto c = assemble_cmv(p, o.tol);
    const auto f = rational_from_schur_params(p, o.tol);
    json values  = json::array();
    double gap = 0.0, excess = 0.0;
    for (const auto& z : points) {
        const Complex fz = charfun_schur(c, z, o.tol);
        gap              = std::max(gap, std::abs(fz - f(z)));
        excess           = std::max(excess, std::abs(fz) - 1.0);
        values.push_back({{"z", to_json(z)}, {"f", to_json(fz)}});
    }
    Verification v;
    v.add("synthesis_gap", gap, o.tol.roots);
    v.add("modulus_excess", std::max(0.0, excess), o.tol.roots);
    return finish({{"values", values}}, v);
}

Outcome cmd_measure(const json& in, const Options& o)
{
    BlaschkeProduct b;
    SchurParams p;
    if (in.contains("blaschke")) {
        b = blaschke_from(in.at("blaschke"));
        p = schur_params_of_blaschke(b, o.tol);
    } else {
        p = params_from(in.at("params"));
        b = blaschke_from_schur_params(p, o.tol);
    }
    const auto mu = measure_from_blaschke(b, o.tol);
    double raw    = 0.0;
    for (std::size_t k = 0; k < mu.support.size(); ++k) {
        const Complex zeta = mu.support[k];
        raw += (-1.0 / (zeta * (-b(zeta) * (1.0 + zeta * b.log_derivative(zeta))))).real();
    }
    Verification v;
    v.add("weight_sum_gap", std::abs(raw - 1.0), o.tol.roots);
    double min_weight = 1.0;
    for (double w : mu.weights)
        min_weight = std::min(min_weight, w);
    v.flag("weights_positive", min_weight > 0.0);
    if (p.size() > 0) {
        const auto alphas = verblunsky_from_measure(mu, o.tol);
        double gap        = 0.0;
        for (int j = 0; j < p.size(); ++j)
            gap = std::max(gap, std::abs(alphas[static_cast<std::size_t>(j)] - p[j]));
        v.add("geronimus_gap", gap, 10.0 * o.tol.roots);
    }
    return finish({{"measure", to_json(mu)}, {"params", to_json(p)}}, v);
}

Outcome cmd_invert_spectrum(const json& in, const Options& o)
{
    const auto zs    = flat(multiset_from(in.at("eigenvalues")));
    const double phi = o.phase ? *o.phase : in.value("phase", 0.0);
    const auto r     = reconstruct_from_spectrum(zs, phi, o.tol);
    Verification v;
    v.add("spectrum_gap", r.spectrum_gap, o.tol.roots);
    json body        = truncated_body(r.t);
    body["phase"]    = r.phase;
    body["warnings"] = r.warnings;
    body["note"]     = "other phases give unitarily equivalent matrices with parameters rotated by the phase";
    return finish(std::move(body), v);
}

Outcome cmd_mixed_first(const json& in, const Options& o)
{
    MixedFirstData d;
    d.n            = in.at("n").get<int>();
    d.eigen        = multiset_from(in.at("eigenvalues"));
    d.first_params = complex_list_from(in.at("first_params"));
    const auto res = solve_mixed_first(d, o.tol);

    if (const auto* ns = std::get_if<NoSolution>(&res))
        throw NoSolutionSignal{*ns};
    if (const auto* fam = std::get_if<FamilyDescriptor>(&res)) {
        Verification v;
        return finish({{"status", "family"},
                       {"free_interior", fam->free_interior},
                       {"free_terminal", fam->free_terminal},
                       {"zero_multiplicity", fam->zero_multiplicity},
                       {"description", fam->description}},
                      v);
    }
    const auto& s = std::get<MixedSolution>(res);
    Verification v;
    v.add("spectrum_gap", s.spectrum_gap, o.tol.roots);
    v.add("param_gap", s.param_gap, o.tol.roots);
    v.add("node_residual", s.node_residual, o.tol.roots);
    json body      = truncated_body(s.t);
    body["status"] = "unique";
    body["pick"]   = {{"floor", s.pick_floor}, {"second", s.pick_gap}};
    return finish(std::move(body), v);
}

Outcome cmd_mixed_last(const json& in, const Options& o)
{
    MixedLastData d;
    d.n           = in.at("n").get<int>();
    d.eigen       = flat(multiset_from(in.at("eigenvalues")));
    d.last_params = params_from(in.at("last_params"));
    ExtensionOptions eo;
    eo.seed      = o.seed;
    const auto s = mixed_last(d, eo, o.tol);
    Verification v;
    v.add("spectrum_gap", s.spectrum_gap, o.tol.roots);
    v.add("param_gap", s.param_gap, o.tol.roots);
    v.add("newton_residual", s.newton_residual, o.tol.roots);
    json body      = truncated_body(s.t);
    body["newton"] = {{"start", s.newton_start}, {"condition", s.newton_condition}, {"seed", o.seed}};
    body["note"]   = "one solution of an existence statement; uniqueness is not claimed";
    return finish(std::move(body), v);
}

Outcome cmd_verify(const json& in, const Options& o)
{
    const Matrix m         = matrix_from(in.at("matrix"));
    const std::string kind = in.value("kind", std::string("truncated"));
    const double n         = static_cast<double>(m.rows());
    Verification v;
    json body{{"kind", kind}, {"dimension", m.rows()}};

    Matrix tdense = m;
    if (kind == "cmv") {
        v.add("unitarity", unitarity_defect(m), 10.0 * o.tol.structural * n);
        double band = 0.0;
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                if (std::abs(i - j) > 2)
                    band = std::max(band, std::abs(m(i, j)));
        v.add("five_diagonal", band, 0.0);
        if (m.rows() < 2) {
            v.add("unimodular_entry", std::abs(std::abs(m(0, 0)) - 1.0), o.tol.roots);
            return finish(std::move(body), v);
        }
        tdense = m.bottomRightCorner(m.rows() - 1, m.cols() - 1);
    }

    RecoveredParams rec;
    try {
        rec = params_from_truncated(tdense, o.tol);
        v.add("reassembly_residual", rec.residual, o.tol.roots);
    } catch (const Error& e) {
        v.flag("reassembly_residual", false);
        body["failure"] = e.what();
        return finish(std::move(body), v);
    }
    body["params"] = to_json(rec.params);
    body["unique"] = rec.unique;

    if (kind == "cmv") {
        // The corner is conj(alpha_0), which the truncation does not see.
        if (rec.unique)
            v.add("corner_gap", std::abs(m(0, 0) - std::conj(rec.params[0])), o.tol.roots);
        return finish(std::move(body), v);
    }

    const auto spec = spectrum(tdense, o.tol);
    v.flag("spectrum_in_disk", spec.all_in_disk);
    v.add("contraction_excess", std::max(0.0, top_singular(tdense) - 1.0), 10.0 * o.tol.structural * n);
    if (rec.unique) {
        TruncatedCmv t = truncated_cmv(rec.params, false, o.tol);
        t.dense        = tdense;
        const auto d   = defect_data(t, o.tol);
        v.add("left_defect_residual", d.left_gram_residual, o.tol.roots);
        v.add("right_defect_residual", d.right_gram_residual, o.tol.roots);
        v.add("defect_shift_residual", d.shift_residual, o.tol.roots);
        const auto f = rational_from_schur_params(rec.params, o.tol);
        v.add("charfun_gap", sample_gap([&](Complex z) { return charfun_schur(t, z, o.tol); }, f), o.tol.roots);
        double prod = 1.0;
        for (const auto& z : spec.eigenvalues)
            prod *= std::abs(z);
        v.add("eigen_product_gap", std::abs(prod - std::abs(rec.params[0])), o.tol.roots);
    }
    return finish(std::move(body), v);
}

Outcome cmd_blaschke_sum(const json& in, const Options&)
{
    const auto rep = blaschke_condition(complex_list_from(in.at("zeros")));
    return {exit_ok,
            {{"partial_sum", rep.partial_sum},
             {"partial_sums", rep.partial_sums},
             {"nondecreasing", rep.nondecreasing},
             {"note", rep.note}}};
}

using Handler = Outcome (*)(const json&, const Options&);

const std::map<std::string, Handler>& handlers()
{
    static const std::map<std::string, Handler> h{
        {"schur-params", cmd_schur_params},     {"synth", cmd_synth},
        {"build-cmv", cmd_build_cmv},           {"truncate", cmd_truncate},
        {"recover-params", cmd_recover_params}, {"spectrum", cmd_spectrum},
        {"charfun", cmd_charfun},               {"measure", cmd_measure},
        {"invert-spectrum", cmd_invert_spectrum}, {"mixed-first", cmd_mixed_first},
        {"mixed-last", cmd_mixed_last},         {"verify", cmd_verify},
        {"blaschke-sum", cmd_blaschke_sum},
    };
    return h;
}

Outcome dispatch(Handler h, const json& input, const Options& opts)
{
    Outcome out;
    try {
        opts.tol.validate();
        out = h(input, opts);
    } catch (const NoSolutionSignal& s) {
        json diag = json::object();
        for (const auto& [k, val] : s.ns.diagnostics)
            diag[k] = val;
        out = {exit_nosolution,
               {{"status", "no-solution"},
                {"reason", s.ns.reason},
                {"diagnostics", diag},
                {"note", "numerical finding from the validation steps, not a proof of nonexistence"}}};
    } catch (const CapabilityError& e) {
        out = {exit_capability, error_object("capability", e.what())};
    } catch (const ArgumentError& e) {
        out = {exit_schema, error_object("argument", e.what())};
    } catch (const NumericError& e) {
        out = {exit_numeric, error_object("numeric", e.what())};
    } catch (const json::exception& e) {
        out = {exit_schema, error_object("schema", e.what())};
    }
    return out;
}

} // namespace

json error_object(const std::string& kind, const std::string& message, const std::string& path)
{
    json e{{"kind", kind}, {"message", message}};
    if (!path.empty())
        e["path"] = path;
    return {{"error", e}};
}

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, _] : handlers())
            v.push_back(k);
        return v;
    }();
    return names;
}

Outcome run_command(const std::string& name, const json& input, const Options& opts)
{
    Outcome out;
    const auto it = handlers().find(name);
    if (it == handlers().end()) {
        out = {exit_schema, error_object("schema", "unknown command " + name)};
    } else if (auto violation = validate(input, "input." + name)) {
        out = {exit_schema, error_object("schema", violation->message, violation->path)};
    } else {
        out = dispatch(it->second, input, opts);
    }
    out.body["command"] = name;
    return out;
}

} // namespace cmvkit::cli
