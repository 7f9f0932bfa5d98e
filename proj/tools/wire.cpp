#include "wire.hpp"

namespace cmvkit::cli {

json to_json(Complex z)
{
    // + 0.0 turns -0.0 into 0.0
    return json::array({z.real() + 0.0, z.imag() + 0.0});
}

json to_json(std::span<const Complex> v)
{
    json out = json::array();
    for (const auto& z : v)
        out.push_back(to_json(z));
    return out;
}

json to_json(const Matrix& m)
{
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(to_json(Complex(m(i, j))));
        out.push_back(std::move(row));
    }
    return out;
}

json to_json(const SchurParams& p)
{
    return {{"interior", to_json(std::span<const Complex>(p.interior))},
            {"terminal", p.terminal ? to_json(*p.terminal) : json(nullptr)}};
}

json to_json(const BlaschkeProduct& b)
{
    return {{"phase", b.phase}, {"zeros", to_json(std::span<const Complex>(b.zeros))}};
}

json to_json(std::span<const Cluster> clusters)
{
    json out = json::array();
    for (const auto& c : clusters)
        out.push_back({{"value", to_json(c.value)}, {"multiplicity", c.multiplicity}});
    return out;
}

json to_json(const TrivialMeasure& mu)
{
    return {{"support", to_json(std::span<const Complex>(mu.support))}, {"weights", mu.weights}};
}

Complex complex_from(const json& j)
{
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

std::vector<Complex> complex_list_from(const json& j)
{
    std::vector<Complex> out;
    for (const auto& e : j)
        out.push_back(complex_from(e));
    return out;
}

Matrix matrix_from(const json& j)
{
    const auto rows = static_cast<Eigen::Index>(j.size());
    Matrix m(rows, rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = j.at(static_cast<std::size_t>(i));
        if (static_cast<Eigen::Index>(row.size()) != rows)
            throw ArgumentError("matrix must be square: row " + std::to_string(i) + " has " +
                                std::to_string(row.size()) + " entries, expected " + std::to_string(rows));
        for (Eigen::Index c = 0; c < rows; ++c)
            m(i, c) = complex_from(row.at(static_cast<std::size_t>(c)));
    }
    return m;
}

SchurParams params_from(const json& j)
{
    SchurParams p;
    p.interior = complex_list_from(j.at("interior"));
    if (j.contains("terminal") && !j.at("terminal").is_null())
        p.terminal = complex_from(j.at("terminal"));
    return p;
}

BlaschkeProduct blaschke_from(const json& j)
{
    return {j.at("phase").get<double>(), complex_list_from(j.at("zeros"))};
}

std::vector<Cluster> multiset_from(const json& j)
{
    std::vector<Cluster> out;
    for (const auto& e : j)
        out.push_back({complex_from(e.at("value")), e.at("multiplicity").get<int>()});
    return out;
}

} // namespace cmvkit::cli
