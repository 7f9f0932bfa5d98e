#pragma once

// JSON wire form: complex scalars as [re, im], matrices as row-major arrays
// of those, parameter lists with an explicit terminal, multisets as
// {value, multiplicity}.

#include <json.hpp>

#include "cmvkit/inverse.hpp"

namespace cmvkit::cli {

using nlohmann::json;

json to_json(Complex z);
json to_json(std::span<const Complex> v);
json to_json(const Matrix& m);
json to_json(const SchurParams& p);
json to_json(const BlaschkeProduct& b);
json to_json(std::span<const Cluster> clusters);
json to_json(const TrivialMeasure& mu);

Complex complex_from(const json& j);
std::vector<Complex> complex_list_from(const json& j);
Matrix matrix_from(const json& j);
SchurParams params_from(const json& j);
BlaschkeProduct blaschke_from(const json& j);
std::vector<Cluster> multiset_from(const json& j);

} // namespace cmvkit::cli
