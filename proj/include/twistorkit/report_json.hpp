#pragma once

#include "json.hpp"

#include "twistorkit/kerr.hpp"
#include "twistorkit/residuals.hpp"
#include "twistorkit/trace.hpp"

namespace twk {

using json = nlohmann::json;

// Complex numbers are [re, im].
json to_json(cplx z);
cplx complex_from_json(const json& j);

json to_json(const ResidualReport& r);
json to_json(const std::vector<ResidualReport>& reports);

// {"name", "degree", "monomials": [{"e": [..4], "c": [re, im]}]}
json to_json(const TwistorSurface& s);
TwistorSurface surface_from_json(const json& j);

// Row-major list of rows of [re, im].
json to_json(const Eigen::MatrixXcd& m);
Eigen::Matrix4cd matrix4_from_json(const json& j);

json to_json(const ProjectivePair& p);
json to_json(const Eigen::Vector3d& v);

json trace_summary(const std::vector<Leaf>& leaves);

}  // namespace twk
