#include "twistorkit/report_json.hpp"

#include <stdexcept>

namespace twk {

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_string()) return parse_complex(j.get<std::string>());
  throw std::invalid_argument("expected a complex number, got " + j.dump());
}

json to_json(const ResidualReport& r) {
  json failures = json::array();
  for (const Failure& f : r.failures) {
    json pt = json::array();
    for (int k = 0; k < 4; ++k) pt.push_back(to_json(f.point[k]));
    failures.push_back({{"params", f.params}, {"point", pt}, {"residual", f.residual}});
  }
  return {{"condition", r.condition},
          {"slice", to_string(r.slice)},
          {"seed", r.seed},
          {"box", {{"lo", r.box.lo}, {"hi", r.box.hi}}},
          {"samples", r.samples},
          {"skipped", r.skipped},
          {"tolerance", r.tolerance},
          {"max_abs", r.max_abs},
          {"mean_abs", r.mean_abs},
          {"passed", r.passed()},
          {"failures", failures}};
}

json to_json(const std::vector<ResidualReport>& reports) {
  json out = json::array();
  for (const auto& r : reports) out.push_back(to_json(r));
  return out;
}

json to_json(const TwistorSurface& s) {
  json monomials = json::array();
  for (const Monomial& m : s.monomials()) {
    monomials.push_back({{"e", m.e}, {"c", to_json(m.c)}});
  }
  return {{"name", s.name()}, {"degree", s.degree()}, {"monomials", monomials}};
}

TwistorSurface surface_from_json(const json& j) {
  std::vector<Monomial> monomials;
  for (const json& m : j.at("monomials")) {
    Monomial mono;
    mono.e = m.at("e").get<std::array<int, 4>>();
    mono.c = complex_from_json(m.at("c"));
    monomials.push_back(mono);
  }
  return TwistorSurface(j.value("name", std::string("surface")), monomials);
}

json to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Eigen::Matrix4cd matrix4_from_json(const json& j) {
  const json& rows = j.contains("matrix") ? j.at("matrix") : j;
  if (!rows.is_array() || rows.size() != 4) throw std::invalid_argument("expected 4 rows");
  Eigen::Matrix4cd m;
  for (int r = 0; r < 4; ++r) {
    if (rows[r].size() != 4) throw std::invalid_argument("expected 4 columns");
    for (int c = 0; c < 4; ++c) m(r, c) = complex_from_json(rows[r][c]);
  }
  return m;
}

json to_json(const ProjectivePair& p) {
  json out = {{"pair", {to_json(p.w0), to_json(p.w1)}}};
  if (p.is_infinity()) {
    out["value"] = "inf";
  } else {
    out["value"] = to_json(std::get<cplx>(p.value()));
  }
  return out;
}

json to_json(const Eigen::Vector3d& v) { return json::array({v(0), v(1), v(2)}); }

json trace_summary(const std::vector<Leaf>& leaves) {
  json out = json::array();
  for (const Leaf& l : leaves) {
    out.push_back({{"seed", to_json(l.seed)},
                   {"points", l.points.size()},
                   {"truncated", l.truncated},
                   {"invariant_drift", l.drift}});
  }
  return out;
}

}  // namespace twk
