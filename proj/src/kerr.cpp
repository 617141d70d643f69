#include "twistorkit/kerr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace twk {

namespace {

constexpr int kMaxNewton = 200;

cplx monomial_value(const Monomial& m, const Eigen::Vector4cd& w) {
  cplx r = m.c;
  for (int k = 0; k < 4; ++k) {
    for (int j = 0; j < m.e[k]; ++j) r *= w(k);
  }
  return r;
}

}  // namespace

Poly4 multiply(const Poly4& a, const Poly4& b) {
  NullPoly r;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::array<int, 4> e{};
      for (int k = 0; k < 4; ++k) e[k] = ea[k] + eb[k];
      r[e] += ca * cb;
    }
  }
  std::erase_if(r, [](const auto& kv) { return kv.second == cplx(0.0); });
  return r;
}

void accumulate(Poly4& a, const Poly4& b) {
  for (const auto& [e, c] : b) a[e] += c;
  std::erase_if(a, [](const auto& kv) { return kv.second == cplx(0.0); });
}

namespace {

// Polynomials in mu whose coefficients are NullPoly.
using MuPoly = std::vector<NullPoly>;

MuPoly mu_mul(const MuPoly& a, const MuPoly& b) {
  MuPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) accumulate(r[i + j], multiply(a[i], b[j]));
  }
  return r;
}

NullPoly term(cplx c, std::array<int, 4> e) { return NullPoly{{e, c}}; }

cplx poly_eval(const std::vector<cplx>& c, cplx z) {
  cplx r = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * z + *it;
  return r;
}

std::vector<cplx> durand_kerner(const std::vector<cplx>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<cplx> monic(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) monic[k] = c[k] / c.back();
  std::vector<cplx> z(n);
  const cplx seed(0.4, 0.9);
  for (int k = 0; k < n; ++k) z[k] = std::pow(seed, k);
  for (int iter = 0; iter < 500; ++iter) {
    double change = 0.0;
    for (int k = 0; k < n; ++k) {
      cplx denom = 1.0;
      for (int j = 0; j < n; ++j) {
        if (j != k) denom *= z[k] - z[j];
      }
      const cplx step = poly_eval(monic, z[k]) / denom;
      z[k] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-15) break;
  }
  // Newton polish on the original polynomial.
  std::vector<cplx> dc(n);
  for (int k = 1; k <= n; ++k) dc[k - 1] = double(k) * c[k];
  for (auto& root : z) {
    for (int it = 0; it < kMaxNewton; ++it) {
      const cplx d = poly_eval(dc, root);
      if (d == cplx(0.0)) break;
      const cplx step = poly_eval(c, root) / d;
      root -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(root))) break;
    }
    double scale = 0.0;
    for (int k = 0; k <= n; ++k) scale += std::abs(c[k]) * std::pow(std::abs(root), k);
    if (std::abs(poly_eval(c, root)) > 1e-8 * std::max(scale, 1.0)) {
      throw NoConvergence("polynomial root did not converge");
    }
  }
  return z;
}

}  // namespace

TwistorSurface::TwistorSurface(std::string name, std::vector<Monomial> monomials)
    : name_(std::move(name)) {
  std::map<std::array<int, 4>, cplx, std::greater<>> merged;
  for (const auto& m : monomials) {
    for (int k = 0; k < 4; ++k) {
      if (m.e[k] < 0) throw std::invalid_argument("negative exponent in surface " + name_);
    }
    merged[m.e] += m.c;
  }
  int degree = -1;
  for (const auto& [e, c] : merged) {
    if (c == cplx(0.0)) continue;
    const int d = e[0] + e[1] + e[2] + e[3];
    if (degree >= 0 && d != degree) {
      throw std::invalid_argument("surface " + name_ + " is not homogeneous");
    }
    degree = d;
    monomials_.push_back({e, c});
  }
  if (monomials_.empty() || degree < 1) {
    throw std::invalid_argument("surface " + name_ + " needs a nonconstant polynomial");
  }
  degree_ = degree;
}

cplx TwistorSurface::operator()(const Eigen::Vector4cd& w) const {
  cplx r = 0.0;
  for (const auto& m : monomials_) r += monomial_value(m, w);
  return r;
}

Eigen::Vector4cd TwistorSurface::gradient(const Eigen::Vector4cd& w) const {
  Eigen::Vector4cd g = Eigen::Vector4cd::Zero();
  for (const auto& m : monomials_) {
    for (int k = 0; k < 4; ++k) {
      if (m.e[k] == 0) continue;
      Monomial d = m;
      d.c *= double(m.e[k]);
      d.e[k] -= 1;
      g(k) += monomial_value(d, w);
    }
  }
  return g;
}

bool surface_contains(const TwistorSurface& psi, const Eigen::Vector4cd& w, double tol) {
  return std::abs(psi(w)) <= tol * std::pow(w.norm(), psi.degree());
}

bool same_surface(const TwistorSurface& a, const TwistorSurface& b, double tol) {
  if (a.degree() != b.degree()) return false;
  std::map<std::array<int, 4>, std::pair<cplx, cplx>> all;
  for (const auto& m : a.monomials()) all[m.e].first = m.c;
  for (const auto& m : b.monomials()) all[m.e].second = m.c;
  // Scale from the largest coefficient of a.
  cplx ratio = 0.0;
  double best = 0.0;
  for (const auto& [e, cc] : all) {
    if (std::abs(cc.first) > best) {
      best = std::abs(cc.first);
      ratio = cc.second / cc.first;
    }
  }
  if (ratio == cplx(0.0)) return false;
  double scale = 0.0;
  for (const auto& [e, cc] : all) scale = std::max(scale, std::abs(cc.second));
  for (const auto& [e, cc] : all) {
    if (std::abs(cc.second - ratio * cc.first) > tol * scale) return false;
  }
  return true;
}

FieldExpr to_expr(const NullPoly& p) {
  const std::array<FieldExpr, 4> base{sym::q1(), sym::qt1(), sym::q2(), sym::qt2()};
  FieldExpr sum;
  bool first = true;
  for (const auto& [e, c] : p) {
    FieldExpr t(c);
    for (int k = 0; k < 4; ++k) {
      if (e[k] == 1) t = t * base[k];
      if (e[k] > 1) t = t * pow(base[k], e[k]);
    }
    sum = first ? t : sum + t;
    first = false;
  }
  return sum;
}

cplx evaluate(const NullPoly& p, const NullCoords& n) {
  const std::array<cplx, 4> base{n.q1, n.qt1, n.q2, n.qt2};
  cplx sum = 0.0;
  for (const auto& [e, c] : p) {
    cplx t = c;
    for (int k = 0; k < 4; ++k) {
      for (int j = 0; j < e[k]; ++j) t *= base[k];
    }
    sum += t;
  }
  return sum;
}

bool is_zero(const NullPoly& p) { return p.empty(); }

std::vector<NullPoly> kerr_coefficients(const TwistorSurface& psi) {
  // w1 = mu, w2 = q1 - mu qt2, w3 = q2 + mu qt1 (null index order q1, qt1, q2, qt2).
  const MuPoly one{term(1.0, {0, 0, 0, 0})};
  const MuPoly w1{NullPoly{}, term(1.0, {0, 0, 0, 0})};
  const MuPoly w2{term(1.0, {1, 0, 0, 0}), term(-1.0, {0, 0, 0, 1})};
  const MuPoly w3{term(1.0, {0, 0, 1, 0}), term(1.0, {0, 1, 0, 0})};
  const std::array<const MuPoly*, 3> factors{&w1, &w2, &w3};

  MuPoly total(psi.degree() + 1);
  for (const auto& m : psi.monomials()) {
    MuPoly p{term(m.c, {0, 0, 0, 0})};
    for (int k = 1; k < 4; ++k) {
      for (int j = 0; j < m.e[k]; ++j) p = mu_mul(p, *factors[k - 1]);
    }
    for (std::size_t j = 0; j < p.size(); ++j) accumulate(total[j], p[j]);
  }
  return total;
}

std::vector<ProjectivePair> binary_form_roots(const std::vector<cplx>& c) {
  const int d = static_cast<int>(c.size()) - 1;
  double scale = 0.0;
  for (const auto& v : c) scale = std::max(scale, std::abs(v));
  if (scale <= tolerances().alg) {
    throw DegenerateAtPoint("every alpha-plane through the point lies in the surface");
  }
  if (d == 1) return {ProjectivePair{c[1], -c[0]}};
  if (d == 2) {
    const cplx disc = c[1] * c[1] - 4.0 * c[0] * c[2];
    if (std::abs(disc) < tolerances().branch) {
      throw DegenerateAtPoint("double root: the point is on the branch locus");
    }
    const cplx s = principal_sqrt(disc);
    std::vector<ProjectivePair> roots;
    for (double sign : {1.0, -1.0}) {
      const ProjectivePair direct{2.0 * c[2], -c[1] + sign * s};
      const ProjectivePair vieta{-c[1] - sign * s, 2.0 * c[0]};
      const double nd = std::hypot(std::abs(direct.w0), std::abs(direct.w1));
      const double nv = std::hypot(std::abs(vieta.w0), std::abs(vieta.w1));
      roots.push_back(nd >= nv ? direct : vieta);
    }
    return roots;
  }
  int k = d;
  while (k > 0 && std::abs(c[k]) <= tolerances().alg * scale) --k;
  std::vector<cplx> finite(c.begin(), c.begin() + k + 1);
  std::vector<cplx> z = k > 0 ? durand_kerner(finite) : std::vector<cplx>{};
  std::sort(z.begin(), z.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::vector<ProjectivePair> roots;
  for (const auto& r : z) roots.push_back({1.0, r});
  for (int j = k; j < d; ++j) roots.push_back({0.0, 1.0});
  return roots;
}

ProjectivePair kerr_eval(const TwistorSurface& psi, const Point4C& p, BranchSign branch) {
  const auto coeffs = kerr_coefficients(psi);
  const NullCoords n = to_null(p);
  std::vector<cplx> c;
  for (const auto& poly : coeffs) c.push_back(evaluate(poly, n));
  const auto roots = binary_form_roots(c);
  if (roots.size() == 1) return roots.front();
  return branch == BranchSign::Plus ? roots.front() : roots.back();
}

FieldExpr kerr_field(const TwistorSurface& psi, BranchSign branch) {
  if (psi.degree() > 2) {
    throw UnsupportedDegree("closed-form mu exists only for degree <= 2; use kerr_eval");
  }
  const auto c = kerr_coefficients(psi);
  auto linear_root = [&]() {
    if (is_zero(c[1])) throw std::domain_error("mu is identically infinite on this surface");
    return -to_expr(c[0]) / to_expr(c[1]);
  };
  if (psi.degree() == 1 || is_zero(c[2])) return linear_root();
  const FieldExpr c0 = is_zero(c[0]) ? FieldExpr(0.0) : to_expr(c[0]);
  const FieldExpr c1 = is_zero(c[1]) ? FieldExpr(0.0) : to_expr(c[1]);
  const FieldExpr c2 = to_expr(c[2]);
  const FieldExpr root = sqrt(c1 * c1 - FieldExpr(4.0) * c0 * c2);
  const FieldExpr signed_root = branch == BranchSign::Plus ? root : -root;
  return (-c1 + signed_root) / (FieldExpr(2.0) * c2);
}

namespace surfaces {

TwistorSurface linear(cplx s) {
  return TwistorSurface("linear", {{{0, 1, 0, 0}, s}, {{0, 0, 0, 1}, 1.0}});
}

TwistorSurface radial_quadric() {
  return TwistorSurface("quadric-radial", {{{1, 0, 0, 1}, 1.0}, {{0, 1, 1, 0}, -1.0}});
}

TwistorSurface circles_quadric() {
  return TwistorSurface("quadric-circles", {{{1, 0, 0, 1}, 1.0}, {{0, 1, 1, 0}, 1.0}});
}

TwistorSurface coaxal_quadric() {
  return TwistorSurface("quadric-coaxal", {{{1, 1, 0, 0}, 1.0}, {{0, 0, 1, 1}, 1.0}});
}

}  // namespace surfaces

}  // namespace twk
