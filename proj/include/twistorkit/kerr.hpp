#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "twistorkit/fieldexpr.hpp"

namespace twk {

struct Monomial {
  std::array<int, 4> e{};
  cplx c{0.0, 0.0};
};

// Homogeneous polynomial psi(w0, w1, w2, w3). Monomials are kept in descending
// lexicographic exponent order with duplicates merged and zeros dropped.
class TwistorSurface {
 public:
  TwistorSurface() = default;
  TwistorSurface(std::string name, std::vector<Monomial> monomials);

  const std::string& name() const { return name_; }
  int degree() const { return degree_; }
  const std::vector<Monomial>& monomials() const { return monomials_; }

  cplx operator()(const Eigen::Vector4cd& w) const;
  Eigen::Vector4cd gradient(const Eigen::Vector4cd& w) const;

 private:
  std::string name_;
  int degree_ = 0;
  std::vector<Monomial> monomials_;
};

bool surface_contains(const TwistorSurface& psi, const Eigen::Vector4cd& w,
                      double tol = tolerances().alg);

// Projective equality of coefficient lists.
bool same_surface(const TwistorSurface& a, const TwistorSurface& b, double tol);

// Polynomial in four variables, keyed by exponent tuple.
using Poly4 = std::map<std::array<int, 4>, cplx>;
// A Poly4 in the null coordinates (q1, qt1, q2, qt2).
using NullPoly = Poly4;

Poly4 multiply(const Poly4& a, const Poly4& b);
void accumulate(Poly4& a, const Poly4& b);

FieldExpr to_expr(const NullPoly& p);
cplx evaluate(const NullPoly& p, const NullCoords& n);
bool is_zero(const NullPoly& p);

// psi(1, mu, q1 - mu qt2, q2 + mu qt1) = sum_j c_j mu^j.
std::vector<NullPoly> kerr_coefficients(const TwistorSurface& psi);

// The direction [w0, w1] of the alpha-plane through p that lies in the surface.
ProjectivePair kerr_eval(const TwistorSurface& psi, const Point4C& p,
                         BranchSign branch = BranchSign::Plus);

// Closed-form mu for degree <= 2, with the branch baked in: evaluating the
// result with BranchSign::Plus yields the requested branch.
FieldExpr kerr_field(const TwistorSurface& psi, BranchSign branch = BranchSign::Plus);

// Roots of a homogeneous binary form sum_j c_j w0^{d-j} w1^j.
std::vector<ProjectivePair> binary_form_roots(const std::vector<cplx>& c);

namespace surfaces {
// s w1 + w3.
TwistorSurface linear(cplx s);
TwistorSurface radial_quadric();
TwistorSurface circles_quadric();
TwistorSurface coaxal_quadric();
}  // namespace surfaces

}  // namespace twk
