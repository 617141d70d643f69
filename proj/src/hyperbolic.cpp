#include "twistorkit/hyperbolic.hpp"

#include <cmath>
#include <stdexcept>

namespace twk {

namespace {

constexpr double kConfluentThreshold = 1e-8;

FieldExpr var(int i) { return FieldExpr::coord(i); }

}  // namespace

const char* to_string(SurfaceFamily f) {
  switch (f) {
    case SurfaceFamily::Linear: return "linear";
    case SurfaceFamily::RadialQuadric: return "quadric-radial";
    case SurfaceFamily::CirclesQuadric: return "quadric-circles";
    case SurfaceFamily::CoaxalQuadric: return "quadric-coaxal";
  }
  return "?";
}

SurfaceChart chart_for(SurfaceFamily family, cplx s, BranchSign branch) {
  SurfaceChart c;
  c.family = family;
  c.s = s;
  c.branch = branch;
  const FieldExpr zeta = var(0), eta = var(1), one(1.0);
  switch (family) {
    case SurfaceFamily::Linear:
      c.surface = surfaces::linear(s);
      c.param = {one, zeta, eta, FieldExpr(-s) * zeta};
      c.inverse = {var(1), var(2)};
      break;
    case SurfaceFamily::RadialQuadric:
      c.surface = surfaces::radial_quadric();
      c.param = {one, zeta, eta, zeta * eta};
      c.inverse = {var(1), var(2)};
      break;
    case SurfaceFamily::CirclesQuadric:
      c.surface = surfaces::circles_quadric();
      c.param = {one, eta, -zeta, zeta * eta};
      c.inverse = {-var(2), var(1)};
      break;
    case SurfaceFamily::CoaxalQuadric:
      c.surface = surfaces::coaxal_quadric();
      c.param = {one, zeta * eta, -eta, zeta};
      c.inverse = {var(3), -var(2)};
      break;
  }
  return c;
}

std::array<FieldExpr, 4> contact_coefficients(cplx a0) {
  // -2 a0 (w1 dw0 - w0 dw1) + w1 dw2 - w2 dw1 - w0 dw3 + w3 dw0.
  const FieldExpr two_a0(2.0 * a0);
  return {var(3) - two_a0 * var(1), two_a0 * var(0) - var(2), var(1), -var(0)};
}

std::array<FieldExpr, 2> theta_pullback(const SurfaceChart& chart, cplx a0) {
  const auto coeff = contact_coefficients(a0);
  std::array<FieldExpr, 2> out;
  for (int dir = 0; dir < 2; ++dir) {
    FieldExpr acc(0.0);
    for (int k = 0; k < 4; ++k) {
      const FieldExpr dw = derivative(chart.param[k], dir);
      acc = acc + substitute(coeff[k], chart.param) * dw;
    }
    out[dir] = acc;
  }
  return out;
}

PhiSolution solve_superminimal(const SurfaceChart& chart, cplx a0) {
  PhiSolution sol;
  sol.chart = chart;
  sol.a0 = a0;
  const FieldExpr zeta = var(0), eta = var(1);
  switch (chart.family) {
    case SurfaceFamily::Linear:
      sol.zeta_tilde = (FieldExpr(2.0 * a0 + chart.s) - eta) / zeta;
      break;
    case SurfaceFamily::RadialQuadric:
      sol.zeta_tilde = zeta;
      break;
    case SurfaceFamily::CirclesQuadric:
      sol.zeta_tilde = a0 == cplx(0.0) ? zeta : zeta - FieldExpr(a0) * log(eta);
      break;
    case SurfaceFamily::CoaxalQuadric: {
      const cplx k = std::sqrt(a0 * a0 + 1.0);
      if (a0 == cplx(0.0)) {
        sol.zeta_tilde = zeta;
      } else if (std::abs(k) < kConfluentThreshold) {
        // a0^2 = -1: eta^2 + 2 a0 eta - 1 = (eta + a0)^2.
        sol.zeta_tilde = zeta * exp(FieldExpr(-2.0 * a0) / (eta + FieldExpr(a0)));
      } else {
        const FieldExpr ratio = (eta + FieldExpr(a0 + k)) / (eta + FieldExpr(a0 - k));
        sol.zeta_tilde = zeta * exp(FieldExpr(-a0 / k) * log(ratio));
      }
      break;
    }
  }
  sol.mu = kerr_field(chart.surface, chart.branch);
  sol.phi = compose_phi(sol);
  const FieldExpr& mu = sol.mu;
  const std::array<FieldExpr, 4> w{FieldExpr(1.0), mu, sym::q1() - mu * sym::qt2(),
                                   sym::q2() + mu * sym::qt1()};
  const FieldExpr zeta_c = substitute(chart.inverse[0], w);
  const FieldExpr eta_c = substitute(chart.inverse[1], w);
  switch (chart.family) {
    case SurfaceFamily::Linear:
      sol.singular_loci.push_back(zeta_c);
      break;
    case SurfaceFamily::RadialQuadric:
      break;
    case SurfaceFamily::CirclesQuadric:
      if (a0 != cplx(0.0)) sol.singular_loci.push_back(eta_c);
      break;
    case SurfaceFamily::CoaxalQuadric: {
      const cplx k = std::sqrt(a0 * a0 + 1.0);
      if (a0 == cplx(0.0)) break;
      if (std::abs(k) < kConfluentThreshold) {
        sol.singular_loci.push_back(eta_c + FieldExpr(a0));
      } else {
        sol.singular_loci.push_back(eta_c + FieldExpr(a0 + k));
        sol.singular_loci.push_back(eta_c + FieldExpr(a0 - k));
      }
      break;
    }
  }
  return sol;
}

std::function<bool(const Point4C&)> exclude_near(const std::vector<FieldExpr>& loci,
                                                 double margin) {
  return [loci, margin](const Point4C& p) {
    for (const FieldExpr& g : loci) {
      try {
        if (std::abs(eval(g, EvalPoint::holomorphic(p))) < margin) return true;
      } catch (const SingularPoint&) {
        return true;
      }
    }
    return false;
  };
}

FieldExpr compose_phi(const PhiSolution& sol) {
  const FieldExpr& mu = sol.mu;
  const std::array<FieldExpr, 4> w{FieldExpr(1.0), mu, sym::q1() - mu * sym::qt2(),
                                   sym::q2() + mu * sym::qt1()};
  const FieldExpr zeta = substitute(sol.chart.inverse[0], w);
  const FieldExpr eta = substitute(sol.chart.inverse[1], w);
  return substitute(sol.zeta_tilde, {zeta, eta, FieldExpr(0.0), FieldExpr(0.0)});
}

FieldExpr restrict_boundary(const PhiSolution& sol) {
  return substitute(sol.phi, {FieldExpr(sol.a0), sym::x(1), sym::x(2), sym::x(3)});
}

Point4C boundary_base(cplx a0) { return Point4C(a0, 0.0, 0.0, 0.0); }

ResidualReport ode_residual(const SurfaceChart& chart, cplx a0, const FieldExpr& zeta_tilde,
                            const Domain& domain, double tol) {
  if (domain.slice.kind != SliceKind::C4) throw std::invalid_argument("ODE needs a C4 domain");
  const auto theta = theta_pullback(chart, a0);
  return sweep(domain, {"superminimal-ode"},
               [&](const EvalPoint& at) {
                 const Jet z = eval_jet(zeta_tilde, at);
                 const cplx tz = eval(theta[0], at);
                 const cplx te = eval(theta[1], at);
                 return std::vector<cplx>{tz * z.grad(1) - te * z.grad(0)};
               },
               tol)
      .front();
}

std::vector<ResidualReport> check_hyperbolic_hm(const FieldExpr& phi, cplx a0,
                                                const Domain& domain, BranchSign branch,
                                                double tol) {
  if (domain.slice.kind != SliceKind::R4) throw std::invalid_argument("needs an R4 domain");
  return sweep(domain, {"hyp-laplacian", "hyp-hwc"},
               [&](const EvalPoint& at) {
                 const Jet j = eval_jet(phi, at, branch);
                 const cplx weight = at.point[0] - a0;
                 return std::vector<cplx>{
                     weight * laplacian(j, MetricKind::Euclid4) - 2.0 * j.grad(0),
                     grad_square(j, MetricKind::Euclid4)};
               },
               tol);
}

ResidualReport check_boundary_orthogonality(const FieldExpr& phi, const Domain& domain,
                                            BranchSign branch, double tol) {
  if (domain.slice.kind != SliceKind::R3) throw std::invalid_argument("needs an R3 domain");
  return sweep(domain, {"boundary-orthogonality"},
               [&](const EvalPoint& at) {
                 const Jet j =
                     eval_jet(phi, EvalPoint::on_slice_at(at.point, SliceKind::R4), branch);
                 return std::vector<cplx>{j.grad(0)};
               },
               tol)
      .front();
}

}  // namespace twk
