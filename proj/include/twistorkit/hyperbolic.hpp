#pragma once

#include <array>
#include <string>
#include <vector>

#include "twistorkit/kerr.hpp"
#include "twistorkit/residuals.hpp"

namespace twk {

enum class SurfaceFamily { Linear, RadialQuadric, CirclesQuadric, CoaxalQuadric };

const char* to_string(SurfaceFamily f);

// Local chart (zeta, eta) of a twistor surface. Expressions in (zeta, eta) use
// coordinates x0 = zeta and x1 = eta; expressions in w use x0..x3 = w0..w3.
struct SurfaceChart {
  SurfaceFamily family = SurfaceFamily::Linear;
  cplx s{0.0, 0.0};
  BranchSign branch = BranchSign::Plus;
  TwistorSurface surface;
  std::array<FieldExpr, 4> param;    // w(zeta, eta)
  std::array<FieldExpr, 2> inverse;  // (zeta, eta)(w), valid where w0 = 1
};

inline const VarNames kChartNames{"zeta", "eta", "x2", "x3"};
inline const VarNames kTwistorNames{"w0", "w1", "w2", "w3"};

SurfaceChart chart_for(SurfaceFamily family, cplx s = 0.0, BranchSign branch = BranchSign::Plus);

// Coefficients of Theta_a = sum_k c_k(w) dw_k.
std::array<FieldExpr, 4> contact_coefficients(cplx a0);

// (Theta_a(d/dzeta), Theta_a(d/deta)) on the chart.
std::array<FieldExpr, 2> theta_pullback(const SurfaceChart& chart, cplx a0);

struct PhiSolution {
  SurfaceChart chart;
  cplx a0{0.0, 0.0};
  FieldExpr zeta_tilde;  // in (zeta, eta)
  FieldExpr mu;          // on C^4
  FieldExpr phi;         // on C^4
  // Functions on C^4 vanishing where zeta_tilde(zeta, eta) is singular.
  std::vector<FieldExpr> singular_loci;
};

// Sampler margin around the singular loci of a hyperbolic solution.
inline constexpr double kLocusMargin = 0.05;

// Rejects points where some locus function is smaller than margin in modulus.
std::function<bool(const Point4C&)> exclude_near(const std::vector<FieldExpr>& loci,
                                                 double margin = kLocusMargin);

// Closed-form solution of Theta(d_zeta) d_eta Z - Theta(d_eta) d_zeta Z = 0.
PhiSolution solve_superminimal(const SurfaceChart& chart, cplx a0);

FieldExpr compose_phi(const PhiSolution& sol);

// The solution on R^3_a, i.e. with x0 fixed to a0.
FieldExpr restrict_boundary(const PhiSolution& sol);

Point4C boundary_base(cplx a0);

// Sweep of the chart ODE over a C4 domain whose first two complex
// coordinates are (zeta, eta).
ResidualReport ode_residual(const SurfaceChart& chart, cplx a0, const FieldExpr& zeta_tilde,
                            const Domain& domain, double tol = 1e-10);

// (x0 - a0) Laplacian - 2 d0 phi and the gradient square on R^4_a.
std::vector<ResidualReport> check_hyperbolic_hm(const FieldExpr& phi, cplx a0,
                                                const Domain& domain,
                                                BranchSign branch = BranchSign::Plus,
                                                double tol = kResidualTolerance);

// d phi / d x0 on R^3_a.
ResidualReport check_boundary_orthogonality(const FieldExpr& phi, const Domain& domain,
                                            BranchSign branch = BranchSign::Plus,
                                            double tol = kResidualTolerance);

}  // namespace twk
