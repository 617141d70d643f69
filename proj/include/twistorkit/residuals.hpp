#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "twistorkit/fieldexpr.hpp"

namespace twk {

inline constexpr double kResidualTolerance = 1e-9;

// TWISTOR_SEED from the environment, else 42.
std::uint64_t default_seed();

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
};

struct Domain {
  SliceSpec slice;
  Box box;
  std::size_t samples = 500;
  std::uint64_t seed = default_seed();
  // Points for which this returns true are rejected before evaluation.
  std::function<bool(const Point4C&)> exclude;
};

Domain make_domain(SliceKind kind, Box box, std::size_t samples = 500,
                   Point4C base = Point4C{});

struct Failure {
  std::vector<double> params;
  Point4C point;
  double residual = 0.0;
};

struct ResidualReport {
  std::string condition;
  std::uint64_t seed = 0;
  SliceKind slice = SliceKind::R4;
  Box box;
  std::size_t samples = 0;
  std::size_t skipped = 0;
  double tolerance = kResidualTolerance;
  double max_abs = 0.0;
  double mean_abs = 0.0;
  std::vector<Failure> failures;

  bool passed() const { return samples > 0 && max_abs <= tolerance; }
};

// Residual components at one sample; each component becomes its own report.
using ResidualFn = std::function<std::vector<cplx>(const EvalPoint&)>;

// Seeded sweep. Samples raising SingularPoint are skipped and replaced; throws
// EmptyDomain when no sample survives.
std::vector<ResidualReport> sweep(const Domain& domain, const std::vector<std::string>& names,
                                  const ResidualFn& fn, double tol = kResidualTolerance);

// Sum_{i=1..3} (df/dx_i)^2 on R^3.
ResidualReport check_hc3(const FieldExpr& f, const Domain& domain,
                         BranchSign branch = BranchSign::Plus, double tol = kResidualTolerance);

// Pointwise residual pairs; the sample residual is the larger modulus.
std::array<cplx, 2> alpha_residuals(const Jet& mu);
std::array<cplx, 2> hermitian_residuals(const Jet& mu);
std::array<cplx, 2> sfr_residuals(const Jet& mu);

// Integrability on C^4 (holomorphic), R^4 (Wirtinger) and M^4 respectively.
ResidualReport check_alpha(const FieldExpr& mu, const Domain& domain,
                           BranchSign branch = BranchSign::Plus, double tol = kResidualTolerance);
ResidualReport check_hermitian(const FieldExpr& mu, const Domain& domain,
                               BranchSign branch = BranchSign::Plus,
                               double tol = kResidualTolerance);
ResidualReport check_sfr(const FieldExpr& mu, const Domain& domain,
                         BranchSign branch = BranchSign::Plus, double tol = kResidualTolerance);

// Laplacian and gradient-square residuals in the metric of the domain's slice.
std::vector<ResidualReport> check_harmonic_morphism(const FieldExpr& phi, const Domain& domain,
                                                    BranchSign branch = BranchSign::Plus,
                                                    double tol = kResidualTolerance);

}  // namespace twk
