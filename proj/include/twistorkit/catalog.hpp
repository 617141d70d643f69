#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twistorkit/hyperbolic.hpp"
#include "twistorkit/residuals.hpp"
#include "twistorkit/unify.hpp"

namespace twk {

struct CatalogEntry {
  std::string key;
  std::string description;
  TwistorSurface surface;
  BranchSign branch = BranchSign::Plus;
  FieldExpr mu;  // holomorphic on C^4, branch already applied
  FieldExpr f;   // harmonic conformal function on R^3 (x0 = 0)
  // Chart family producing the hyperbolic extension; absent for linear-null.
  std::optional<SurfaceChart> chart;
  std::optional<FieldExpr> phi_hyp;  // on R^4_a with a = (a0, 0, 0, 0)
  cplx a0{0.0, 0.0};
  std::vector<FieldExpr> singular_loci;  // of phi_hyp, on C^4
  std::map<SliceKind, Box> boxes;  // R3, R4, M4, C4
  Box hyp_box;                     // R4 offsets from (a0, 0, 0, 0)
  std::string trace_plane = "x2x3";
  std::vector<Eigen::Vector3d> trace_seeds;
};

std::vector<std::string> catalog_keys();

// Keys may carry a parameter: robinson:s, bunch:c.
CatalogEntry catalog_entry(const std::string& key);

Box default_box(SliceKind kind);

// Conditions: hc3, alpha, hermitian, sfr, hm, hyp, orth, shear, or all.
std::vector<std::string> condition_names();

struct VerifyOptions {
  std::string condition = "all";
  std::size_t samples = 500;
  std::uint64_t seed = default_seed();
  double tol = kResidualTolerance;
  // Replacements for the sampling boxes, keyed by slice; hyp_box replaces the
  // R4 offsets used by the hyperbolic checks.
  std::map<SliceKind, Box> boxes;
  std::optional<Box> hyp_box;
};

std::vector<ResidualReport> verify_entry(const CatalogEntry& entry, const VerifyOptions& opt);
std::vector<ResidualReport> verify_entry(const CatalogEntry& entry, const std::string& condition,
                                         std::size_t samples, std::uint64_t seed);

// Checks for a free-standing mu or phi given as an expression.
std::vector<ResidualReport> verify_mu(const FieldExpr& mu, const VerifyOptions& opt);
std::vector<ResidualReport> verify_mu(const FieldExpr& mu, const std::string& condition,
                                      std::size_t samples, std::uint64_t seed);
std::vector<ResidualReport> verify_phi(const FieldExpr& phi, const VerifyOptions& opt);
std::vector<ResidualReport> verify_phi(const FieldExpr& phi, const std::string& condition,
                                       std::size_t samples, std::uint64_t seed);

}  // namespace twk
