#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <vector>

#include "twistorkit/residuals.hpp"
#include "twistorkit/twistor.hpp"

namespace twk {

// Oriented orthonormal frame of R^4 (columns e0..e3) with J e0 = e1, J e2 = e3.
struct Frame {
  Eigen::Matrix4d E = Eigen::Matrix4d::Identity();
  Eigen::Matrix4d J() const;
};

Frame mu_to_frame(const ProjectivePair& mu);

// Spanning vectors of the alpha-plane in Cartesian components.
Matrix42c alpha_plane_from_frame(const Frame& frame);
Matrix42c alpha_plane_basis(const ProjectivePair& mu);

bool same_plane(const Matrix42c& a, const Matrix42c& b, double tol);

// Spatial direction field and its derivative in Minkowski coordinates; the
// Jacobian columns are d/dt, d/dx1, d/dx2, d/dx3.
struct UFieldSample {
  Eigen::Vector3d U = Eigen::Vector3d::Zero();
  Eigen::Matrix<double, 3, 4> D = Eigen::Matrix<double, 3, 4>::Zero();
};

using UField = std::function<UFieldSample(const Eigen::Vector4d& tx)>;

// U = stereo_inv(i mu) on the Minkowski slice.
UField ufield_from_mu(const FieldExpr& mu, BranchSign branch = BranchSign::Plus);
UField ufield_from_components(const std::array<FieldExpr, 3>& U,
                              BranchSign branch = BranchSign::Plus);

// Restriction to the slice t = t0, as a function of (x1, x2, x3).
std::function<Eigen::Vector3d(const Eigen::Vector3d&)> project_to_slice(const UField& field,
                                                                         double t0);

struct Extension {
  Eigen::Vector3d U;
  Eigen::Vector3d foot;  // the point at t = 0 whose ray passes through the query
};

// Follows rays x = y + t U0(y) from the field at t = 0. Throws NoPreimage or
// NonUnique.
Extension extend_from_slice(const UField& field0, const Eigen::Vector4d& tx);

struct CongruenceTensors {
  Eigen::Matrix2d shear = Eigen::Matrix2d::Zero();
  double shear_norm = 0.0;
  double twist = 0.0;
  double expansion = 0.0;
};

// Screen-space tensors of w = d/dt + U.
CongruenceTensors congruence_tensors(const UField& field, const Eigen::Vector4d& tx);

// Shear norm at points p + T (1, U(p)) for each ray parameter T.
ResidualReport check_shear(const UField& field, const Domain& domain,
                           const std::vector<double>& ray_parameters,
                           double tol = kResidualTolerance);

struct HmDirection {
  ProjectivePair mu;
  bool degenerate = false;
  // For degenerate maps, the null direction (1, U) spanning (ker d phi)^perp.
  std::optional<Eigen::Vector4d> null_direction;
};

// Shear-free ray direction determined by a harmonic morphism on M^4.
HmDirection sfr_from_hm(const FieldExpr& phi, const Eigen::Vector4d& tx,
                        BranchSign branch = BranchSign::Plus);

}  // namespace twk
