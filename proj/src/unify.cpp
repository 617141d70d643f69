#include "twistorkit/unify.hpp"

#include <cmath>

namespace twk {

namespace {

constexpr int kNewtonIterations = 60;
constexpr double kExtensionTolerance = 1e-12;
constexpr double kUniquenessTolerance = 1e-6;

// Stereographic parameter u = i mu as a homogeneous pair.
ProjectivePair u_of_mu(const ProjectivePair& mu) { return {mu.w0, I * mu.w1}; }

}  // namespace

Eigen::Matrix4d Frame::J() const {
  Eigen::Matrix4d J0 = Eigen::Matrix4d::Zero();
  J0(1, 0) = 1.0;
  J0(0, 1) = -1.0;
  J0(3, 2) = 1.0;
  J0(2, 3) = -1.0;
  return E * J0 * E.transpose();
}

Frame mu_to_frame(const ProjectivePair& mu) {
  const ProjectivePair u = u_of_mu(mu).normalized();
  const Eigen::Vector3d U = stereo_inv(u);
  Eigen::Vector3cd e23;
  if (u.is_infinity()) {
    e23 << 0.0, -1.0, I;
  } else {
    const cplx z = u.w1 / u.w0;
    e23 << -2.0 * z, 1.0 - z * z, I * (1.0 + z * z);
    e23 /= 1.0 + std::norm(z);
  }
  Frame f;
  f.E.setZero();
  f.E(0, 0) = 1.0;
  f.E.block<3, 1>(1, 1) = U;
  f.E.block<3, 1>(1, 2) = e23.real();
  f.E.block<3, 1>(1, 3) = e23.imag();
  return f;
}

Matrix42c alpha_plane_from_frame(const Frame& frame) {
  Matrix42c A;
  A.col(0) = frame.E.col(0).cast<cplx>() + I * frame.E.col(1).cast<cplx>();
  A.col(1) = frame.E.col(2).cast<cplx>() + I * frame.E.col(3).cast<cplx>();
  return A;
}

Matrix42c alpha_plane_basis(const ProjectivePair& mu) {
  // d/dq1 = (d0 - i d1)/2, d/dqt1 = (d0 + i d1)/2, likewise for q2, qt2.
  const Eigen::Vector4cd dq1(0.5, -0.5 * I, 0.0, 0.0);
  const Eigen::Vector4cd dqt1(0.5, 0.5 * I, 0.0, 0.0);
  const Eigen::Vector4cd dq2(0.0, 0.0, 0.5, -0.5 * I);
  const Eigen::Vector4cd dqt2(0.0, 0.0, 0.5, 0.5 * I);
  Matrix42c A;
  A.col(0) = mu.w0 * dqt1 - mu.w1 * dq2;
  A.col(1) = mu.w0 * dqt2 + mu.w1 * dq1;
  return A;
}

bool same_plane(const Matrix42c& a, const Matrix42c& b, double tol) {
  Eigen::Matrix4cd M;
  M << a, b;
  const Eigen::JacobiSVD<Eigen::Matrix4cd> svd(M);
  const auto s = svd.singularValues();
  return s(1) > tol * s(0) && s(2) <= tol * s(0);
}

namespace {

UFieldSample from_u_jet(cplx u, const Eigen::Vector4cd& du) {
  const double a = u.real(), b = u.imag();
  const double n = 1.0 + a * a + b * b;
  UFieldSample s;
  s.U << (1.0 - a * a - b * b) / n, 2.0 * a / n, 2.0 * b / n;
  Eigen::Matrix<double, 3, 2> J;
  J << -4.0 * a / (n * n), -4.0 * b / (n * n), 2.0 / n - 4.0 * a * a / (n * n),
      -4.0 * a * b / (n * n), -4.0 * a * b / (n * n), 2.0 / n - 4.0 * b * b / (n * n);
  Eigen::Matrix<double, 2, 4> dab;
  dab.row(0) = du.real().transpose();
  dab.row(1) = du.imag().transpose();
  s.D = J * dab;
  return s;
}

}  // namespace

UField ufield_from_mu(const FieldExpr& mu, BranchSign branch) {
  return [mu, branch](const Eigen::Vector4d& tx) {
    const Jet j =
        eval_jet(mu, EvalPoint::on_slice_at(from_minkowski(tx), SliceKind::M4), branch);
    return from_u_jet(I * j.value, I * j.grad);
  };
}

UField ufield_from_components(const std::array<FieldExpr, 3>& U, BranchSign branch) {
  return [U, branch](const Eigen::Vector4d& tx) {
    const EvalPoint at = EvalPoint::on_slice_at(from_minkowski(tx), SliceKind::M4);
    UFieldSample s;
    for (int k = 0; k < 3; ++k) {
      const Jet j = eval_jet(U[k], at, branch);
      s.U(k) = j.value.real();
      s.D.row(k) = j.grad.real().transpose();
    }
    return s;
  };
}

std::function<Eigen::Vector3d(const Eigen::Vector3d&)> project_to_slice(const UField& field,
                                                                         double t0) {
  return [field, t0](const Eigen::Vector3d& x) {
    return field(Eigen::Vector4d(t0, x(0), x(1), x(2))).U;
  };
}

namespace {

std::optional<Eigen::Vector3d> newton_foot(const UField& field0, const Eigen::Vector3d& x,
                                           double t, Eigen::Vector3d y) {
  for (int it = 0; it < kNewtonIterations; ++it) {
    UFieldSample s;
    try {
      s = field0(Eigen::Vector4d(0.0, y(0), y(1), y(2)));
    } catch (const SingularPoint&) {
      return std::nullopt;
    }
    const Eigen::Vector3d F = y + t * s.U - x;
    if (!F.allFinite()) return std::nullopt;
    if (F.norm() <= kExtensionTolerance * std::max(1.0, x.norm())) return y;
    const Eigen::Matrix3d Jac = Eigen::Matrix3d::Identity() + t * s.D.rightCols<3>();
    y -= Jac.fullPivLu().solve(F);
  }
  return std::nullopt;
}

}  // namespace

Extension extend_from_slice(const UField& field0, const Eigen::Vector4d& tx) {
  const double t = tx(0);
  const Eigen::Vector3d x = tx.tail<3>();
  Eigen::Vector3d U0 = Eigen::Vector3d::Zero();
  try {
    U0 = field0(Eigen::Vector4d(0.0, x(0), x(1), x(2))).U;
  } catch (const SingularPoint&) {
  }
  const auto a = newton_foot(field0, x, t, x - t * U0);
  const auto b = newton_foot(field0, x, t, x);
  if (!a && !b) throw NoPreimage("no ray from the initial slice reaches the query point");
  if (a && b && (*a - *b).norm() > kUniquenessTolerance) {
    throw NonUnique("two rays from the initial slice reach the query point");
  }
  const Eigen::Vector3d foot = a ? *a : *b;
  return {field0(Eigen::Vector4d(0.0, foot(0), foot(1), foot(2))).U, foot};
}

CongruenceTensors congruence_tensors(const UField& field, const Eigen::Vector4d& tx) {
  const UFieldSample s = field(tx);
  const Eigen::Vector3d U = s.U.normalized();
  const Eigen::Vector3d helper =
      std::abs(U(0)) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  const Eigen::Vector3d e2 = U.cross(helper).normalized();
  const Eigen::Vector3d e3 = U.cross(e2);
  const Eigen::Matrix3d DU = s.D.rightCols<3>();
  const std::array<Eigen::Vector3d, 2> e{e2, e3};
  // B(i, j) = g(nabla_{e_i} w, e_j).
  Eigen::Matrix2d B;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) B(i, j) = e[j].dot(DU * e[i]);
  }
  CongruenceTensors c;
  const Eigen::Matrix2d S = -0.5 * (B + B.transpose());
  c.expansion = S.trace();
  c.shear = S - 0.5 * S.trace() * Eigen::Matrix2d::Identity();
  c.shear_norm = c.shear.norm();
  c.twist = 0.5 * (B(1, 0) - B(0, 1));
  return c;
}

ResidualReport check_shear(const UField& field, const Domain& domain,
                           const std::vector<double>& ray_parameters, double tol) {
  if (domain.slice.kind != SliceKind::M4) throw std::invalid_argument("shear needs an M4 domain");
  return sweep(domain, {"shear"},
                   [&](const EvalPoint& at) {
                     const Eigen::Vector4d p = to_minkowski(at.point);
                     const Eigen::Vector3d U = field(p).U;
                     double worst = 0.0;
                     for (double T : ray_parameters) {
                       Eigen::Vector4d q = p;
                       q(0) += T;
                       q.tail<3>() += T * U;
                       worst = std::max(worst, congruence_tensors(field, q).shear_norm);
                     }
                     return std::vector<cplx>{worst};
                   },
                   tol)
      .front();
}

HmDirection sfr_from_hm(const FieldExpr& phi, const Eigen::Vector4d& tx, BranchSign branch) {
  const Jet j = eval_jet(phi, EvalPoint::on_slice_at(from_minkowski(tx), SliceKind::M4), branch);
  const Eigen::Vector4cd& g = j.grad;  // d/dt, d/dx1, d/dx2, d/dx3
  const double scale = g.norm();
  if (scale <= tolerances().branch) throw NotSubmersive("d phi vanishes at the point");

  Eigen::Matrix<double, 2, 4> real_jac;
  real_jac.row(0) = g.real().transpose();
  real_jac.row(1) = g.imag().transpose();
  const Eigen::JacobiSVD<Eigen::Matrix<double, 2, 4>> svd(real_jac, Eigen::ComputeFullV);
  const auto sv = svd.singularValues();

  HmDirection out;
  if (sv(1) <= 1e-8 * sv(0)) {
    // d phi is a complex multiple of one real covector alpha.
    const Eigen::Vector4d alpha = svd.matrixV().col(0);
    Eigen::Vector4d raised(-alpha(0), alpha(1), alpha(2), alpha(3));
    if (std::abs(raised(0)) <= 1e-12) throw NotSubmersive("the fibre normal is spacelike");
    raised /= raised(0);
    out.degenerate = true;
    out.null_direction = raised;
    const ProjectivePair u = stereo(raised.tail<3>());
    out.mu = ProjectivePair{u.w0, -I * u.w1}.normalized();
    return out;
  }
  const cplx dv = 0.5 * (g(1) + g(0));
  const cplx dw = 0.5 * (g(1) - g(0));
  const cplx dz = 0.5 * (g(2) - I * g(3));
  const cplx dzb = 0.5 * (g(2) + I * g(3));
  ProjectivePair mu{dz, I * dv};
  if (std::hypot(std::abs(mu.w0), std::abs(mu.w1)) <= 1e-12 * scale) mu = {I * dw, dzb};
  out.mu = mu.normalized();
  return out;
}

}  // namespace twk
