#include "twistorkit/coords.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace twk {

cplx principal_sqrt(cplx z) { return std::sqrt(cplx(z.real(), z.imag() + 0.0)); }

cplx principal_log(cplx z) { return std::log(cplx(z.real(), z.imag() + 0.0)); }

Tolerances& tolerances() {
  static Tolerances t;
  return t;
}

Point4C from_minkowski(const Eigen::Vector4d& tx) {
  return {cplx(0.0, -tx(0)), tx(1), tx(2), tx(3)};
}

Eigen::Vector4d to_minkowski(const Point4C& p) {
  return {(I * p[0]).real(), p[1].real(), p[2].real(), p[3].real()};
}

const char* to_string(SliceKind kind) {
  switch (kind) {
    case SliceKind::R4: return "R4";
    case SliceKind::R3: return "R3";
    case SliceKind::M4: return "M4";
    case SliceKind::C4: return "C4";
  }
  return "?";
}

SliceKind slice_kind_from_string(const std::string& name) {
  if (name == "R4") return SliceKind::R4;
  if (name == "R3") return SliceKind::R3;
  if (name == "M4") return SliceKind::M4;
  if (name == "C4") return SliceKind::C4;
  throw std::invalid_argument("unknown slice kind: " + name);
}

int slice_arity(SliceKind kind) {
  switch (kind) {
    case SliceKind::R4: return 4;
    case SliceKind::R3: return 3;
    case SliceKind::M4: return 4;
    case SliceKind::C4: return 8;
  }
  return 0;
}

Point4C slice_point(const SliceSpec& slice, std::span<const double> u) {
  if (static_cast<int>(u.size()) != slice_arity(slice.kind)) {
    throw std::invalid_argument(std::string("slice ") + to_string(slice.kind) + " expects " +
                                std::to_string(slice_arity(slice.kind)) + " parameters, got " +
                                std::to_string(u.size()));
  }
  Point4C p = slice.base;
  switch (slice.kind) {
    case SliceKind::R4:
      for (int i = 0; i < 4; ++i) p[i] += u[i];
      break;
    case SliceKind::R3:
      for (int i = 0; i < 3; ++i) p[i + 1] += u[i];
      break;
    case SliceKind::M4:
      p[0] += cplx(0.0, -u[0]);
      for (int i = 1; i < 4; ++i) p[i] += u[i];
      break;
    case SliceKind::C4:
      for (int i = 0; i < 4; ++i) p[i] += cplx(u[2 * i], u[2 * i + 1]);
      break;
  }
  return p;
}

Eigen::Matrix4cd slice_jacobian(SliceKind kind) {
  Eigen::Matrix4cd A = Eigen::Matrix4cd::Identity();
  if (kind == SliceKind::R3) A(0, 0) = 0.0;
  if (kind == SliceKind::M4) A(0, 0) = -I;
  return A;
}

const char* to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::Euclid4: return "euclid4";
    case MetricKind::Minkowski4: return "minkowski4";
    case MetricKind::Complex4: return "complex4";
    case MetricKind::Euclid3: return "euclid3";
  }
  return "?";
}

Eigen::Vector4d metric_signature(MetricKind kind) {
  switch (kind) {
    case MetricKind::Euclid4:
    case MetricKind::Complex4: return {1, 1, 1, 1};
    case MetricKind::Minkowski4: return {-1, 1, 1, 1};
    case MetricKind::Euclid3: return {0, 1, 1, 1};
  }
  return Eigen::Vector4d::Zero();
}

cplx metric_pair(MetricKind kind, const Eigen::Vector4cd& v, const Eigen::Vector4cd& w) {
  const Eigen::Vector4d s = metric_signature(kind);
  cplx acc = 0.0;
  for (int i = 0; i < 4; ++i) acc += s(i) * v(i) * w(i);
  return acc;
}

cplx metric_null(const Eigen::Vector4cd& v, const Eigen::Vector4cd& w) {
  return 0.5 * (v(0) * w(1) + v(1) * w(0) + v(2) * w(3) + v(3) * w(2));
}

ProjectivePair ProjectivePair::from(const ExtendedComplex& z) {
  if (std::holds_alternative<Infinity>(z)) return {0.0, 1.0};
  return {1.0, std::get<cplx>(z)};
}

bool ProjectivePair::is_infinity() const {
  return std::abs(w0) <= tolerances().alg * std::abs(w1);
}

ExtendedComplex ProjectivePair::value() const {
  if (is_infinity()) return Infinity{};
  return w1 / w0;
}

ProjectivePair ProjectivePair::normalized() const {
  const double n = std::hypot(std::abs(w0), std::abs(w1));
  if (n == 0.0) throw DegenerateAtPoint("zero homogeneous pair");
  const cplx lead = std::abs(w0) >= std::abs(w1) ? w0 : w1;
  const cplx phase = lead / std::abs(lead);
  return {w0 / (n * phase), w1 / (n * phase)};
}

bool same_projective(const ProjectivePair& a, const ProjectivePair& b, double tol) {
  const ProjectivePair na = a.normalized();
  const ProjectivePair nb = b.normalized();
  return std::abs(na.w0 * nb.w1 - na.w1 * nb.w0) <= tol;
}

Eigen::Vector3d stereo_inv(const ProjectivePair& u) {
  const double a2 = std::norm(u.w0);
  const double b2 = std::norm(u.w1);
  const double n = a2 + b2;
  if (n == 0.0) throw DegenerateAtPoint("zero homogeneous pair");
  const cplx c = u.w1 * std::conj(u.w0);
  return Eigen::Vector3d(a2 - b2, 2.0 * c.real(), 2.0 * c.imag()) / n;
}

Eigen::Vector3d stereo_inv(const ExtendedComplex& u) { return stereo_inv(ProjectivePair::from(u)); }

ProjectivePair stereo(const Eigen::Vector3d& U) {
  const Eigen::Vector3d V = U.normalized();
  if (V(0) >= 0.0) return ProjectivePair{1.0 + V(0), cplx(V(1), V(2))}.normalized();
  return ProjectivePair{cplx(V(1), -V(2)), 1.0 - V(0)}.normalized();
}

Eigen::Matrix2cd qmatrix(const Point4C& p) {
  const NullCoords n = to_null(p);
  Eigen::Matrix2cd Q;
  Q << n.q1, -n.qt2, n.q2, n.qt1;
  return Q;
}

Point4C point_from_qmatrix(const Eigen::Matrix2cd& Q) {
  return from_null(NullCoords{Q(0, 0), Q(1, 1), Q(1, 0), -Q(0, 1)});
}

bool is_quaternionic(const Eigen::Matrix2cd& X, double tol) {
  return std::abs(X(1, 1) - std::conj(X(0, 0))) <= tol &&
         std::abs(X(0, 1) + std::conj(X(1, 0))) <= tol;
}

QMatrixClass classify_qmatrix(const Eigen::Matrix2cd& Q, double tol) {
  QMatrixClass c;
  c.quaternionic = is_quaternionic(Q, tol);
  c.skew_hermitian = (Q + Q.adjoint()).cwiseAbs().maxCoeff() <= tol;
  c.point = point_from_qmatrix(Q);
  return c;
}

}  // namespace twk
