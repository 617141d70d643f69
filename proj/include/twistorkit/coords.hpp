#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <variant>

#include "twistorkit/errors.hpp"

namespace twk {

using cplx = std::complex<double>;
inline constexpr cplx I{0.0, 1.0};

// Principal branches with a signed-zero imaginary part read as +0, so that
// negative reals always sit on the upper lip of the cut.
cplx principal_sqrt(cplx z);
cplx principal_log(cplx z);

struct Tolerances {
  double alg = 1e-10;
  double branch = 1e-8;
};

// Process-wide defaults; tests and the CLI may override them.
Tolerances& tolerances();

template <typename Scalar>
struct BasicPoint4 {
  using Complex = std::complex<Scalar>;
  Eigen::Matrix<Complex, 4, 1> x = Eigen::Matrix<Complex, 4, 1>::Zero();

  BasicPoint4() = default;
  BasicPoint4(Complex x0, Complex x1, Complex x2, Complex x3) { x << x0, x1, x2, x3; }
  explicit BasicPoint4(const Eigen::Matrix<Complex, 4, 1>& v) : x(v) {}

  Complex operator[](int i) const { return x(i); }
  Complex& operator[](int i) { return x(i); }
};

template <typename Scalar>
struct BasicNullPoint {
  std::complex<Scalar> q1, qt1, q2, qt2;
};

using Point4C = BasicPoint4<double>;
using NullCoords = BasicNullPoint<double>;

template <typename Scalar>
BasicNullPoint<Scalar> to_null(const BasicPoint4<Scalar>& p) {
  const std::complex<Scalar> i{0, 1};
  return {p[0] + i * p[1], p[0] - i * p[1], p[2] + i * p[3], p[2] - i * p[3]};
}

template <typename Scalar>
BasicPoint4<Scalar> from_null(const BasicNullPoint<Scalar>& n) {
  const std::complex<Scalar> i{0, 1};
  const Scalar half{0.5};
  return {half * (n.q1 + n.qt1), -i * half * (n.q1 - n.qt1), half * (n.q2 + n.qt2),
          -i * half * (n.q2 - n.qt2)};
}

// g^C(x, x) = q1 qt1 + q2 qt2.
template <typename Scalar>
std::complex<Scalar> complex_norm_sq(const BasicPoint4<Scalar>& p) {
  return p.x.transpose() * p.x;
}

// Minkowski point (t, x1, x2, x3) sits in C^4 as (-i t, x1, x2, x3).
Point4C from_minkowski(const Eigen::Vector4d& tx);
Eigen::Vector4d to_minkowski(const Point4C& p);

enum class SliceKind { R4, R3, M4, C4 };

const char* to_string(SliceKind kind);
SliceKind slice_kind_from_string(const std::string& name);

// Number of real parameters: R4 4, R3 3, M4 4, C4 8 (re/im pairs).
int slice_arity(SliceKind kind);

struct SliceSpec {
  Point4C base;
  SliceKind kind = SliceKind::R4;
};

Point4C slice_point(const SliceSpec& slice, std::span<const double> params);

// Columns are d x / d u_j for the slice's real coordinates u, indexed so that
// column j matches x_j (t for M4, column 0 is zero for R3). C4 returns the
// identity, i.e. holomorphic derivatives.
Eigen::Matrix4cd slice_jacobian(SliceKind kind);

enum class MetricKind { Euclid4, Minkowski4, Complex4, Euclid3 };

const char* to_string(MetricKind kind);

// Diagonal of the metric in the slice's own coordinates.
Eigen::Vector4d metric_signature(MetricKind kind);

cplx metric_pair(MetricKind kind, const Eigen::Vector4cd& v, const Eigen::Vector4cd& w);

// Components ordered (q1, qt1, q2, qt2); g^C = dq1 dqt1 + dq2 dqt2.
cplx metric_null(const Eigen::Vector4cd& v, const Eigen::Vector4cd& w);

struct Infinity {
  bool operator==(const Infinity&) const = default;
};

using ExtendedComplex = std::variant<cplx, Infinity>;

// A point [w0, w1] of CP^1; the affine value is w1 / w0.
struct ProjectivePair {
  cplx w0{1.0, 0.0};
  cplx w1{0.0, 0.0};

  static ProjectivePair from(const ExtendedComplex& z);
  ExtendedComplex value() const;
  bool is_infinity() const;
  ProjectivePair normalized() const;
};

bool same_projective(const ProjectivePair& a, const ProjectivePair& b, double tol);

// Inverse stereographic projection from (-1, 0, 0); u = infinity maps to the pole.
Eigen::Vector3d stereo_inv(const ProjectivePair& u);
Eigen::Vector3d stereo_inv(const ExtendedComplex& u);
ProjectivePair stereo(const Eigen::Vector3d& U);

// Q = [[q1, -qt2], [q2, qt1]].
Eigen::Matrix2cd qmatrix(const Point4C& p);
Point4C point_from_qmatrix(const Eigen::Matrix2cd& Q);

struct QMatrixClass {
  bool quaternionic = false;
  bool skew_hermitian = false;
  Point4C point;
};

QMatrixClass classify_qmatrix(const Eigen::Matrix2cd& Q, double tol);

bool is_quaternionic(const Eigen::Matrix2cd& X, double tol);

}  // namespace twk
