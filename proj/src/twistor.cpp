#include "twistorkit/twistor.hpp"

#include <cmath>

namespace twk {

TwistorVector normalize_twistor(const TwistorVector& w) {
  Eigen::Index k = 0;
  w.cwiseAbs().maxCoeff(&k);
  if (w(k) == cplx(0.0)) throw DegenerateAtPoint("zero twistor");
  return w / w(k);
}

bool same_twistor(const TwistorVector& a, const TwistorVector& b, double tol) {
  return (normalize_twistor(a) - normalize_twistor(b)).cwiseAbs().maxCoeff() <= tol;
}

TwistorVector iota(const Point4C& p, const ProjectivePair& d) {
  const NullCoords n = to_null(p);
  TwistorVector w;
  w << d.w0, d.w1, d.w0 * n.q1 - d.w1 * n.qt2, d.w0 * n.q2 + d.w1 * n.qt1;
  return normalize_twistor(w);
}

Eigen::Vector2cd incidence(const TwistorVector& w, const Point4C& p) {
  const NullCoords n = to_null(p);
  return {w(0) * n.q1 - w(1) * n.qt2 - w(2), w(0) * n.q2 + w(1) * n.qt1 - w(3)};
}

namespace {

// Components 2 and 3 after translating by -a.
Eigen::Vector2cd translated_tail(const TwistorVector& w, const Point4C& a) {
  const NullCoords n = to_null(a);
  return {w(2) - w(0) * n.q1 + w(1) * n.qt2, w(3) - w(0) * n.q2 - w(1) * n.qt1};
}

}  // namespace

CompactPoint pi_a(const TwistorVector& w, const Point4C& a) {
  const double norm = std::norm(w(0)) + std::norm(w(1));
  if (norm <= tolerances().alg * w.squaredNorm()) return Infinity{};
  const Eigen::Vector2cd t = translated_tail(w, a);
  const cplx Q1 = (std::conj(w(0)) * t(0) + w(1) * std::conj(t(1))) / norm;
  const cplx Q2 = (std::conj(w(0)) * t(1) - w(1) * std::conj(t(0))) / norm;
  return Point4C(a[0] + Q1.real(), a[1] + Q1.imag(), a[2] + Q2.real(), a[3] + Q2.imag());
}

cplx hermitian_form(const TwistorVector& v, const TwistorVector& w) {
  return v(0) * std::conj(w(2)) + v(1) * std::conj(w(3)) + v(2) * std::conj(w(0)) +
         v(3) * std::conj(w(1));
}

Eigen::Matrix4cd hermitian_form_matrix() {
  Eigen::Matrix4cd H = Eigen::Matrix4cd::Zero();
  H.topRightCorner<2, 2>().setIdentity();
  H.bottomLeftCorner<2, 2>().setIdentity();
  return H;
}

double in_N5(const TwistorVector& w, const Point4C& a) {
  const TwistorVector n = normalize_twistor(w);
  const Eigen::Vector2cd t = translated_tail(n, a);
  TwistorVector shifted;
  shifted << n(0), n(1), t(0), t(1);
  return hermitian_form(shifted, shifted).real();
}

PluckerPoint plucker(const Matrix42c& m) {
  auto z = [&](int i, int j) { return m(i, 0) * m(j, 1) - m(j, 0) * m(i, 1); };
  PluckerPoint p;
  p << z(0, 1), z(0, 2), z(0, 3), z(1, 2), z(1, 3), z(2, 3);
  return p;
}

PluckerPoint embed_j(const Point4C& p) {
  const NullCoords n = to_null(p);
  PluckerPoint z;
  z << 1.0, -n.qt2, n.qt1, -n.q1, -n.q2, n.q1 * n.qt1 + n.q2 * n.qt2;
  return z;
}

cplx plucker_relation(const PluckerPoint& z) {
  return z(0) * z(5) - z(1) * z(4) + z(2) * z(3);
}

PluckerPoint to_xi(const PluckerPoint& z) {
  PluckerPoint xi;
  xi << z(0) + z(5), z(0) - z(5), z(2) - z(3), I * (z(2) + z(3)), -(z(1) + z(4)),
      -I * (z(1) - z(4));
  return xi;
}

PluckerPoint to_xi_tilde(const PluckerPoint& z) {
  PluckerPoint xi = to_xi(z);
  xi(2) *= I;
  return xi;
}

cplx quadric_QR(const PluckerPoint& xi) {
  return xi(0) * xi(0) - xi(1) * xi(1) - xi(2) * xi(2) - xi(3) * xi(3) - xi(4) * xi(4) -
         xi(5) * xi(5);
}

cplx quadric_QM(const PluckerPoint& x) {
  return x(0) * x(0) - x(1) * x(1) + x(2) * x(2) - x(3) * x(3) - x(4) * x(4) - x(5) * x(5);
}

Point4C beta_involution(const Point4C& p) { return Point4C(p[0], p[1], p[2], -p[3]); }

}  // namespace twk
