#pragma once

#include <Eigen/Dense>

#include <variant>

#include "twistorkit/coords.hpp"

namespace twk {

using TwistorVector = Eigen::Vector4cd;
using PluckerPoint = Eigen::Matrix<cplx, 6, 1>;
using Matrix42c = Eigen::Matrix<cplx, 4, 2>;

// Representative of a point of CP^3 whose largest-modulus component is 1.
TwistorVector normalize_twistor(const TwistorVector& w);

bool same_twistor(const TwistorVector& a, const TwistorVector& b, double tol);

// The alpha-plane through p in direction [w0, w1].
TwistorVector iota(const Point4C& p, const ProjectivePair& direction);

// (w0 q1 - w1 qt2 - w2, w0 q2 + w1 qt1 - w3) on the given representative.
Eigen::Vector2cd incidence(const TwistorVector& w, const Point4C& p);

using CompactPoint = std::variant<Point4C, Infinity>;

// The point of R^4_a on the alpha-plane of w; infinity when w0 = w1 = 0.
CompactPoint pi_a(const TwistorVector& w, const Point4C& a);

// h(v, w) = v0 conj(w2) + v1 conj(w3) + v2 conj(w0) + v3 conj(w1).
cplx hermitian_form(const TwistorVector& v, const TwistorVector& w);
Eigen::Matrix4cd hermitian_form_matrix();

// h(w', w') for the representative translated to a; zero exactly when the
// alpha-plane meets R^3_a.
double in_N5(const TwistorVector& w, const Point4C& a);

// Plucker coordinates (z12, z13, z14, z23, z24, z34) of the column span.
PluckerPoint plucker(const Matrix42c& columns);
PluckerPoint embed_j(const Point4C& p);
cplx plucker_relation(const PluckerPoint& z);

// xi coordinates; the Minkowski variant multiplies xi2 by i.
PluckerPoint to_xi(const PluckerPoint& z);
PluckerPoint to_xi_tilde(const PluckerPoint& z);
cplx quadric_QR(const PluckerPoint& xi);
cplx quadric_QM(const PluckerPoint& xi_tilde);

// Swaps q2 and qt2, exchanging alpha- and beta-planes.
Point4C beta_involution(const Point4C& p);

}  // namespace twk
