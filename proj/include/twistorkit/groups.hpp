#pragma once

#include <Eigen/Dense>

#include <string>

#include "twistorkit/fieldexpr.hpp"
#include "twistorkit/kerr.hpp"
#include "twistorkit/twistor.hpp"

namespace twk {

using Matrix6c = Eigen::Matrix<cplx, 6, 6>;

// P = [[A, B], [C, D]] in 2x2 blocks acting on column twistors.
inline Eigen::Matrix2cd block_A(const Eigen::Matrix4cd& P) { return P.topLeftCorner<2, 2>(); }
inline Eigen::Matrix2cd block_B(const Eigen::Matrix4cd& P) { return P.topRightCorner<2, 2>(); }
inline Eigen::Matrix2cd block_C(const Eigen::Matrix4cd& P) { return P.bottomLeftCorner<2, 2>(); }
inline Eigen::Matrix2cd block_D(const Eigen::Matrix4cd& P) { return P.bottomRightCorner<2, 2>(); }

Eigen::Matrix4cd from_blocks(const Eigen::Matrix2cd& A, const Eigen::Matrix2cd& B,
                             const Eigen::Matrix2cd& C, const Eigen::Matrix2cd& D);

// Q -> (C + D Q)(A + B Q)^{-1}; throws AtInfinity when A + B Q is singular.
Point4C mobius(const Eigen::Matrix4cd& P, const Point4C& p);

TwistorVector act_cp3(const Eigen::Matrix4cd& P, const TwistorVector& w);

// Second exterior power in the basis (e12, e13, e14, e23, e24, e34).
Matrix6c wedge_square(const Eigen::Matrix4cd& P);

bool is_sl2h(const Eigen::Matrix4cd& P, double tol = tolerances().alg);
bool is_su4h(const Eigen::Matrix4cd& P, double tol = tolerances().alg);

// max |h(Pv, Pw) - h(v, w)| over seeded random twistors.
double h_form_defect(const Eigen::Matrix4cd& P, int samples = 20, std::uint64_t seed = 7);

namespace conformal {
Eigen::Matrix4cd identity();
// Q -> Q + Q_c, i.e. x -> x + c in C^4.
Eigen::Matrix4cd translation(const Point4C& c);
// Minkowski translation by (t, x1, x2, x3).
Eigen::Matrix4cd minkowski_translation(const Eigen::Vector4d& tx);
// x -> lambda x.
Eigen::Matrix4cd dilation(double lambda);
// Q -> D Q D^* with D = diag(e^{r/2}, e^{-r/2}): a boost of rapidity -r along x1.
Eigen::Matrix4cd lorentz_boost(double rapidity);
// Q -> Q^{-1}.
Eigen::Matrix4cd inversion();
// diag(theta, i theta, i theta, theta) with theta^4 = -1.
Eigen::Matrix4cd cxsame();
// [[0, -I], [I, 0]]; reverses the sign of h.
Eigen::Matrix4cd h_reversal();
}  // namespace conformal

// Keys: identity, inversion, cxsame, h-reversal, dilation:L, lorentz-boost:R,
// translation:t,x1,x2,x3.
Eigen::Matrix4cd named_matrix(const std::string& key);

// Surface P(S), i.e. psi o P^{-1}.
TwistorSurface transform_surface(const Eigen::Matrix4cd& P, const TwistorSurface& psi);

// The direction field carried by the map of P: mu'(F(p)) from mu(p).
FieldExpr pushforward_mu(const Eigen::Matrix4cd& P, const FieldExpr& mu);

// Coordinates of mobius(P, p) as expressions in p.
std::array<FieldExpr, 4> mobius_expr(const Eigen::Matrix4cd& P);

// Linear map of the quadric in coordinates (eta0, eta1, xi2..xi5), blocks
// E (2x2), F (2x4), G (4x2), H (4x4).
struct QuadricBlocks {
  Eigen::Matrix2cd E = Eigen::Matrix2cd::Identity();
  Eigen::Matrix<cplx, 2, 4> F = Eigen::Matrix<cplx, 2, 4>::Zero();
  Eigen::Matrix<cplx, 4, 2> G = Eigen::Matrix<cplx, 4, 2>::Zero();
  Eigen::Matrix4cd H = Eigen::Matrix4cd::Identity();

  Matrix6c matrix() const;
};

// x in Minkowski coordinates (t, x1, x2, x3) -> 2 (1, |x|^2, x).
Eigen::Matrix<cplx, 6, 1> quadric_embedding(const Eigen::Vector4cd& x);
cplx quadric_form(const Eigen::Matrix<cplx, 6, 1>& y);

Eigen::Vector4cd act_quadric(const QuadricBlocks& R, const Eigen::Vector4cd& x);

namespace quadric {
QuadricBlocks lorentz(const Eigen::Matrix4cd& H);
QuadricBlocks dilation(double lambda);
QuadricBlocks translation(const Eigen::Vector4cd& a);
QuadricBlocks inversion(const Eigen::Matrix4cd& H);
}  // namespace quadric

}  // namespace twk
