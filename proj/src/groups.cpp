#include "twistorkit/groups.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace twk {

Eigen::Matrix4cd from_blocks(const Eigen::Matrix2cd& A, const Eigen::Matrix2cd& B,
                             const Eigen::Matrix2cd& C, const Eigen::Matrix2cd& D) {
  Eigen::Matrix4cd P;
  P << A, B, C, D;
  return P;
}

Point4C mobius(const Eigen::Matrix4cd& P, const Point4C& p) {
  const Eigen::Matrix2cd Q = qmatrix(p);
  const Eigen::Matrix2cd M = block_A(P) + block_B(P) * Q;
  if (std::abs(M.determinant()) < tolerances().branch) {
    throw AtInfinity("the image lies at infinity");
  }
  return point_from_qmatrix((block_C(P) + block_D(P) * Q) * M.inverse());
}

TwistorVector act_cp3(const Eigen::Matrix4cd& P, const TwistorVector& w) {
  return normalize_twistor(P * w);
}

Matrix6c wedge_square(const Eigen::Matrix4cd& P) {
  static constexpr int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  Matrix6c R;
  for (int r = 0; r < 6; ++r) {
    const int k = pairs[r][0], l = pairs[r][1];
    for (int c = 0; c < 6; ++c) {
      const int i = pairs[c][0], j = pairs[c][1];
      R(r, c) = P(k, i) * P(l, j) - P(k, j) * P(l, i);
    }
  }
  return R;
}

bool is_sl2h(const Eigen::Matrix4cd& P, double tol) {
  return std::abs(P.determinant() - 1.0) <= tol && is_quaternionic(block_A(P), tol) &&
         is_quaternionic(block_B(P), tol) && is_quaternionic(block_C(P), tol) &&
         is_quaternionic(block_D(P), tol);
}

bool is_su4h(const Eigen::Matrix4cd& P, double tol) {
  const Eigen::Matrix2cd A = block_A(P), B = block_B(P), C = block_C(P), D = block_D(P);
  auto small = [tol](const Eigen::Matrix2cd& X) { return X.cwiseAbs().maxCoeff() <= tol; };
  const bool algebraic = std::abs(P.determinant() - 1.0) <= tol &&
                         small(A.adjoint() * C + C.adjoint() * A) &&
                         small(A.adjoint() * D + C.adjoint() * B - Eigen::Matrix2cd::Identity()) &&
                         small(B.adjoint() * D + D.adjoint() * B);
  if (!algebraic) return false;
  return h_form_defect(P) <= tol * std::max(1.0, P.squaredNorm());
}

double h_form_defect(const Eigen::Matrix4cd& P, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  auto draw = [&] {
    TwistorVector v;
    for (int k = 0; k < 4; ++k) v(k) = cplx(n(rng), n(rng));
    return v;
  };
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const TwistorVector v = draw(), w = draw();
    worst = std::max(worst, std::abs(hermitian_form(P * v, P * w) - hermitian_form(v, w)));
  }
  return worst;
}

namespace conformal {

Eigen::Matrix4cd identity() { return Eigen::Matrix4cd::Identity(); }

Eigen::Matrix4cd translation(const Point4C& c) {
  const Eigen::Matrix2cd Id = Eigen::Matrix2cd::Identity();
  return from_blocks(Id, Eigen::Matrix2cd::Zero(), qmatrix(c), Id);
}

Eigen::Matrix4cd minkowski_translation(const Eigen::Vector4d& tx) {
  return translation(from_minkowski(tx));
}

Eigen::Matrix4cd dilation(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("dilation factor must be positive");
  const Eigen::Matrix2cd Id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd Z = Eigen::Matrix2cd::Zero();
  return from_blocks(Id / std::sqrt(lambda), Z, Z, Id * std::sqrt(lambda));
}

Eigen::Matrix4cd lorentz_boost(double rapidity) {
  Eigen::Matrix2cd D = Eigen::Matrix2cd::Zero();
  D(0, 0) = std::exp(rapidity / 2.0);
  D(1, 1) = std::exp(-rapidity / 2.0);
  const Eigen::Matrix2cd Z = Eigen::Matrix2cd::Zero();
  return from_blocks(D.adjoint().inverse(), Z, Z, D);
}

Eigen::Matrix4cd inversion() {
  const Eigen::Matrix2cd Id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd Z = Eigen::Matrix2cd::Zero();
  return from_blocks(Z, Id, Id, Z);
}

Eigen::Matrix4cd cxsame() {
  const cplx theta = std::polar(1.0, M_PI / 4.0);
  Eigen::Matrix4cd P = Eigen::Matrix4cd::Zero();
  P.diagonal() << theta, I * theta, I * theta, theta;
  return P;
}

Eigen::Matrix4cd h_reversal() {
  const Eigen::Matrix2cd Id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd Z = Eigen::Matrix2cd::Zero();
  return from_blocks(Z, -Id, Id, Z);
}

}  // namespace conformal

namespace {

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    out.push_back(std::stod(item, &used));
    if (used != item.size()) throw std::invalid_argument("malformed number: " + item);
  }
  return out;
}

}  // namespace

Eigen::Matrix4cd named_matrix(const std::string& key) {
  const auto colon = key.find(':');
  const std::string head = key.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : key.substr(colon + 1);
  auto numbers = [&](std::size_t n) {
    const auto v = parse_numbers(args);
    if (v.size() != n) throw std::invalid_argument("matrix key " + key + " expects " +
                                                   std::to_string(n) + " parameters");
    return v;
  };
  if (head == "identity") return conformal::identity();
  if (head == "inversion") return conformal::inversion();
  if (head == "cxsame") return conformal::cxsame();
  if (head == "h-reversal") return conformal::h_reversal();
  if (head == "dilation") return conformal::dilation(numbers(1)[0]);
  if (head == "lorentz-boost") return conformal::lorentz_boost(numbers(1)[0]);
  if (head == "translation") {
    const auto v = numbers(4);
    return conformal::minkowski_translation(Eigen::Vector4d(v[0], v[1], v[2], v[3]));
  }
  throw std::invalid_argument("unknown matrix key: " + key);
}

TwistorSurface transform_surface(const Eigen::Matrix4cd& P, const TwistorSurface& psi) {
  const Eigen::Matrix4cd Pinv = P.inverse();
  // Linear forms w_k -> sum_j Pinv(k, j) w_j.
  std::array<Poly4, 4> forms;
  for (int k = 0; k < 4; ++k) {
    for (int j = 0; j < 4; ++j) {
      if (Pinv(k, j) == cplx(0.0)) continue;
      std::array<int, 4> e{};
      e[j] = 1;
      forms[k][e] = Pinv(k, j);
    }
  }
  Poly4 total;
  for (const auto& m : psi.monomials()) {
    Poly4 term{{std::array<int, 4>{}, m.c}};
    for (int k = 0; k < 4; ++k) {
      for (int r = 0; r < m.e[k]; ++r) term = multiply(term, forms[k]);
    }
    accumulate(total, term);
  }
  double scale = 0.0;
  for (const auto& [e, c] : total) scale = std::max(scale, std::abs(c));
  std::vector<Monomial> monomials;
  for (const auto& [e, c] : total) {
    if (std::abs(c) > 1e-13 * scale) monomials.push_back({e, c});
  }
  return TwistorSurface(psi.name() + "'", monomials);
}

namespace {

using ExprMatrix = std::array<std::array<FieldExpr, 2>, 2>;

FieldExpr scaled(cplx c, const FieldExpr& e) {
  if (c == cplx(0.0)) return FieldExpr(0.0);
  if (c == cplx(1.0)) return e;
  return FieldExpr(c) * e;
}

FieldExpr sum(const FieldExpr& a, const FieldExpr& b) {
  if (a.is_constant() && a.constant() == cplx(0.0)) return b;
  if (b.is_constant() && b.constant() == cplx(0.0)) return a;
  return a + b;
}

FieldExpr product(const FieldExpr& a, const FieldExpr& b) {
  if ((a.is_constant() && a.constant() == cplx(0.0)) ||
      (b.is_constant() && b.constant() == cplx(0.0))) {
    return FieldExpr(0.0);
  }
  if (a.is_constant() && a.constant() == cplx(1.0)) return b;
  if (b.is_constant() && b.constant() == cplx(1.0)) return a;
  return a * b;
}

// K + L Q for constant K, L.
ExprMatrix affine(const Eigen::Matrix2cd& K, const Eigen::Matrix2cd& L, const ExprMatrix& Q) {
  ExprMatrix R;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      FieldExpr acc(K(i, j));
      for (int k = 0; k < 2; ++k) acc = sum(acc, scaled(L(i, k), Q[k][j]));
      R[i][j] = acc;
    }
  }
  return R;
}

ExprMatrix symbolic_q() {
  return {{{sym::q1(), -sym::qt2()}, {sym::q2(), sym::qt1()}}};
}

ExprMatrix mobius_q(const Eigen::Matrix4cd& P) {
  const ExprMatrix Q = symbolic_q();
  const ExprMatrix M = affine(block_A(P), block_B(P), Q);
  const ExprMatrix N = affine(block_C(P), block_D(P), Q);
  const bool constant_M = M[0][0].is_constant() && M[0][1].is_constant() &&
                          M[1][0].is_constant() && M[1][1].is_constant();
  ExprMatrix R;
  if (constant_M) {
    Eigen::Matrix2cd m;
    m << M[0][0].constant(), M[0][1].constant(), M[1][0].constant(), M[1][1].constant();
    const Eigen::Matrix2cd inv = m.inverse();
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        R[i][j] = sum(scaled(inv(0, j), N[i][0]), scaled(inv(1, j), N[i][1]));
      }
    }
    return R;
  }
  const FieldExpr det = sum(product(M[0][0], M[1][1]), -product(M[0][1], M[1][0]));
  const ExprMatrix adj{{{M[1][1], -M[0][1]}, {-M[1][0], M[0][0]}}};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      R[i][j] = sum(product(N[i][0], adj[0][j]), product(N[i][1], adj[1][j])) / det;
    }
  }
  return R;
}

std::array<FieldExpr, 4> cartesian_from_q(const ExprMatrix& Q) {
  return {FieldExpr(0.5) * (Q[0][0] + Q[1][1]), FieldExpr(-0.5 * I) * (Q[0][0] - Q[1][1]),
          FieldExpr(0.5) * (Q[1][0] - Q[0][1]), FieldExpr(-0.5 * I) * (Q[1][0] + Q[0][1])};
}

}  // namespace

std::array<FieldExpr, 4> mobius_expr(const Eigen::Matrix4cd& P) {
  return cartesian_from_q(mobius_q(P));
}

FieldExpr pushforward_mu(const Eigen::Matrix4cd& P, const FieldExpr& mu) {
  const Eigen::Matrix4cd Pinv = P.inverse();
  const ExprMatrix Qsrc = mobius_q(Pinv);
  const std::array<FieldExpr, 4> src = cartesian_from_q(Qsrc);
  const FieldExpr mu_src = substitute(mu, src);
  // Direction (A + B Q_src)(1, mu_src).
  const ExprMatrix M = affine(block_A(P), block_B(P), Qsrc);
  const FieldExpr w0 = sum(M[0][0], product(M[0][1], mu_src));
  const FieldExpr w1 = sum(M[1][0], product(M[1][1], mu_src));
  return w1 / w0;
}

Matrix6c QuadricBlocks::matrix() const {
  Matrix6c R;
  R << E, F, G, H;
  return R;
}

namespace {

cplx minkowski_square(const Eigen::Vector4cd& x) {
  return -x(0) * x(0) + x(1) * x(1) + x(2) * x(2) + x(3) * x(3);
}

}  // namespace

Eigen::Matrix<cplx, 6, 1> quadric_embedding(const Eigen::Vector4cd& x) {
  Eigen::Matrix<cplx, 6, 1> y;
  y << 2.0, 2.0 * minkowski_square(x), 2.0 * x;
  return y;
}

cplx quadric_form(const Eigen::Matrix<cplx, 6, 1>& y) {
  return y(0) * y(1) - minkowski_square(y.tail<4>());
}

Eigen::Vector4cd act_quadric(const QuadricBlocks& R, const Eigen::Vector4cd& x) {
  const cplx g = minkowski_square(x);
  const cplx denom = R.E(0, 0) + R.E(0, 1) * g + (R.F.row(0) * x)(0);
  if (std::abs(denom) < tolerances().branch) throw AtInfinity("the image lies at infinity");
  return (R.G.col(0) + g * R.G.col(1) + R.H * x) / denom;
}

namespace quadric {

QuadricBlocks lorentz(const Eigen::Matrix4cd& H) {
  QuadricBlocks R;
  R.H = H;
  return R;
}

QuadricBlocks dilation(double lambda) {
  QuadricBlocks R;
  R.E << 1.0 / lambda, 0.0, 0.0, lambda;
  return R;
}

QuadricBlocks translation(const Eigen::Vector4cd& a) {
  QuadricBlocks R;
  R.E << 1.0, 0.0, minkowski_square(a), 1.0;
  const Eigen::Vector4cd lowered(-a(0), a(1), a(2), a(3));
  R.F.row(1) = 2.0 * lowered.transpose();
  R.G.col(0) = a;
  return R;
}

QuadricBlocks inversion(const Eigen::Matrix4cd& H) {
  QuadricBlocks R;
  R.E << 0.0, 1.0, 1.0, 0.0;
  R.H = H;
  return R;
}

}  // namespace quadric

}  // namespace twk
