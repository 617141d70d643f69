#pragma once

#include <Eigen/Dense>

#include <array>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "twistorkit/coords.hpp"

namespace twk {

enum class BranchSign { Plus = 1, Minus = -1 };

inline double sign_of(BranchSign b) { return b == BranchSign::Plus ? 1.0 : -1.0; }
inline BranchSign flip(BranchSign b) {
  return b == BranchSign::Plus ? BranchSign::Minus : BranchSign::Plus;
}
const char* to_string(BranchSign b);

enum class NodeKind { Const, Coord, Conj, Add, Sub, Mul, Div, Neg, Pow, Sqrt, Log, Exp };

struct ExprNode;

// Immutable expression over four complex coordinates x0..x3. Every Sqrt node is
// the principal root multiplied by the branch sign supplied at evaluation.
class FieldExpr {
 public:
  FieldExpr();
  FieldExpr(cplx c);
  FieldExpr(double c);
  FieldExpr(int c);

  static FieldExpr coord(int index);

  NodeKind kind() const;
  cplx constant() const;
  int index() const;
  int exponent() const;
  FieldExpr arg(int i) const;
  const ExprNode* id() const { return node_.get(); }

  bool is_constant() const { return kind() == NodeKind::Const; }

 private:
  friend FieldExpr make_node(NodeKind, cplx, int, FieldExpr, FieldExpr);
  explicit FieldExpr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ExprNode> node_;
};

FieldExpr operator+(const FieldExpr& a, const FieldExpr& b);
FieldExpr operator-(const FieldExpr& a, const FieldExpr& b);
FieldExpr operator*(const FieldExpr& a, const FieldExpr& b);
FieldExpr operator/(const FieldExpr& a, const FieldExpr& b);
FieldExpr operator-(const FieldExpr& a);
FieldExpr pow(const FieldExpr& a, int n);
FieldExpr sqrt(const FieldExpr& a);
FieldExpr log(const FieldExpr& a);
FieldExpr exp(const FieldExpr& a);
// Pushes conjugation down to the leaves.
FieldExpr conj(const FieldExpr& a);

namespace sym {
FieldExpr x(int i);
FieldExpr q1();
FieldExpr qt1();
FieldExpr q2();
FieldExpr qt2();
// t = i x0, so that on the Minkowski slice x0 = -i t.
FieldExpr t();
// v = x1 + t, w = x1 - t.
FieldExpr v();
FieldExpr w();
}  // namespace sym

// Replaces coordinate i by subs[i].
FieldExpr substitute(const FieldExpr& e, const std::array<FieldExpr, 4>& subs);

// Holomorphic derivative d e / d x_var.
FieldExpr derivative(const FieldExpr& e, int var);

bool contains_conj(const FieldExpr& e);
bool depends_on(const FieldExpr& e, int var);

using VarNames = std::array<std::string, 4>;
inline const VarNames kCartesianNames{"x0", "x1", "x2", "x3"};

std::string to_string(const FieldExpr& e, const VarNames& names = kCartesianNames);

// Infix syntax over x0..x3, t, v, w, q1, qt1, q2, qt2 with sqrt, log, exp, conj,
// integer powers and i as the imaginary unit.
FieldExpr parse_expr(std::string_view text);
cplx parse_complex(std::string_view text);

struct Jet {
  cplx value{0.0, 0.0};
  Eigen::Vector4cd grad = Eigen::Vector4cd::Zero();
  Eigen::Matrix4cd hess = Eigen::Matrix4cd::Zero();
};

// Where to evaluate: the point in C^4 together with d x / d u for the
// differentiation variables u. Conjugation is only meaningful when u is real.
struct EvalPoint {
  Point4C point;
  Eigen::Matrix4cd jacobian = Eigen::Matrix4cd::Identity();
  bool real_parameters = false;

  static EvalPoint holomorphic(const Point4C& p);
  static EvalPoint on_slice(const SliceSpec& slice, std::span<const double> u);
  static EvalPoint on_slice_at(const Point4C& p, SliceKind kind);
};

cplx eval(const FieldExpr& e, const EvalPoint& at, BranchSign branch = BranchSign::Plus);
cplx eval(const FieldExpr& e, const Point4C& p, BranchSign branch = BranchSign::Plus);
Jet eval_jet(const FieldExpr& e, const EvalPoint& at, BranchSign branch = BranchSign::Plus);
Jet eval_jet(const FieldExpr& e, const Point4C& p, BranchSign branch = BranchSign::Plus);

// Smallest distance from a sqrt/log argument to its branch cut (the closed
// negative real axis). Infinity when the expression has neither.
double branch_cut_margin(const FieldExpr& e, const EvalPoint& at,
                         BranchSign branch = BranchSign::Plus);

// (d/dq1, d/dqt1, d/dq2, d/dqt2) from Cartesian first derivatives.
Eigen::Vector4cd null_derivatives(const Eigen::Vector4cd& grad);

MetricKind metric_for(SliceKind kind);
SliceKind slice_for(MetricKind kind);

// Laplacian and gradient square of e at p, differentiating in the real
// coordinates of the slice of the given metric through p.
cplx laplacian(const FieldExpr& e, const Point4C& p, MetricKind kind,
               BranchSign branch = BranchSign::Plus);
cplx grad_square(const FieldExpr& e, const Point4C& p, MetricKind kind,
                 BranchSign branch = BranchSign::Plus);
cplx laplacian(const Jet& j, MetricKind kind);
cplx grad_square(const Jet& j, MetricKind kind);

}  // namespace twk
