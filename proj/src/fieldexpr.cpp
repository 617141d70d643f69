#include "twistorkit/fieldexpr.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace twk {

struct ExprNode {
  NodeKind kind = NodeKind::Const;
  cplx value{0.0, 0.0};
  int index = 0;  // coordinate index or integer exponent
  std::shared_ptr<const ExprNode> a;
  std::shared_ptr<const ExprNode> b;
};

const char* to_string(BranchSign b) { return b == BranchSign::Plus ? "+" : "-"; }

FieldExpr make_node(NodeKind kind, cplx value, int index, FieldExpr a, FieldExpr b) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->value = value;
  n->index = index;
  n->a = a.node_;
  n->b = b.node_;
  return FieldExpr(std::move(n));
}

namespace {

FieldExpr leaf_const(cplx c) { return make_node(NodeKind::Const, c, 0, FieldExpr(), FieldExpr()); }

}  // namespace

FieldExpr::FieldExpr() {
  auto n = std::make_shared<ExprNode>();
  node_ = std::move(n);
}

FieldExpr::FieldExpr(cplx c) {
  auto n = std::make_shared<ExprNode>();
  n->value = c;
  node_ = std::move(n);
}

FieldExpr::FieldExpr(double c) : FieldExpr(cplx(c, 0.0)) {}
FieldExpr::FieldExpr(int c) : FieldExpr(cplx(c, 0.0)) {}

FieldExpr FieldExpr::coord(int index) {
  if (index < 0 || index > 3) throw std::out_of_range("coordinate index must be 0..3");
  return make_node(NodeKind::Coord, 0.0, index, FieldExpr(), FieldExpr());
}

NodeKind FieldExpr::kind() const { return node_->kind; }
cplx FieldExpr::constant() const { return node_->value; }
int FieldExpr::index() const { return node_->index; }
int FieldExpr::exponent() const { return node_->index; }

FieldExpr FieldExpr::arg(int i) const {
  const auto& child = i == 0 ? node_->a : node_->b;
  if (!child) throw std::out_of_range("expression node has no such argument");
  return FieldExpr(child);
}

FieldExpr operator+(const FieldExpr& a, const FieldExpr& b) {
  return make_node(NodeKind::Add, 0.0, 0, a, b);
}
FieldExpr operator-(const FieldExpr& a, const FieldExpr& b) {
  return make_node(NodeKind::Sub, 0.0, 0, a, b);
}
FieldExpr operator*(const FieldExpr& a, const FieldExpr& b) {
  return make_node(NodeKind::Mul, 0.0, 0, a, b);
}
FieldExpr operator/(const FieldExpr& a, const FieldExpr& b) {
  return make_node(NodeKind::Div, 0.0, 0, a, b);
}
FieldExpr operator-(const FieldExpr& a) { return make_node(NodeKind::Neg, 0.0, 0, a, FieldExpr()); }
FieldExpr pow(const FieldExpr& a, int n) { return make_node(NodeKind::Pow, 0.0, n, a, FieldExpr()); }
FieldExpr sqrt(const FieldExpr& a) { return make_node(NodeKind::Sqrt, 0.0, 0, a, FieldExpr()); }
FieldExpr log(const FieldExpr& a) { return make_node(NodeKind::Log, 0.0, 0, a, FieldExpr()); }
FieldExpr exp(const FieldExpr& a) { return make_node(NodeKind::Exp, 0.0, 0, a, FieldExpr()); }

FieldExpr conj(const FieldExpr& e) {
  switch (e.kind()) {
    case NodeKind::Const: return leaf_const(std::conj(e.constant()));
    case NodeKind::Coord: return make_node(NodeKind::Conj, 0.0, 0, e, FieldExpr());
    case NodeKind::Conj: return e.arg(0);
    case NodeKind::Add: return conj(e.arg(0)) + conj(e.arg(1));
    case NodeKind::Sub: return conj(e.arg(0)) - conj(e.arg(1));
    case NodeKind::Mul: return conj(e.arg(0)) * conj(e.arg(1));
    case NodeKind::Div: return conj(e.arg(0)) / conj(e.arg(1));
    case NodeKind::Neg: return -conj(e.arg(0));
    case NodeKind::Pow: return pow(conj(e.arg(0)), e.exponent());
    case NodeKind::Sqrt: return sqrt(conj(e.arg(0)));
    case NodeKind::Log: return log(conj(e.arg(0)));
    case NodeKind::Exp: return exp(conj(e.arg(0)));
  }
  throw std::logic_error("unreachable");
}

namespace sym {
FieldExpr x(int i) { return FieldExpr::coord(i); }
FieldExpr q1() { return x(0) + I * x(1); }
FieldExpr qt1() { return x(0) - I * x(1); }
FieldExpr q2() { return x(2) + I * x(3); }
FieldExpr qt2() { return x(2) - I * x(3); }
FieldExpr t() { return I * x(0); }
FieldExpr v() { return x(1) + t(); }
FieldExpr w() { return x(1) - t(); }
}  // namespace sym

namespace {

template <typename F>
FieldExpr rebuild(const FieldExpr& e, F&& leaf) {
  switch (e.kind()) {
    case NodeKind::Const: return e;
    case NodeKind::Coord:
    case NodeKind::Conj: return leaf(e);
    case NodeKind::Add: return rebuild(e.arg(0), leaf) + rebuild(e.arg(1), leaf);
    case NodeKind::Sub: return rebuild(e.arg(0), leaf) - rebuild(e.arg(1), leaf);
    case NodeKind::Mul: return rebuild(e.arg(0), leaf) * rebuild(e.arg(1), leaf);
    case NodeKind::Div: return rebuild(e.arg(0), leaf) / rebuild(e.arg(1), leaf);
    case NodeKind::Neg: return -rebuild(e.arg(0), leaf);
    case NodeKind::Pow: return pow(rebuild(e.arg(0), leaf), e.exponent());
    case NodeKind::Sqrt: return sqrt(rebuild(e.arg(0), leaf));
    case NodeKind::Log: return log(rebuild(e.arg(0), leaf));
    case NodeKind::Exp: return exp(rebuild(e.arg(0), leaf));
  }
  throw std::logic_error("unreachable");
}

template <typename F>
bool any_node(const FieldExpr& e, F&& pred) {
  if (pred(e)) return true;
  switch (e.kind()) {
    case NodeKind::Const:
    case NodeKind::Coord: return false;
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div: return any_node(e.arg(0), pred) || any_node(e.arg(1), pred);
    default: return any_node(e.arg(0), pred);
  }
}

}  // namespace

FieldExpr substitute(const FieldExpr& e, const std::array<FieldExpr, 4>& subs) {
  return rebuild(e, [&](const FieldExpr& leaf) {
    if (leaf.kind() == NodeKind::Coord) return subs[leaf.index()];
    return conj(subs[leaf.arg(0).index()]);
  });
}

bool contains_conj(const FieldExpr& e) {
  return any_node(e, [](const FieldExpr& n) { return n.kind() == NodeKind::Conj; });
}

bool depends_on(const FieldExpr& e, int var) {
  return any_node(e, [var](const FieldExpr& n) {
    return n.kind() == NodeKind::Coord && n.index() == var;
  });
}

FieldExpr derivative(const FieldExpr& e, int var) {
  switch (e.kind()) {
    case NodeKind::Const: return 0.0;
    case NodeKind::Coord: return e.index() == var ? 1.0 : 0.0;
    case NodeKind::Conj: throw std::logic_error("holomorphic derivative of a conjugated coordinate");
    case NodeKind::Add: return derivative(e.arg(0), var) + derivative(e.arg(1), var);
    case NodeKind::Sub: return derivative(e.arg(0), var) - derivative(e.arg(1), var);
    case NodeKind::Mul:
      return derivative(e.arg(0), var) * e.arg(1) + e.arg(0) * derivative(e.arg(1), var);
    case NodeKind::Div:
      return (derivative(e.arg(0), var) * e.arg(1) - e.arg(0) * derivative(e.arg(1), var)) /
             pow(e.arg(1), 2);
    case NodeKind::Neg: return -derivative(e.arg(0), var);
    case NodeKind::Pow: {
      const int n = e.exponent();
      if (n == 0) return 0.0;
      return FieldExpr(n) * pow(e.arg(0), n - 1) * derivative(e.arg(0), var);
    }
    case NodeKind::Sqrt: return derivative(e.arg(0), var) / (FieldExpr(2) * e);
    case NodeKind::Log: return derivative(e.arg(0), var) / e.arg(0);
    case NodeKind::Exp: return e * derivative(e.arg(0), var);
  }
  throw std::logic_error("unreachable");
}

namespace {

std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string format_const(cplx c) {
  if (c.imag() == 0.0) {
    const std::string s = format_number(c.real());
    return c.real() < 0 ? "(" + s + ")" : s;
  }
  if (c.real() == 0.0) return "(" + format_number(c.imag()) + "*i)";
  return "(" + format_number(c.real()) + (c.imag() < 0 ? "-" : "+") +
         format_number(std::abs(c.imag())) + "*i)";
}

int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Neg: return 3;
    case NodeKind::Pow: return 4;
    default: return 5;
  }
}

std::string print(const FieldExpr& e, const VarNames& names) {
  auto wrap = [&](const FieldExpr& child, int min_prec) {
    const std::string s = print(child, names);
    return precedence(child.kind()) < min_prec ? "(" + s + ")" : s;
  };
  switch (e.kind()) {
    case NodeKind::Const: return format_const(e.constant());
    case NodeKind::Coord: return names[e.index()];
    case NodeKind::Conj: return "conj(" + names[e.arg(0).index()] + ")";
    case NodeKind::Add: return wrap(e.arg(0), 1) + " + " + wrap(e.arg(1), 2);
    case NodeKind::Sub: return wrap(e.arg(0), 1) + " - " + wrap(e.arg(1), 2);
    case NodeKind::Mul: return wrap(e.arg(0), 2) + "*" + wrap(e.arg(1), 3);
    case NodeKind::Div: return wrap(e.arg(0), 2) + "/" + wrap(e.arg(1), 3);
    case NodeKind::Neg: return "-" + wrap(e.arg(0), 3);
    case NodeKind::Pow: {
      const std::string n = std::to_string(e.exponent());
      return wrap(e.arg(0), 5) + "^" + (e.exponent() < 0 ? "(" + n + ")" : n);
    }
    case NodeKind::Sqrt: return "sqrt(" + print(e.arg(0), names) + ")";
    case NodeKind::Log: return "log(" + print(e.arg(0), names) + ")";
    case NodeKind::Exp: return "exp(" + print(e.arg(0), names) + ")";
  }
  throw std::logic_error("unreachable");
}

// Jet of f(a) from f(a), f'(a), f''(a).
Jet chain(const Jet& a, cplx f, cplx df, cplx ddf) {
  Jet r;
  r.value = f;
  r.grad = df * a.grad;
  r.hess = df * a.hess + ddf * (a.grad * a.grad.transpose());
  return r;
}

Jet jet_mul(const Jet& a, const Jet& b) {
  Jet r;
  r.value = a.value * b.value;
  r.grad = a.value * b.grad + b.value * a.grad;
  r.hess = a.value * b.hess + b.value * a.hess + a.grad * b.grad.transpose() +
           b.grad * a.grad.transpose();
  return r;
}

void require_nonsingular(cplx z, const char* what) {
  if (!(std::abs(z) >= tolerances().branch)) {
    throw SingularPoint(std::string(what) + " at a vanishing argument");
  }
}

cplx signed_sqrt(cplx z, BranchSign branch) { return sign_of(branch) * principal_sqrt(z); }

double cut_distance(cplx z) { return z.real() < 0.0 ? std::abs(z.imag()) : std::abs(z); }


class Evaluator {
 public:
  Evaluator(const EvalPoint& at, BranchSign branch) : at_(at), branch_(branch) {}

  cplx value(const FieldExpr& e) {
    auto it = values_.find(e.id());
    if (it != values_.end()) return it->second;
    const cplx v = compute_value(e);
    values_.emplace(e.id(), v);
    return v;
  }

  Jet jet(const FieldExpr& e) {
    auto it = jets_.find(e.id());
    if (it != jets_.end()) return it->second;
    const Jet j = compute_jet(e);
    jets_.emplace(e.id(), j);
    return j;
  }

  double margin(const FieldExpr& e) {
    double m = std::numeric_limits<double>::infinity();
    walk_margin(e, m);
    return m;
  }

 private:
  void walk_margin(const FieldExpr& e, double& m) {
    switch (e.kind()) {
      case NodeKind::Const:
      case NodeKind::Coord:
      case NodeKind::Conj: return;
      case NodeKind::Sqrt:
      case NodeKind::Log: m = std::min(m, cut_distance(value(e.arg(0)))); break;
      default: break;
    }
    walk_margin(e.arg(0), m);
    if (e.kind() == NodeKind::Add || e.kind() == NodeKind::Sub || e.kind() == NodeKind::Mul ||
        e.kind() == NodeKind::Div) {
      walk_margin(e.arg(1), m);
    }
  }

  void require_real(const char* what) const {
    if (!at_.real_parameters) {
      throw std::logic_error(std::string(what) + " requires a real slice");
    }
  }

  cplx compute_value(const FieldExpr& e) {
    switch (e.kind()) {
      case NodeKind::Const: return e.constant();
      case NodeKind::Coord: return at_.point[e.index()];
      case NodeKind::Conj:
        require_real("conj");
        return std::conj(at_.point[e.arg(0).index()]);
      case NodeKind::Add: return value(e.arg(0)) + value(e.arg(1));
      case NodeKind::Sub: return value(e.arg(0)) - value(e.arg(1));
      case NodeKind::Mul: return value(e.arg(0)) * value(e.arg(1));
      case NodeKind::Div: {
        const cplx d = value(e.arg(1));
        require_nonsingular(d, "division");
        return value(e.arg(0)) / d;
      }
      case NodeKind::Neg: return -value(e.arg(0));
      case NodeKind::Pow: {
        const cplx b = value(e.arg(0));
        if (e.exponent() < 0) require_nonsingular(b, "negative power");
        return integer_power(b, e.exponent());
      }
      case NodeKind::Sqrt: {
        const cplx z = value(e.arg(0));
        require_nonsingular(z, "sqrt");
        return signed_sqrt(z, branch_);
      }
      case NodeKind::Log: {
        const cplx z = value(e.arg(0));
        require_nonsingular(z, "log");
        return principal_log(z);
      }
      case NodeKind::Exp: return std::exp(value(e.arg(0)));
    }
    throw std::logic_error("unreachable");
  }

  Jet compute_jet(const FieldExpr& e) {
    switch (e.kind()) {
      case NodeKind::Const: {
        Jet r;
        r.value = e.constant();
        return r;
      }
      case NodeKind::Coord: {
        Jet r;
        r.value = at_.point[e.index()];
        r.grad = at_.jacobian.row(e.index()).transpose();
        return r;
      }
      case NodeKind::Conj: {
        require_real("conj");
        Jet r;
        r.value = std::conj(at_.point[e.arg(0).index()]);
        r.grad = at_.jacobian.row(e.arg(0).index()).transpose().conjugate();
        return r;
      }
      case NodeKind::Add: {
        Jet a = jet(e.arg(0));
        const Jet b = jet(e.arg(1));
        a.value += b.value;
        a.grad += b.grad;
        a.hess += b.hess;
        return a;
      }
      case NodeKind::Sub: {
        Jet a = jet(e.arg(0));
        const Jet b = jet(e.arg(1));
        a.value -= b.value;
        a.grad -= b.grad;
        a.hess -= b.hess;
        return a;
      }
      case NodeKind::Mul: return jet_mul(jet(e.arg(0)), jet(e.arg(1)));
      case NodeKind::Div: {
        const Jet b = jet(e.arg(1));
        require_nonsingular(b.value, "division");
        const cplx inv = 1.0 / b.value;
        return jet_mul(jet(e.arg(0)), chain(b, inv, -inv * inv, 2.0 * inv * inv * inv));
      }
      case NodeKind::Neg: {
        Jet a = jet(e.arg(0));
        a.value = -a.value;
        a.grad = -a.grad;
        a.hess = -a.hess;
        return a;
      }
      case NodeKind::Pow: {
        const Jet a = jet(e.arg(0));
        const int n = e.exponent();
        if (n < 0) require_nonsingular(a.value, "negative power");
        if (n == 0) {
          Jet r;
          r.value = 1.0;
          return r;
        }
        return chain(a, integer_power(a.value, n), double(n) * integer_power(a.value, n - 1),
                     double(n) * double(n - 1) * (n >= 2 || n < 0 ? integer_power(a.value, n - 2)
                                                                  : cplx(0.0)));
      }
      case NodeKind::Sqrt: {
        const Jet a = jet(e.arg(0));
        require_nonsingular(a.value, "sqrt");
        const cplx s = signed_sqrt(a.value, branch_);
        return chain(a, s, 0.5 / s, -0.25 / (s * a.value));
      }
      case NodeKind::Log: {
        const Jet a = jet(e.arg(0));
        require_nonsingular(a.value, "log");
        const cplx inv = 1.0 / a.value;
        return chain(a, principal_log(a.value), inv, -inv * inv);
      }
      case NodeKind::Exp: {
        const Jet a = jet(e.arg(0));
        const cplx v = std::exp(a.value);
        return chain(a, v, v, v);
      }
    }
    throw std::logic_error("unreachable");
  }

  static cplx integer_power(cplx b, int n) {
    if (n < 0) return 1.0 / integer_power(b, -n);
    cplx r = 1.0;
    cplx base = b;
    while (n > 0) {
      if (n & 1) r *= base;
      base *= base;
      n >>= 1;
    }
    return r;
  }

  const EvalPoint& at_;
  BranchSign branch_;
  std::unordered_map<const ExprNode*, cplx> values_;
  std::unordered_map<const ExprNode*, Jet> jets_;
};

}  // namespace

std::string to_string(const FieldExpr& e, const VarNames& names) { return print(e, names); }

EvalPoint EvalPoint::holomorphic(const Point4C& p) {
  EvalPoint at;
  at.point = p;
  return at;
}

EvalPoint EvalPoint::on_slice(const SliceSpec& slice, std::span<const double> u) {
  if (slice.kind == SliceKind::C4) return holomorphic(slice_point(slice, u));
  EvalPoint at;
  at.point = slice_point(slice, u);
  at.jacobian = slice_jacobian(slice.kind);
  at.real_parameters = true;
  return at;
}

EvalPoint EvalPoint::on_slice_at(const Point4C& p, SliceKind kind) {
  if (kind == SliceKind::C4) return holomorphic(p);
  EvalPoint at;
  at.point = p;
  at.jacobian = slice_jacobian(kind);
  at.real_parameters = true;
  return at;
}

cplx eval(const FieldExpr& e, const EvalPoint& at, BranchSign branch) {
  return Evaluator(at, branch).value(e);
}

cplx eval(const FieldExpr& e, const Point4C& p, BranchSign branch) {
  return eval(e, EvalPoint::holomorphic(p), branch);
}

Jet eval_jet(const FieldExpr& e, const EvalPoint& at, BranchSign branch) {
  return Evaluator(at, branch).jet(e);
}

Jet eval_jet(const FieldExpr& e, const Point4C& p, BranchSign branch) {
  return eval_jet(e, EvalPoint::holomorphic(p), branch);
}

double branch_cut_margin(const FieldExpr& e, const EvalPoint& at, BranchSign branch) {
  return Evaluator(at, branch).margin(e);
}

Eigen::Vector4cd null_derivatives(const Eigen::Vector4cd& g) {
  return {0.5 * (g(0) - I * g(1)), 0.5 * (g(0) + I * g(1)), 0.5 * (g(2) - I * g(3)),
          0.5 * (g(2) + I * g(3))};
}

MetricKind metric_for(SliceKind kind) {
  switch (kind) {
    case SliceKind::R4: return MetricKind::Euclid4;
    case SliceKind::R3: return MetricKind::Euclid3;
    case SliceKind::M4: return MetricKind::Minkowski4;
    case SliceKind::C4: return MetricKind::Complex4;
  }
  return MetricKind::Complex4;
}

SliceKind slice_for(MetricKind kind) {
  switch (kind) {
    case MetricKind::Euclid4: return SliceKind::R4;
    case MetricKind::Euclid3: return SliceKind::R3;
    case MetricKind::Minkowski4: return SliceKind::M4;
    case MetricKind::Complex4: return SliceKind::C4;
  }
  return SliceKind::C4;
}

cplx laplacian(const Jet& j, MetricKind kind) {
  const Eigen::Vector4d s = metric_signature(kind);
  cplx acc = 0.0;
  for (int i = 0; i < 4; ++i) acc += s(i) * j.hess(i, i);
  return acc;
}

cplx grad_square(const Jet& j, MetricKind kind) {
  const Eigen::Vector4d s = metric_signature(kind);
  cplx acc = 0.0;
  for (int i = 0; i < 4; ++i) acc += s(i) * j.grad(i) * j.grad(i);
  return acc;
}

cplx laplacian(const FieldExpr& e, const Point4C& p, MetricKind kind, BranchSign branch) {
  return laplacian(eval_jet(e, EvalPoint::on_slice_at(p, slice_for(kind)), branch), kind);
}

cplx grad_square(const FieldExpr& e, const Point4C& p, MetricKind kind, BranchSign branch) {
  return grad_square(eval_jet(e, EvalPoint::on_slice_at(p, slice_for(kind)), branch), kind);
}

}  // namespace twk
