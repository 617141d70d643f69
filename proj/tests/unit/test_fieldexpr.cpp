#include "doctest.h"
#include "helpers.hpp"
#include "twistorkit/errors.hpp"
#include "twistorkit/fieldexpr.hpp"

using namespace twk;
using namespace twk::testing;

namespace {

Eigen::Vector4cd fd_gradient(const FieldExpr& e, const Point4C& p, double h = 1e-5) {
  Eigen::Vector4cd g;
  for (int k = 0; k < 4; ++k) {
    Point4C a = p, b = p;
    a[k] += h;
    b[k] -= h;
    g(k) = (eval(e, a) - eval(e, b)) / (2 * h);
  }
  return g;
}

}  // namespace

TEST_CASE("parser handles precedence, functions and constants") {
  const Point4C p(0.3, 0.7, -0.2, 1.1);
  CHECK(std::abs(eval(parse_expr("1 + 2*3^2"), p) - cplx(19.0)) < 1e-15);
  CHECK(std::abs(eval(parse_expr("-x1^2"), p) - cplx(-0.49)) < 1e-15);
  CHECK(std::abs(eval(parse_expr("q1"), p) - cplx(0.3, 0.7)) < 1e-15);
  CHECK(std::abs(eval(parse_expr("t"), p) - cplx(0.0, 0.3)) < 1e-15);
  CHECK(std::abs(eval(parse_expr("exp(i*pi)"), p) + 1.0) < 1e-15);
  CHECK(std::abs(eval(parse_expr("x1^(-1)"), p) - 1.0 / 0.7) < 1e-14);
  CHECK(parse_complex("1+2i") == cplx(1.0, 2.0));
  CHECK(parse_complex("-i") == cplx(0.0, -1.0));
  CHECK(parse_complex("0.5i") == cplx(0.0, 0.5));
  CHECK_THROWS_AS(parse_expr("2ix"), ParseError);
}

TEST_CASE("parse errors carry the offending offset") {
  try {
    parse_expr("x1 + y7");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset == 5);
  }
  CHECK_THROWS_AS(parse_expr("(x1"), ParseError);
  CHECK_THROWS_AS(parse_complex("x1"), ParseError);
}

TEST_CASE("printing and reparsing preserve values") {
  const char* samples[] = {"sqrt(x1^2 + x2^2 + x3^2)", "(x2 + i*x3)/(x1 - t)",
                           "log(q1*qt1) - exp(-x2)", "conj(q2)/qt1"};
  for (const char* s : samples) {
    const FieldExpr e = parse_expr(s);
    const FieldExpr back = parse_expr(to_string(e));
    const std::vector<double> u{0.4, 0.9, 1.3, -0.6};
    const EvalPoint p = EvalPoint::on_slice({Point4C{}, SliceKind::R4}, u);
    CHECK(std::abs(eval(e, p) - eval(back, p)) < 1e-13);
  }
}

TEST_CASE("symbolic derivative matches finite differences") {
  const FieldExpr e = parse_expr("sqrt(x1^2 + x2^2 + x3^2) * exp(q2) / (x0 + 3) + log(x1 + 2)");
  for (int k = 0; k < 30; ++k) {
    const Point4C p = random_complex_point(0.5);
    const Eigen::Vector4cd fd = fd_gradient(e, p);
    for (int j = 0; j < 4; ++j) {
      CHECK(std::abs(eval(derivative(e, j), p) - fd(j)) < 1e-8);
    }
    const Jet jet = eval_jet(e, p);
    CHECK((jet.grad - fd).norm() < 1e-8);
    CHECK((jet.hess - jet.hess.transpose()).norm() < 1e-12);
  }
}

TEST_CASE("singular points are reported") {
  const FieldExpr e = parse_expr("1/x1");
  CHECK_THROWS_AS(eval(e, Point4C(0.0, 0.0, 1.0, 1.0)), SingularPoint);
  CHECK_THROWS_AS(eval(parse_expr("log(x2)"), Point4C{}), SingularPoint);
  CHECK_THROWS_AS(eval_jet(parse_expr("sqrt(x3)"), Point4C{}), SingularPoint);
}

TEST_CASE("branch sign flips every square root") {
  const FieldExpr e = sqrt(sym::x(1));
  const Point4C p(0.0, 4.0, 0.0, 0.0);
  CHECK(eval(e, p, BranchSign::Plus) == cplx(2.0));
  CHECK(eval(e, p, BranchSign::Minus) == cplx(-2.0));
}

TEST_CASE("conjugation is pushed to leaves and needs a real slice") {
  const FieldExpr e = conj(sym::q1() * sym::q2());
  CHECK(contains_conj(e));
  const std::vector<double> u{0.1, 0.2, 0.3, 0.4};
  const EvalPoint at = EvalPoint::on_slice({Point4C{}, SliceKind::R4}, u);
  CHECK(std::abs(eval(e, at) - std::conj(cplx(0.1, 0.2) * cplx(0.3, 0.4))) < 1e-15);
  // d/dx1 of conj(q1 q2) = -i conj(q2)
  const Jet j = eval_jet(e, at);
  CHECK(std::abs(j.grad(1) - (-I) * cplx(0.3, -0.4)) < 1e-14);
}

TEST_CASE("slice jets differentiate in slice coordinates") {
  const FieldExpr e = sym::x(0) * sym::x(0) + sym::x(1);
  const std::vector<double> u{0.5, 2.0, 0.0, 0.0};
  const Jet m = eval_jet(e, EvalPoint::on_slice({Point4C{}, SliceKind::M4}, u));
  // x0 = -i t, so d/dt (x0^2) = -2t.
  CHECK(std::abs(m.grad(0) - cplx(-1.0)) < 1e-15);
  const std::vector<double> u3{2.0, 0.0, 0.0};
  const Jet r = eval_jet(e, EvalPoint::on_slice({Point4C(0.5, 0, 0, 0), SliceKind::R3}, u3));
  CHECK(r.grad(0) == cplx(0.0));
}

TEST_CASE("Laplacians on each metric") {
  const FieldExpr e = parse_expr("x0^2 + 2*x1^2 + 3*x2^2 + 4*x3^2");
  const Point4C p(0.1, 0.2, 0.3, 0.4);
  CHECK(std::abs(laplacian(e, p, MetricKind::Euclid4) - cplx(20.0)) < 1e-13);
  CHECK(std::abs(laplacian(e, p, MetricKind::Euclid3) - cplx(18.0)) < 1e-13);
  CHECK(std::abs(grad_square(sym::q1(), p, MetricKind::Complex4)) < 1e-15);
}
