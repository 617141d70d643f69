#include "doctest.h"
#include "helpers.hpp"
#include "twistorkit/hyperbolic.hpp"

using namespace twk;
using namespace twk::testing;

namespace {

const SurfaceFamily kFamilies[] = {SurfaceFamily::Linear, SurfaceFamily::RadialQuadric,
                                   SurfaceFamily::CirclesQuadric, SurfaceFamily::CoaxalQuadric};
const cplx kA0[] = {cplx(0.0), cplx(0.0, -1.0), cplx(1.0, 1.0)};

Domain chart_domain() {
  Domain d = make_domain(SliceKind::C4, Box{{0.3, -0.15, 0.3, -0.15, 0, 0, 0, 0},
                                            {1.2, 0.15, 1.2, 0.15, 0, 0, 0, 0}},
                         200);
  d.seed = 3;
  return d;
}

}  // namespace

TEST_CASE("chart parametrisations lie on their surfaces and invert") {
  for (SurfaceFamily f : kFamilies) {
    const SurfaceChart c = chart_for(f, cplx(0.5, 0.0));
    for (int k = 0; k < 20; ++k) {
      const Point4C ze(random_complex(), random_complex(), 0.0, 0.0);
      Eigen::Vector4cd w;
      for (int j = 0; j < 4; ++j) w(j) = eval(c.param[j], ze);
      CHECK(std::abs(w(0) - 1.0) < 1e-15);
      CHECK(std::abs(c.surface(w)) < 1e-13);
      const Point4C wp{w};
      CHECK(std::abs(eval(c.inverse[0], wp) - ze[0]) < 1e-13);
      CHECK(std::abs(eval(c.inverse[1], wp) - ze[1]) < 1e-13);
    }
  }
}

TEST_CASE("contact form on the circles chart") {
  const cplx a0(0.3, -0.2);
  const auto theta = theta_pullback(chart_for(SurfaceFamily::CirclesQuadric), a0);
  const Point4C ze(cplx(0.4, 0.1), cplx(-0.7, 0.2), 0.0, 0.0);
  CHECK(std::abs(eval(theta[0], ze) + 2.0 * ze[1]) < 1e-14);
  CHECK(std::abs(eval(theta[1], ze) - 2.0 * a0) < 1e-14);
}

TEST_CASE("closed-form solutions satisfy the superminimal ODE") {
  for (SurfaceFamily f : kFamilies) {
    for (cplx a0 : kA0) {
      CAPTURE(to_string(f));
      CAPTURE(a0);
      const PhiSolution sol = solve_superminimal(chart_for(f, 0.7), a0);
      const ResidualReport r = ode_residual(sol.chart, a0, sol.zeta_tilde, chart_domain());
      CHECK(r.passed());
      CHECK(r.samples == 200);
    }
  }
}

TEST_CASE("coaxal solution is continuous into the confluent case") {
  const cplx a0(0.0, -1.0);
  const PhiSolution confluent = solve_superminimal(chart_for(SurfaceFamily::CoaxalQuadric), a0);
  const PhiSolution nearby =
      solve_superminimal(chart_for(SurfaceFamily::CoaxalQuadric), a0 + cplx(1e-6, 0.0));
  const Point4C ze(cplx(0.8, 0.1), cplx(0.6, 0.05), 0.0, 0.0);
  const cplx a = eval(confluent.zeta_tilde, ze);
  const cplx b = eval(nearby.zeta_tilde, ze);
  CHECK(std::abs(a - b) < 1e-4 * std::abs(a));
}

TEST_CASE("a non-solution fails the ODE") {
  const SurfaceChart c = chart_for(SurfaceFamily::CirclesQuadric);
  CHECK_FALSE(ode_residual(c, cplx(0.5), sym::x(0), chart_domain()).passed());
}

TEST_CASE("hyperbolic harmonic morphisms and their boundary values") {
  for (SurfaceFamily f : kFamilies) {
    for (cplx a0 : kA0) {
      CAPTURE(to_string(f));
      CAPTURE(a0);
      const PhiSolution sol = solve_superminimal(chart_for(f, 1.0), a0);
      Domain hyp = make_domain(SliceKind::R4, Box{{0.2, 0.3, 0.5, -0.5}, {1.0, 1.2, 1.5, 0.5}},
                               200, boundary_base(a0));
      hyp.seed = 11;
      hyp.exclude = exclude_near(sol.singular_loci);
      for (const auto& r : check_hyperbolic_hm(sol.phi, a0, hyp)) CHECK(r.passed());
      Domain r3 = make_domain(SliceKind::R3, Box{{0.3, 0.5, -0.5}, {1.2, 1.5, 0.5}}, 200,
                              boundary_base(a0));
      r3.seed = 11;
      r3.exclude = exclude_near(sol.singular_loci);
      CHECK(check_boundary_orthogonality(sol.phi, r3).passed());
      const FieldExpr fb = restrict_boundary(sol);
      CHECK_FALSE(depends_on(fb, 0));
      CHECK(check_hc3(fb, r3).passed());
    }
  }
}

TEST_CASE("x0 is not a hyperbolic harmonic morphism") {
  Domain hyp = make_domain(SliceKind::R4, Box{{0.2, 0.3, 0.5, -0.5}, {1.0, 1.2, 1.5, 0.5}}, 100);
  hyp.seed = 1;
  const auto reports = check_hyperbolic_hm(sym::x(0), 0.0, hyp);
  CHECK_FALSE(reports[0].passed());
  CHECK(reports[0].max_abs == doctest::Approx(2.0));
}
