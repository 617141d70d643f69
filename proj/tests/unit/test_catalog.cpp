#include "doctest.h"
#include "helpers.hpp"
#include "twistorkit/catalog.hpp"

using namespace twk;
using namespace twk::testing;

namespace {

Point4C random_r3_point() {
  return Point4C(0.0, uniform(0.3, 1.2), uniform(0.5, 1.5), uniform(-0.5, 0.5));
}

FieldExpr boundary_of(const CatalogEntry& e) {
  return substitute(*e.phi_hyp, {FieldExpr(e.a0), sym::x(1), sym::x(2), sym::x(3)});
}

}  // namespace

TEST_CASE("every catalog entry passes every condition") {
  for (const auto& key : catalog_keys()) {
    CAPTURE(key);
    const CatalogEntry e = catalog_entry(key);
    const auto reports = verify_entry(e, "all", 200, 42);
    CHECK(reports.size() >= 10);
    for (const auto& r : reports) {
      CAPTURE(r.condition);
      CHECK(r.passed());
    }
  }
}

TEST_CASE("closed-form boundary maps equal the hyperbolic restriction") {
  for (const std::string key : {"radial", "circles", "bunch", "hopf"}) {
    CAPTURE(key);
    const CatalogEntry e = catalog_entry(key);
    const FieldExpr fb = boundary_of(e);
    for (int k = 0; k < 100; ++k) {
      const std::vector<double> u{uniform(0.3, 1.2), uniform(0.5, 1.5), uniform(-0.5, 0.5)};
      const EvalPoint at = EvalPoint::on_slice({Point4C{}, SliceKind::R3}, u);
      CHECK(std::abs(eval(e.f, at) - eval(fb, at)) < 1e-12);
    }
  }
}

TEST_CASE("radial f is i mu on R3") {
  const CatalogEntry e = catalog_entry("radial");
  for (int k = 0; k < 50; ++k) {
    const Point4C p = random_r3_point();
    CHECK(std::abs(eval(e.f, p) - I * eval(e.mu, p)) < 1e-12);
  }
}

TEST_CASE("parametrised keys") {
  const CatalogEntry r = catalog_entry("robinson:0.5");
  CHECK(r.chart->s == cplx(0.5));
  const CatalogEntry b = catalog_entry("bunch:2");
  CHECK(b.chart->s == cplx(0.0, -2.0));
  CHECK_THROWS_AS(catalog_entry("robinson:abc"), std::invalid_argument);
  CHECK_THROWS_AS(catalog_entry("nonesuch"), std::invalid_argument);
  for (const auto& r2 : verify_entry(b, "all", 100, 5)) CHECK(r2.passed());
}

TEST_CASE("single conditions and free expressions") {
  const auto only = verify_entry(catalog_entry("circles"), "hc3", 100, 1);
  REQUIRE(only.size() == 1);
  CHECK(only[0].condition == "hc3");
  const auto bad = verify_mu(parse_expr("x1"), "hermitian", 100, 1);
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].max_abs >= 0.5);
  const auto hyp = verify_phi(parse_expr("x0"), "hyp", 100, 1);
  CHECK_FALSE(hyp[0].passed());
  CHECK(hyp[0].max_abs >= 0.5);
}
