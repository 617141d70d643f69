#include "doctest.h"
#include "helpers.hpp"
#include "twistorkit/catalog.hpp"
#include "twistorkit/errors.hpp"

using namespace twk;

namespace {

Domain domain(SliceKind kind, std::size_t samples = 200) {
  Domain d = make_domain(kind, default_box(kind), samples);
  d.seed = 42;
  return d;
}

}  // namespace

TEST_CASE("Hopf field -q2/qt1 is Hermitian; the opposite sign is not") {
  CHECK(check_hermitian(parse_expr("-q2/qt1"), domain(SliceKind::R4)).passed());
  const ResidualReport bad = check_hermitian(parse_expr("q2/qt1"), domain(SliceKind::R4));
  CHECK_FALSE(bad.passed());
  CHECK(bad.max_abs > 0.5);
}

TEST_CASE("complex alpha-plane condition on C4") {
  CHECK(check_alpha(parse_expr("-q2/qt1"), domain(SliceKind::C4)).passed());
  CHECK_FALSE(check_alpha(parse_expr("x1"), domain(SliceKind::C4)).passed());
}

TEST_CASE("shear-free condition on Minkowski space") {
  CHECK(check_sfr(parse_expr("-i*q2/(x1 + t)"), domain(SliceKind::M4)).passed());
  CHECK(check_sfr(parse_expr("0"), domain(SliceKind::M4)).passed());
  CHECK_FALSE(check_sfr(parse_expr("x2"), domain(SliceKind::M4)).passed());
}

TEST_CASE("harmonic conformal maps on R3") {
  CHECK(check_hc3(parse_expr("x1 + i*x2"), domain(SliceKind::R3)).passed());
  CHECK_FALSE(check_hc3(parse_expr("x1 + x2"), domain(SliceKind::R3)).passed());
  CHECK_FALSE(check_hc3(parse_expr("x1^2 + i*x2"), domain(SliceKind::R3)).passed());
}

TEST_CASE("harmonic morphism reports come in pairs") {
  const auto reports = check_harmonic_morphism(parse_expr("x0 + i*x1"), domain(SliceKind::R4));
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].condition == "hm-laplacian:R4");
  CHECK(reports[1].condition == "hm-hwc:R4");
  CHECK(reports[0].passed());
  CHECK(reports[1].passed());
}

TEST_CASE("reports are reproducible and record their inputs") {
  const FieldExpr mu = parse_expr("-q2/qt1");
  const ResidualReport a = check_alpha(mu, domain(SliceKind::C4));
  const ResidualReport b = check_alpha(mu, domain(SliceKind::C4));
  CHECK(a.max_abs == b.max_abs);
  CHECK(a.seed == 42);
  CHECK(a.samples == 200);
  CHECK(a.box.lo.size() == 8);
}

TEST_CASE("empty domains are an error") {
  Domain d = domain(SliceKind::R4, 10);
  d.exclude = [](const Point4C&) { return true; };
  CHECK_THROWS_AS(check_hermitian(parse_expr("x1"), d), EmptyDomain);
}

TEST_CASE("singular samples are skipped, not counted as failures") {
  Domain d = make_domain(SliceKind::R3, Box{{-1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}}, 50);
  d.seed = 1;
  CHECK_THROWS_AS(check_hc3(parse_expr("(x1 + i*x2)/x2"), d), EmptyDomain);
  // Excluded samples are replaced until the requested count is reached.
  Domain half = make_domain(SliceKind::R3, Box{{0.5, -1.0, -1.0}, {1.0, 1.0, 1.0}}, 50);
  half.seed = 1;
  half.exclude = [](const Point4C& p) { return p[2].real() < 0.0; };
  const ResidualReport r = check_hc3(parse_expr("1/(x1 + i*x2)"), half);
  CHECK(r.samples == 50);
  CHECK(r.skipped > 0);
  CHECK(r.passed());
}
