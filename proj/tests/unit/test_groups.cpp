#include "doctest.h"
#include "helpers.hpp"
#include "twistorkit/errors.hpp"
#include "twistorkit/groups.hpp"
#include "twistorkit/twistor.hpp"

using namespace twk;
using namespace twk::testing;

namespace {

bool preserves_r4(const Eigen::Matrix4cd& P) {
  for (int k = 0; k < 30; ++k) {
    const Point4C y = mobius(P, random_real_point(0.2, 1.0));
    if (y.x.imag().norm() > 1e-10) return false;
  }
  return true;
}

bool preserves_m4(const Eigen::Matrix4cd& P) {
  for (int k = 0; k < 30; ++k) {
    const Eigen::Vector4d tx(uniform(-0.3, 0.3), uniform(0.5, 1.0), uniform(0.5, 1.0),
                             uniform(0.5, 1.0));
    const Point4C y = mobius(P, from_minkowski(tx));
    if (std::abs(y[0].real()) > 1e-10 || y.x.tail<3>().imag().norm() > 1e-10) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("standard conformal maps act as expected") {
  for (int k = 0; k < 50; ++k) {
    const Point4C x = random_real_point(0.2, 1.0);
    const Point4C c = random_real_point();
    CHECK(distance(mobius(conformal::translation(c), x), Point4C(x.x + c.x)) < 1e-12);
    CHECK(distance(mobius(conformal::dilation(2.5), x), Point4C(2.5 * x.x)) < 1e-12);
    const double n2 = x.x.squaredNorm();
    const Point4C inv(x[0] / n2, -x[1] / n2, -x[2] / n2, -x[3] / n2);
    CHECK(distance(mobius(conformal::inversion(), x), inv) < 1e-12);
  }
}

TEST_CASE("a boost mixes t and x1") {
  const double r = 0.7;
  for (int k = 0; k < 20; ++k) {
    const Eigen::Vector4d tx(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
    const Eigen::Vector4d out = to_minkowski(mobius(conformal::lorentz_boost(r), from_minkowski(tx)));
    CHECK(out(0) == doctest::Approx(tx(0) * std::cosh(r) - tx(1) * std::sinh(r)));
    CHECK(out(1) == doctest::Approx(tx(1) * std::cosh(r) - tx(0) * std::sinh(r)));
    CHECK(out(2) == doctest::Approx(tx(2)));
  }
}

TEST_CASE("the point map is compatible with the twistor action") {
  const Eigen::Matrix4cd mats[] = {conformal::translation(random_real_point()),
                                   conformal::dilation(0.6), conformal::inversion(),
                                   conformal::lorentz_boost(0.4), conformal::cxsame()};
  for (const auto& P : mats) {
    for (int k = 0; k < 20; ++k) {
      const Point4C p = random_complex_point();
      const ProjectivePair dir{random_complex(), random_complex()};
      const TwistorVector w = act_cp3(P, iota(p, dir));
      CHECK(incidence(w / w.norm(), mobius(P, p)).norm() < 1e-9);
    }
  }
}

TEST_CASE("wedge square intertwines the Plucker embedding") {
  const Eigen::Matrix4cd P = conformal::translation(Point4C(0.2, -0.1, 0.4, 0.3)) *
                             conformal::inversion() * conformal::dilation(1.3);
  const Matrix6c W = wedge_square(P);
  for (int k = 0; k < 20; ++k) {
    Matrix42c m;
    m.col(0) = TwistorVector::Random();
    m.col(1) = TwistorVector::Random();
    const PluckerPoint lhs = W * plucker(m);
    const PluckerPoint rhs = plucker(P * m);
    CHECK((lhs - rhs).norm() < 1e-10 * std::max(1.0, rhs.norm()));
  }
}

TEST_CASE("predicates agree with the preserved real slices") {
  const std::pair<const char*, Eigen::Matrix4cd> mats[] = {
      {"identity", conformal::identity()},
      {"inversion", conformal::inversion()},
      {"dilation", conformal::dilation(1.7)},
      {"boost", conformal::lorentz_boost(0.3)},
      {"minkowski translation", conformal::minkowski_translation({0.1, 0.2, -0.3, 0.4})},
      {"euclidean translation", conformal::translation(Point4C(0.1, 0.2, -0.3, 0.4))},
      {"cxsame", conformal::cxsame()}};
  for (const auto& [name, P] : mats) {
    CAPTURE(name);
    CHECK(is_su4h(P) == preserves_m4(P));
    // cxsame preserves R4 only projectively: i P has quaternionic blocks.
    if (std::string(name) != "cxsame") CHECK(is_sl2h(P) == preserves_r4(P));
  }
  CHECK(preserves_r4(conformal::cxsame()));
  CHECK(is_sl2h(I * conformal::cxsame()));
  // h-reversal preserves M4 but reverses the sign of h.
  CHECK(preserves_m4(conformal::h_reversal()));
  CHECK_FALSE(is_su4h(conformal::h_reversal()));
}

TEST_CASE("mobius reports points sent to infinity") {
  CHECK_THROWS_AS(mobius(conformal::inversion(), Point4C{}), AtInfinity);
}

TEST_CASE("named matrices parse their parameters") {
  CHECK((named_matrix("dilation:2") - conformal::dilation(2.0)).norm() == 0.0);
  CHECK_THROWS_AS(named_matrix("dilation"), std::invalid_argument);
  CHECK_THROWS_AS(named_matrix("rotate:1"), std::invalid_argument);
}

TEST_CASE("transformed surfaces contain the transformed alpha-planes") {
  const TwistorSurface psi = surfaces::circles_quadric();
  const Eigen::Matrix4cd P = conformal::lorentz_boost(0.5) * conformal::minkowski_translation({0.0, 0.3, 0.0, 0.1});
  const TwistorSurface image = transform_surface(P, psi);
  for (int k = 0; k < 20; ++k) {
    const Point4C p = random_complex_point();
    const TwistorVector w = iota(p, kerr_eval(psi, p));
    CHECK(surface_contains(image, act_cp3(P, w), 1e-9));
  }
}

TEST_CASE("pushforward of mu is the direction field of the image surface") {
  const TwistorSurface psi = surfaces::radial_quadric();
  const Eigen::Matrix4cd P = conformal::translation(Point4C(0.3, 0.1, -0.2, 0.5)) * conformal::dilation(1.5);
  const FieldExpr mu = pushforward_mu(P, kerr_field(psi));
  const TwistorSurface image = transform_surface(P, psi);
  for (int k = 0; k < 20; ++k) {
    const Point4C y = random_complex_point();
    const TwistorVector w = iota(y, ProjectivePair{1.0, eval(mu, y)});
    CHECK(surface_contains(image, w, 1e-9));
  }
}

TEST_CASE("quadric model actions") {
  for (int k = 0; k < 20; ++k) {
    const Eigen::Vector4cd x = random_real_point(0.2, 1.0).x;
    const Eigen::Vector4cd a = random_real_point().x;
    CHECK((act_quadric(quadric::translation(a), x) - (x + a)).norm() < 1e-12);
    CHECK((act_quadric(quadric::dilation(3.0), x) - 3.0 * x).norm() < 1e-12);
    const cplx g = -x(0) * x(0) + x.tail<3>().squaredNorm();
    const Eigen::Matrix4cd H = Eigen::Matrix4cd::Identity();
    CHECK((act_quadric(quadric::inversion(H), x) - x / g).norm() < 1e-10);
    // Embedded points are null for the quadric form.
    CHECK(std::abs(quadric_form(quadric_embedding(x))) < 1e-12);
  }
}
