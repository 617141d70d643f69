#include "doctest.h"
#include "helpers.hpp"
#include "twistorkit/twistor.hpp"

using namespace twk;
using namespace twk::testing;

TEST_CASE("the alpha-plane through a point returns to it") {
  for (int k = 0; k < 50; ++k) {
    const Point4C a(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
    const Point4C p = random_real_point();
    const ProjectivePair dir{random_complex(), random_complex()};
    const TwistorVector w = iota(p, dir);
    CHECK(std::abs(w.cwiseAbs().maxCoeff() - 1.0) < 1e-15);
    CHECK(incidence(w, p).norm() < 1e-13);
    const CompactPoint back = pi_a(w, a);
    REQUIRE(std::holds_alternative<Point4C>(back));
    CHECK(distance(std::get<Point4C>(back), p) < 1e-12);
  }
}

TEST_CASE("twistors with w0 = w1 = 0 project to infinity") {
  TwistorVector w(0.0, 0.0, 1.0, I);
  CHECK(std::holds_alternative<Infinity>(pi_a(w, Point4C{})));
}

TEST_CASE("projective comparison of twistors") {
  const TwistorVector w(1.0, I, 2.0, -1.0);
  CHECK(same_twistor(w, cplx(0.3, -2.0) * w, 1e-12));
  CHECK_FALSE(same_twistor(w, TwistorVector(1.0, I, 2.0, 1.0), 1e-12));
}

TEST_CASE("h vanishes exactly on twistors of points of R3_a") {
  const Point4C a(0.4, 0.0, 0.0, 0.0);
  for (int k = 0; k < 20; ++k) {
    const Point4C on(0.4, uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
    const ProjectivePair dir{random_complex(), random_complex()};
    CHECK(std::abs(in_N5(iota(on, dir), a)) < 1e-13);
    const Point4C off(0.9, uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
    CHECK(std::abs(in_N5(iota(off, dir), a)) > 1e-6);
  }
  const Eigen::Matrix4cd H = hermitian_form_matrix();
  const TwistorVector v(1.0, 2.0, I, -I), w(0.5, I, 1.0, 2.0);
  CHECK(std::abs(hermitian_form(v, w) - (w.adjoint() * H * v)(0)) < 1e-14);
}

TEST_CASE("Plucker coordinates of points lie on the Klein quadric") {
  for (int k = 0; k < 50; ++k) {
    const Point4C p = random_complex_point();
    const PluckerPoint z = embed_j(p);
    CHECK(std::abs(plucker_relation(z)) < 1e-13);
    // The alpha-plane through p, spanned by two directions, has the same coordinates.
    Matrix42c m;
    m.col(0) = iota(p, ProjectivePair{1.0, 0.0});
    m.col(1) = iota(p, ProjectivePair{0.0, 1.0});
    const PluckerPoint z2 = plucker(m);
    const Eigen::Index k0 = 0;
    CHECK((z2 / z2(k0) - z).norm() < 1e-12);
  }
}

TEST_CASE("real and Minkowski points lie on their real quadrics") {
  for (int k = 0; k < 50; ++k) {
    const Point4C r = random_real_point();
    const PluckerPoint xi = to_xi(embed_j(r));
    CHECK(xi.imag().norm() < 1e-14);
    CHECK(std::abs(quadric_QR(xi)) < 1e-12);
    const Eigen::Vector4d tx(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
    const PluckerPoint xt = to_xi_tilde(embed_j(from_minkowski(tx)));
    CHECK(std::abs(quadric_QM(xt)) < 1e-12);
  }
}

TEST_CASE("beta flips the last coordinate") {
  const Point4C p(1.0, 2.0, 3.0, 4.0);
  CHECK(beta_involution(p)[3] == cplx(-4.0));
  CHECK(distance(beta_involution(beta_involution(p)), p) == 0.0);
}
