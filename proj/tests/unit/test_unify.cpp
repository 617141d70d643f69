#include "doctest.h"
#include "helpers.hpp"
#include "twistorkit/catalog.hpp"
#include "twistorkit/errors.hpp"
#include "twistorkit/unify.hpp"

using namespace twk;
using namespace twk::testing;

TEST_CASE("frames from mu are oriented, orthonormal and Hermitian") {
  for (int k = 0; k < 30; ++k) {
    const ProjectivePair mu = k == 0 ? ProjectivePair{0.0, 1.0} : ProjectivePair{1.0, random_complex(2.0)};
    const Frame f = mu_to_frame(mu);
    CHECK((f.E.transpose() * f.E - Eigen::Matrix4d::Identity()).norm() < 1e-12);
    CHECK(f.E.determinant() == doctest::Approx(1.0));
    const Eigen::Matrix4d J = f.J();
    CHECK((J * J + Eigen::Matrix4d::Identity()).norm() < 1e-12);
    CHECK((J * f.E.col(0) - f.E.col(1)).norm() < 1e-12);
    CHECK((J * f.E.col(2) - f.E.col(3)).norm() < 1e-12);
    CHECK(same_plane(alpha_plane_from_frame(f), alpha_plane_basis(mu), 1e-10));
  }
}

TEST_CASE("alpha-planes are totally null") {
  for (int k = 0; k < 20; ++k) {
    const Matrix42c b = alpha_plane_basis(ProjectivePair{1.0, random_complex()});
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) CHECK(std::abs(metric_pair(MetricKind::Complex4, b.col(i), b.col(j))) < 1e-12);
    }
  }
}

TEST_CASE("U fields are unit and their derivative matches finite differences") {
  const UField field = ufield_from_mu(parse_expr("-q2/qt1"));
  const Eigen::Vector4d tx(0.1, 0.7, 0.9, -0.2);
  const UFieldSample s = field(tx);
  CHECK(s.U.norm() == doctest::Approx(1.0));
  for (int k = 0; k < 4; ++k) {
    Eigen::Vector4d a = tx, b = tx;
    a(k) += 1e-6;
    b(k) -= 1e-6;
    const Eigen::Vector3d fd = (field(a).U - field(b).U) / 2e-6;
    CHECK((fd - s.D.col(k)).norm() < 1e-7);
  }
}

TEST_CASE("shear, twist and expansion of known congruences") {
  const Eigen::Vector4d tx(0.05, 0.6, 0.8, 0.3);
  const CongruenceTensors radial = congruence_tensors(ufield_from_mu(catalog_entry("radial").mu), tx);
  CHECK(radial.shear_norm < 1e-12);
  CHECK(std::abs(radial.twist) < 1e-12);
  CHECK(std::abs(radial.expansion) > 0.1);
  const CongruenceTensors robinson =
      congruence_tensors(ufield_from_mu(catalog_entry("robinson:1").mu), tx);
  CHECK(robinson.shear_norm < 1e-12);
  CHECK(std::abs(robinson.twist) > 1e-3);
  // A twisted family of parallel lines is not shear-free.
  const UField twisted = ufield_from_components(
      {parse_expr("(exp(i*x3) + exp(-i*x3))/2"), parse_expr("(exp(i*x3) - exp(-i*x3))/(2*i)"), FieldExpr(0.0)});
  CHECK(congruence_tensors(twisted, tx).shear_norm > 0.1);
}

TEST_CASE("extending circles from t = 0 along rays") {
  const UField circles0 = ufield_from_components(
      {FieldExpr(0.0), -sym::x(3) / sqrt(sym::x(2) * sym::x(2) + sym::x(3) * sym::x(3)),
       sym::x(2) / sqrt(sym::x(2) * sym::x(2) + sym::x(3) * sym::x(3))});
  for (int k = 0; k < 20; ++k) {
    const Eigen::Vector4d tx(uniform(-0.3, 0.3), uniform(-1, 1), uniform(0.5, 1.2), uniform(-0.5, 0.5));
    const double rho2 = tx(2) * tx(2) + tx(3) * tx(3);
    const double r = std::sqrt(rho2 - tx(0) * tx(0));
    const double t = tx(0);
    const Eigen::Vector3d expected =
        r / rho2 * Eigen::Vector3d(0.0, -tx(3) + t / r * tx(2), tx(2) + t / r * tx(3));
    const Extension ext = extend_from_slice(circles0, tx);
    CHECK((ext.U - expected).norm() < 1e-10);
    CHECK((ext.foot + t * ext.U - tx.tail<3>()).norm() < 1e-10);
  }
}

TEST_CASE("points outside the ray cover have no preimage") {
  const UField circles0 = ufield_from_components(
      {FieldExpr(0.0), -sym::x(3) / sqrt(sym::x(2) * sym::x(2) + sym::x(3) * sym::x(3)),
       sym::x(2) / sqrt(sym::x(2) * sym::x(2) + sym::x(3) * sym::x(3))});
  CHECK_THROWS_AS(extend_from_slice(circles0, Eigen::Vector4d(1.0, 0.0, 0.3, 0.1)), NoPreimage);
}

TEST_CASE("harmonic morphisms determine the ray direction") {
  const Eigen::Vector4d tx(0.1, 0.4, 0.7, -0.3);
  const HmDirection v = sfr_from_hm(sym::v(), tx);
  CHECK(v.degenerate);
  CHECK(v.mu.is_infinity());
  const HmDirection w = sfr_from_hm(sym::w(), tx);
  CHECK(w.degenerate);
  CHECK(std::abs(std::get<cplx>(w.mu.value())) < 1e-12);
  CHECK_THROWS_AS(sfr_from_hm(FieldExpr(1.0), tx), NotSubmersive);
  // mu is itself a harmonic morphism whose fibres are the rays it defines.
  const CatalogEntry e = catalog_entry("robinson:1");
  const HmDirection r = sfr_from_hm(e.mu, tx);
  CHECK_FALSE(r.degenerate);
  CHECK(same_projective(r.mu, ProjectivePair{1.0, eval(e.mu, from_minkowski(tx))}, 1e-10));
}
