#include "doctest.h"
#include "twistorkit/catalog.hpp"
#include "twistorkit/report_json.hpp"

using namespace twk;

TEST_CASE("complex numbers serialise as pairs") {
  CHECK(to_json(cplx(1.5, -2.0)).dump() == "[1.5,-2.0]");
  CHECK(complex_from_json(json::parse("[0, 1]")) == I);
  CHECK(complex_from_json(json(3.0)) == cplx(3.0));
  CHECK(complex_from_json(json("1-2i")) == cplx(1.0, -2.0));
  CHECK_THROWS(complex_from_json(json::parse("[1, 2, 3]")));
}

TEST_CASE("surfaces round trip through JSON") {
  for (const char* key : {"radial", "robinson:1", "quadric-coaxal"}) {
    const TwistorSurface s = catalog_entry(key).surface;
    const json j = to_json(s);
    CHECK(j.at("degree") == s.degree());
    const TwistorSurface back = surface_from_json(json::parse(j.dump()));
    CHECK(same_surface(s, back, 0.0));
  }
}

TEST_CASE("residual reports carry seed, box and failures") {
  const auto reports = verify_mu(parse_expr("x1"), "hermitian", 50, 9);
  const json j = to_json(reports);
  REQUIRE(j.size() == 1);
  CHECK(j[0].at("seed") == 9);
  CHECK(j[0].at("samples") == 50);
  CHECK(j[0].at("box").at("lo").size() == 4);
  CHECK(j[0].at("passed") == false);
  CHECK(!j[0].at("failures").empty());
  CHECK(j[0].at("failures")[0].at("point").size() == 4);
}

TEST_CASE("matrices read from JSON") {
  const json j = json::parse(R"({"matrix": [[1,0,0,0],[0,1,0,0],[[0,1],0,1,0],[0,0,0,1]]})");
  const Eigen::Matrix4cd m = matrix4_from_json(j);
  CHECK(m(2, 0) == I);
  CHECK_THROWS(matrix4_from_json(json::parse("[[1,2]]")));
  const json back = to_json(Eigen::MatrixXcd(m));
  CHECK(back[2][0].dump() == "[0.0,1.0]");
}
