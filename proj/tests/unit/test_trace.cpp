#include <sstream>

#include "doctest.h"
#include "twistorkit/trace.hpp"

using namespace twk;

TEST_CASE("leaves conserve the boundary invariant") {
  for (const auto& key : catalog_keys()) {
    for (double t : {0.0, 0.2}) {
      CAPTURE(key);
      CAPTURE(t);
      TraceOptions opt;
      opt.t = t;
      opt.steps = 600;
      for (const Leaf& l : trace_leaves(catalog_entry(key), opt)) {
        CHECK(l.points.size() > 100);
        CHECK(l.drift <= 1e-8);
      }
    }
  }
}

TEST_CASE("leaves are tangent to U") {
  const CatalogEntry e = catalog_entry("robinson:1");
  TraceOptions opt;
  opt.steps = 50;
  const Leaf l = trace_leaf(e, e.trace_seeds[0], opt);
  for (std::size_t k = 1; k + 1 < l.points.size(); ++k) {
    const Eigen::Vector3d fd = (l.points[k + 1] - l.points[k - 1]) / (2 * opt.step);
    CHECK((fd - trace_direction(e, 0.0, l.points[k])).norm() < 1e-4);
  }
}

TEST_CASE("circles close up at t = 0") {
  const CatalogEntry e = catalog_entry("circles");
  for (const Eigen::Vector3d& seed : e.trace_seeds) {
    const double length = 2.0 * M_PI * seed(1);
    TraceOptions opt;
    opt.steps = 2000;
    opt.step = length / static_cast<double>(opt.steps);
    const Leaf l = trace_leaf(e, seed, opt);
    REQUIRE_FALSE(l.truncated);
    CHECK((l.points.back() - seed).norm() <= 1e-6);
  }
}

TEST_CASE("leaves into singular points are truncated") {
  const CatalogEntry e = catalog_entry("quadric-radial");
  TraceOptions opt;
  const Leaf l = trace_leaf(e, e.trace_seeds[0], opt);
  CHECK(l.truncated);
  CHECK(l.points.back().norm() < 0.1);
}

TEST_CASE("output is deterministic and well formed") {
  const CatalogEntry e = catalog_entry("quadric-coaxal");
  TraceOptions opt;
  opt.steps = 100;
  opt.leaves = 2;
  std::ostringstream a, b, svg;
  write_csv(a, trace_leaves(e, opt));
  write_csv(b, trace_leaves(e, opt));
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("leaf,s,x1,x2,x3\n", 0) == 0);
  write_svg(svg, trace_leaves(e, opt), e.trace_plane);
  const std::string s = svg.str();
  CHECK(s.find("<svg") != std::string::npos);
  CHECK(s.find("id=\"leaf1\"") != std::string::npos);
  CHECK(s.find("id=\"leaf2\"") == std::string::npos);
  CHECK_THROWS_AS(write_svg(svg, {}, "x0x1"), std::invalid_argument);
}
