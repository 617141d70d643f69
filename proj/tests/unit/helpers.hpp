#pragma once

#include <random>

#include "twistorkit/coords.hpp"

namespace twk::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611);
  return g;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline cplx random_complex(double r = 1.0) { return {uniform(-r, r), uniform(-r, r)}; }

inline Point4C random_real_point(double lo = -1.0, double hi = 1.0) {
  return Point4C(uniform(lo, hi), uniform(lo, hi), uniform(lo, hi), uniform(lo, hi));
}

inline Point4C random_complex_point(double r = 1.0) {
  return Point4C(random_complex(r), random_complex(r), random_complex(r), random_complex(r));
}

inline double distance(const Point4C& a, const Point4C& b) { return (a.x - b.x).norm(); }

}  // namespace twk::testing
