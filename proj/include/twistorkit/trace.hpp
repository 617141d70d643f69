#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "twistorkit/catalog.hpp"

namespace twk {

struct TraceOptions {
  double t = 0.0;           // Minkowski time of the slice
  std::size_t leaves = 0;   // 0 means every seed of the entry
  double step = 0.005;      // arc-length step
  std::size_t steps = 1200;
};

struct Leaf {
  Eigen::Vector3d seed = Eigen::Vector3d::Zero();
  std::vector<double> s;
  std::vector<Eigen::Vector3d> points;
  // Value of the conserved quantity at each point; NaN where its chart is unavailable.
  std::vector<cplx> invariant;
  bool truncated = false;
  double drift = 0.0;  // max |I(s) - I(0)| over evaluated points
};

// Unit tangent U of the congruence on the slice t, from the Kerr direction.
Eigen::Vector3d trace_direction(const CatalogEntry& entry, double t, const Eigen::Vector3d& x);

// The function constant on leaves of the slice t: phi restricted to x0 = -i t,
// computed from the twistor of the alpha-plane through the point. When log_state
// is given, the chart logarithm is continued from it and updated.
cplx leaf_invariant(const CatalogEntry& entry, double t, const Eigen::Vector3d& x,
                    std::optional<cplx>* log_state = nullptr);

Leaf trace_leaf(const CatalogEntry& entry, const Eigen::Vector3d& seed, const TraceOptions& opt);
std::vector<Leaf> trace_leaves(const CatalogEntry& entry, const TraceOptions& opt);

void write_csv(std::ostream& os, const std::vector<Leaf>& leaves);
void write_svg(std::ostream& os, const std::vector<Leaf>& leaves, const std::string& plane);

}  // namespace twk
