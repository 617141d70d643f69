#include "twistorkit/trace.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>

#include "twistorkit/errors.hpp"
#include "twistorkit/twistor.hpp"

namespace twk {

namespace {

constexpr double kTwoPi = 6.283185307179586;
constexpr double kLocalErrorLimit = 1e-11;
constexpr double kMinStepAlignment = 0.95;

Point4C slice_point_at(double t, const Eigen::Vector3d& x) {
  Point4C p;
  p[0] = cplx(0.0, -t);
  for (int k = 0; k < 3; ++k) p[k + 1] = x(k);
  return p;
}

// Log continued from the previous value so that the result is within pi of it.
cplx continued_log(cplx z, std::optional<cplx> previous) {
  cplx l = principal_log(z);
  if (previous) {
    const double k = std::round((previous->imag() - l.imag()) / kTwoPi);
    l += cplx(0.0, kTwoPi * k);
  }
  return l;
}

cplx eval_linear(const FieldExpr& e, const TwistorVector& w) {
  return eval(e, EvalPoint::holomorphic(Point4C{w}));
}

}  // namespace

Eigen::Vector3d trace_direction(const CatalogEntry& entry, double t, const Eigen::Vector3d& x) {
  const ProjectivePair mu = kerr_eval(entry.surface, slice_point_at(t, x), entry.branch);
  return stereo_inv(ProjectivePair{mu.w0, I * mu.w1});
}

cplx leaf_invariant(const CatalogEntry& entry, double t, const Eigen::Vector3d& x,
                    std::optional<cplx>* log_state) {
  const auto branch_log = [&](cplx z) {
    const cplx l = continued_log(z, log_state ? *log_state : std::nullopt);
    if (log_state) *log_state = l;
    return l;
  };
  const Point4C p = slice_point_at(t, x);
  if (!entry.chart) return eval(entry.f, EvalPoint::holomorphic(Point4C{Eigen::Vector4cd(0.0, x(0), x(1), x(2))}));
  const ProjectivePair mu = kerr_eval(entry.surface, p, entry.branch);
  TwistorVector w = iota(p, mu);
  if (std::abs(w(0)) < 1e-6 * w.cwiseAbs().maxCoeff()) {
    return cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
  }
  w /= w(0);
  const SurfaceChart& chart = *entry.chart;
  const cplx zeta = eval_linear(chart.inverse[0], w);
  const cplx eta = eval_linear(chart.inverse[1], w);
  const cplx a0(0.0, -t);
  switch (chart.family) {
    case SurfaceFamily::Linear:
      return (2.0 * a0 + chart.s - eta) / zeta;
    case SurfaceFamily::RadialQuadric:
      return zeta;
    case SurfaceFamily::CirclesQuadric: {
      return zeta - a0 * branch_log(eta);
    }
    case SurfaceFamily::CoaxalQuadric: {
      const cplx k = principal_sqrt(a0 * a0 + 1.0);
      if (std::abs(k) < 1e-8) return zeta * std::exp(-2.0 * a0 / (eta + a0));
      if (std::abs(a0) == 0.0) return zeta;
      return zeta * std::exp(-a0 / k * branch_log((eta + a0 + k) / (eta + a0 - k)));
    }
  }
  return zeta;
}

Leaf trace_leaf(const CatalogEntry& entry, const Eigen::Vector3d& seed, const TraceOptions& opt) {
  Leaf leaf;
  leaf.seed = seed;
  const auto f = [&](const Eigen::Vector3d& x) { return trace_direction(entry, opt.t, x); };
  Eigen::Vector3d x = seed;
  std::optional<cplx> first;
  std::optional<cplx> log_state;
  const auto record = [&](double s) {
    leaf.s.push_back(s);
    leaf.points.push_back(x);
    cplx inv(std::numeric_limits<double>::quiet_NaN(), 0.0);
    try {
      inv = leaf_invariant(entry, opt.t, x, &log_state);
    } catch (const std::exception&) {
    }
    leaf.invariant.push_back(inv);
    if (std::isfinite(inv.real()) && std::isfinite(inv.imag())) {
      if (!first) first = inv;
      leaf.drift = std::max(leaf.drift, std::abs(inv - *first));
    }
  };
  record(0.0);
  const double h = opt.step;
  const auto rk4 = [&](const Eigen::Vector3d& y, double dh) {
    const Eigen::Vector3d k1 = f(y);
    const Eigen::Vector3d k2 = f(y + 0.5 * dh * k1);
    const Eigen::Vector3d k3 = f(y + 0.5 * dh * k2);
    const Eigen::Vector3d k4 = f(y + dh * k3);
    // Stages pointing apart mean the step straddles a singular point.
    if (std::min({k1.dot(k2), k1.dot(k3), k1.dot(k4)}) < kMinStepAlignment) {
      throw SingularPoint("leaf reverses direction");
    }
    return Eigen::Vector3d(y + dh / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  };
  for (std::size_t n = 1; n <= opt.steps; ++n) {
    try {
      const Eigen::Vector3d full = rk4(x, h);
      const Eigen::Vector3d half = rk4(rk4(x, 0.5 * h), 0.5 * h);
      if (!half.allFinite() || !full.allFinite()) throw SingularPoint("non-finite step");
      // Step-doubling error estimate; it grows without bound near singular points.
      if ((half - full).norm() / 15.0 > kLocalErrorLimit) {
        throw SingularPoint("leaf reaches a singular point");
      }
      x = half + (half - full) / 15.0;
    } catch (const std::exception&) {
      leaf.truncated = true;
      break;
    }
    record(static_cast<double>(n) * h);
  }
  return leaf;
}

std::vector<Leaf> trace_leaves(const CatalogEntry& entry, const TraceOptions& opt) {
  std::size_t n = entry.trace_seeds.size();
  if (opt.leaves > 0) n = std::min(n, opt.leaves);
  std::vector<Leaf> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(trace_leaf(entry, entry.trace_seeds[k], opt));
  return out;
}

void write_csv(std::ostream& os, const std::vector<Leaf>& leaves) {
  os << "leaf,s,x1,x2,x3\n" << std::fixed << std::setprecision(9);
  for (std::size_t k = 0; k < leaves.size(); ++k) {
    const Leaf& l = leaves[k];
    for (std::size_t j = 0; j < l.points.size(); ++j) {
      os << k << ',' << l.s[j] << ',' << l.points[j](0) << ',' << l.points[j](1) << ','
         << l.points[j](2) << '\n';
    }
  }
}

void write_svg(std::ostream& os, const std::vector<Leaf>& leaves, const std::string& plane) {
  int a = 1, b = 2;
  if (plane == "x1x2") {
    a = 0;
    b = 1;
  } else if (plane == "x1x3") {
    a = 0;
    b = 2;
  } else if (plane != "x2x3") {
    throw std::invalid_argument("unknown plane: " + plane);
  }
  double lo_a = 1e300, hi_a = -1e300, lo_b = 1e300, hi_b = -1e300;
  for (const Leaf& l : leaves) {
    for (const auto& p : l.points) {
      lo_a = std::min(lo_a, p(a));
      hi_a = std::max(hi_a, p(a));
      lo_b = std::min(lo_b, p(b));
      hi_b = std::max(hi_b, p(b));
    }
  }
  if (lo_a > hi_a) lo_a = hi_a = lo_b = hi_b = 0.0;
  const double span = std::max({hi_a - lo_a, hi_b - lo_b, 1e-9});
  const double size = 600.0, margin = 20.0;
  const double scale = (size - 2 * margin) / span;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size
     << "\" height=\"" << size << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  os << std::fixed << std::setprecision(3);
  for (std::size_t k = 0; k < leaves.size(); ++k) {
    os << "  <polyline id=\"leaf" << k << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
    for (const auto& p : leaves[k].points) {
      os << margin + (p(a) - lo_a) * scale << ',' << size - margin - (p(b) - lo_b) * scale << ' ';
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
}

}  // namespace twk
