#include "twistorkit/residuals.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <random>
#include <thread>

namespace twk {

namespace {

constexpr std::size_t kMaxRecordedFailures = 20;
constexpr std::size_t kMaxBatches = 20;

struct Sample {
  std::vector<double> params;
  Point4C point;
  bool singular = false;
  std::vector<double> residuals;
};

template <typename F>
void parallel_for(std::size_t n, F&& body) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), 8));
  if (workers == 1 || n < 64) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::uint64_t default_seed() {
  if (const char* env = std::getenv("TWISTOR_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
    }
  }
  return 42;
}

Domain make_domain(SliceKind kind, Box box, std::size_t samples, Point4C base) {
  Domain d;
  d.slice = SliceSpec{base, kind};
  d.box = std::move(box);
  d.samples = samples;
  return d;
}

std::vector<ResidualReport> sweep(const Domain& domain, const std::vector<std::string>& names,
                                  const ResidualFn& fn, double tol) {
  const int arity = slice_arity(domain.slice.kind);
  if (static_cast<int>(domain.box.lo.size()) != arity ||
      static_cast<int>(domain.box.hi.size()) != arity) {
    throw std::invalid_argument("box arity does not match slice");
  }
  std::mt19937_64 rng(domain.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Sample> accepted;
  std::size_t skipped = 0;
  for (std::size_t batch = 0; batch < kMaxBatches && accepted.size() < domain.samples; ++batch) {
    std::vector<Sample> candidates;
    while (candidates.size() < domain.samples) {
      Sample s;
      s.params.resize(arity);
      for (int k = 0; k < arity; ++k) {
        s.params[k] = domain.box.lo[k] + (domain.box.hi[k] - domain.box.lo[k]) * unit(rng);
      }
      s.point = slice_point(domain.slice, s.params);
      if (domain.exclude && domain.exclude(s.point)) {
        if (++skipped > 100 * domain.samples) break;
        continue;
      }
      candidates.push_back(std::move(s));
    }
    parallel_for(candidates.size(), [&](std::size_t i) {
      Sample& s = candidates[i];
      try {
        const auto r = fn(EvalPoint::on_slice(domain.slice, s.params));
        s.residuals.reserve(r.size());
        for (const cplx& v : r) s.residuals.push_back(std::abs(v));
        for (double v : s.residuals) {
          if (!std::isfinite(v)) s.singular = true;
        }
      } catch (const SingularPoint&) {
        s.singular = true;
      }
    });
    for (auto& s : candidates) {
      if (accepted.size() >= domain.samples) break;
      if (s.singular) {
        ++skipped;
      } else {
        accepted.push_back(std::move(s));
      }
    }
  }
  if (accepted.empty()) throw EmptyDomain("every sample was singular or excluded");

  std::vector<ResidualReport> reports;
  for (std::size_t c = 0; c < names.size(); ++c) {
    ResidualReport r;
    r.condition = names[c];
    r.seed = domain.seed;
    r.slice = domain.slice.kind;
    r.box = domain.box;
    r.samples = accepted.size();
    r.skipped = skipped;
    r.tolerance = tol;
    double sum = 0.0;
    for (const auto& s : accepted) {
      const double v = s.residuals.at(c);
      sum += v;
      r.max_abs = std::max(r.max_abs, v);
      if (v > tol && r.failures.size() < kMaxRecordedFailures) {
        r.failures.push_back({s.params, s.point, v});
      }
    }
    r.mean_abs = sum / static_cast<double>(accepted.size());
    reports.push_back(std::move(r));
  }
  return reports;
}

ResidualReport check_hc3(const FieldExpr& f, const Domain& domain, BranchSign branch,
                         double tol) {
  return sweep(domain, {"hc3"},
               [&](const EvalPoint& at) {
                 return std::vector<cplx>{grad_square(eval_jet(f, at, branch), MetricKind::Euclid3)};
               },
               tol)
      .front();
}

std::array<cplx, 2> alpha_residuals(const Jet& mu) {
  const Eigen::Vector4cd d = null_derivatives(mu.grad);  // q1, qt1, q2, qt2
  return {d(1) - mu.value * d(2), d(3) + mu.value * d(0)};
}

std::array<cplx, 2> hermitian_residuals(const Jet& mu) {
  // Wirtinger derivatives in real coordinates have the same form.
  return alpha_residuals(mu);
}

std::array<cplx, 2> sfr_residuals(const Jet& mu) {
  // Slice coordinates (t, x1, x2, x3); v = x1 + t, w = x1 - t, z = x2 + i x3.
  const Eigen::Vector4cd& g = mu.grad;
  const cplx dv = 0.5 * (g(1) + g(0));
  const cplx dw = 0.5 * (g(1) - g(0));
  const cplx dz = 0.5 * (g(2) - I * g(3));
  const cplx dzb = 0.5 * (g(2) + I * g(3));
  return {dv + I * mu.value * dz, dzb - I * mu.value * dw};
}

namespace {

ResidualReport pair_check(const std::string& name, const FieldExpr& mu, const Domain& domain,
                          BranchSign branch, double tol, SliceKind required,
                          std::array<cplx, 2> (*residuals)(const Jet&)) {
  if (domain.slice.kind != required) {
    throw std::invalid_argument(name + " needs a " + to_string(required) + " domain");
  }
  return sweep(domain, {name},
               [&](const EvalPoint& at) {
                 const auto r = residuals(eval_jet(mu, at, branch));
                 return std::vector<cplx>{std::abs(r[0]) >= std::abs(r[1]) ? r[0] : r[1]};
               },
               tol)
      .front();
}

}  // namespace

ResidualReport check_alpha(const FieldExpr& mu, const Domain& domain, BranchSign branch,
                           double tol) {
  return pair_check("alpha", mu, domain, branch, tol, SliceKind::C4, alpha_residuals);
}

ResidualReport check_hermitian(const FieldExpr& mu, const Domain& domain, BranchSign branch,
                               double tol) {
  return pair_check("hermitian", mu, domain, branch, tol, SliceKind::R4, hermitian_residuals);
}

ResidualReport check_sfr(const FieldExpr& mu, const Domain& domain, BranchSign branch,
                         double tol) {
  return pair_check("sfr", mu, domain, branch, tol, SliceKind::M4, sfr_residuals);
}

std::vector<ResidualReport> check_harmonic_morphism(const FieldExpr& phi, const Domain& domain,
                                                    BranchSign branch, double tol) {
  const MetricKind kind = metric_for(domain.slice.kind);
  const std::string tag = std::string(":") + to_string(domain.slice.kind);
  return sweep(domain, {"hm-laplacian" + tag, "hm-hwc" + tag},
               [&](const EvalPoint& at) {
                 const Jet j = eval_jet(phi, at, branch);
                 return std::vector<cplx>{laplacian(j, kind), grad_square(j, kind)};
               },
               tol);
}

}  // namespace twk
