#include "twistorkit/catalog.hpp"

#include <stdexcept>

namespace twk {

namespace {

const std::vector<double> kRayParameters{0.0, 0.025, 0.05, 0.075, 0.1};

Box r3_box() { return {{0.3, 0.5, -0.5}, {1.2, 1.5, 0.5}}; }

Box with_first(const Box& b, double lo, double hi) {
  Box out;
  out.lo.push_back(lo);
  out.hi.push_back(hi);
  out.lo.insert(out.lo.end(), b.lo.begin(), b.lo.end());
  out.hi.insert(out.hi.end(), b.hi.begin(), b.hi.end());
  return out;
}

Box complexified(const Box& real, double imag) {
  Box out;
  for (std::size_t k = 0; k < real.lo.size(); ++k) {
    out.lo.insert(out.lo.end(), {real.lo[k], -imag});
    out.hi.insert(out.hi.end(), {real.hi[k], imag});
  }
  return out;
}

void set_boxes(CatalogEntry& e, const Box& r3) {
  e.boxes[SliceKind::R3] = r3;
  e.boxes[SliceKind::R4] = with_first(r3, 0.3, 1.2);
  e.boxes[SliceKind::M4] = with_first(r3, -0.15, 0.15);
  e.boxes[SliceKind::C4] = complexified(e.boxes[SliceKind::R4], 0.15);
  e.hyp_box = with_first(r3, 0.2, 1.0);
}

double parameter(const std::string& key, double fallback) {
  const auto colon = key.find(':');
  if (colon == std::string::npos) return fallback;
  std::size_t used = 0;
  const std::string arg = key.substr(colon + 1);
  const double v = std::stod(arg, &used);
  if (used != arg.size()) throw std::invalid_argument("malformed parameter in " + key);
  return v;
}

void attach_family(CatalogEntry& e, SurfaceFamily family, cplx s, BranchSign branch) {
  const SurfaceChart chart = chart_for(family, s, branch);
  const PhiSolution sol = solve_superminimal(chart, e.a0);
  e.surface = chart.surface;
  e.branch = branch;
  e.chart = chart;
  e.mu = sol.mu;
  e.phi_hyp = sol.phi;
  e.singular_loci = sol.singular_loci;
}

CatalogEntry linear_null() {
  CatalogEntry e;
  e.key = "linear-null";
  e.description = "f = x1 + i x2, a linear map with null coefficient vector; parallel lines";
  e.surface = TwistorSurface("linear-null", {{{1, 0, 0, 0}, -1.0}, {{0, 1, 0, 0}, 1.0}});
  e.mu = kerr_field(e.surface);
  e.f = sym::x(1) + I * sym::x(2);
  e.phi_hyp = e.f;
  set_boxes(e, r3_box());
  for (double y : {0.5, 0.75, 1.0, 1.25, 1.5}) e.trace_seeds.emplace_back(0.0, y, 0.0);
  return e;
}

CatalogEntry bunch(double c) {
  CatalogEntry e;
  e.key = "bunch:" + std::to_string(c);
  e.description = "bunch of circles through (-c, 0, 0); f = ((x1 + c)^2 + x2^2 + x3^2)/(x2 + i x3)";
  attach_family(e, SurfaceFamily::Linear, cplx(0.0, -c), BranchSign::Plus);
  const FieldExpr x1c = sym::x(1) + FieldExpr(c);
  e.f = (x1c * x1c + sym::x(2) * sym::x(2) + sym::x(3) * sym::x(3)) / sym::q2();
  set_boxes(e, r3_box());
  for (double y : {0.5, 0.75, 1.0, 1.25}) e.trace_seeds.emplace_back(0.5, y, 0.0);
  e.trace_plane = "x1x2";
  return e;
}

CatalogEntry radial() {
  CatalogEntry e;
  e.key = "radial";
  e.description = "radial lines from the origin; f = (x2 + i x3)/(x1 + |x|)";
  attach_family(e, SurfaceFamily::RadialQuadric, 0.0, BranchSign::Minus);
  // The chart coordinate is mu; f = i mu, so rotate the target to match.
  e.phi_hyp = I * *e.phi_hyp;
  const FieldExpr r =
      sqrt(sym::x(1) * sym::x(1) + sym::x(2) * sym::x(2) + sym::x(3) * sym::x(3));
  e.f = sym::q2() / (sym::x(1) + r);
  set_boxes(e, r3_box());
  for (double y : {0.5, 0.75, 1.0, 1.25}) e.trace_seeds.emplace_back(0.3, y, 0.0);
  e.trace_plane = "x1x2";
  return e;
}

CatalogEntry circles() {
  CatalogEntry e;
  e.key = "circles";
  e.description = "circles about the x1-axis; f = -i x1 + sqrt(x2^2 + x3^2)";
  attach_family(e, SurfaceFamily::CirclesQuadric, 0.0, BranchSign::Minus);
  e.f = -I * sym::x(1) + sqrt(sym::x(2) * sym::x(2) + sym::x(3) * sym::x(3));
  set_boxes(e, r3_box());
  for (double r : {1.25, 1.5, 1.75, 2.0, 2.25}) e.trace_seeds.emplace_back(0.0, r, 0.0);
  return e;
}

CatalogEntry hopf() {
  CatalogEntry e;
  e.key = "hopf";
  e.description = "Hopf congruence mu = -q2/qt1; its t = 0 slice is the bunch through the origin";
  attach_family(e, SurfaceFamily::Linear, 0.0, BranchSign::Plus);
  e.f = (sym::x(1) * sym::x(1) + sym::x(2) * sym::x(2) + sym::x(3) * sym::x(3)) / sym::q2();
  set_boxes(e, r3_box());
  for (double y : {0.5, 0.75, 1.0, 1.25}) e.trace_seeds.emplace_back(0.5, y, 0.0);
  e.trace_plane = "x1x2";
  return e;
}

CatalogEntry robinson(double s) {
  CatalogEntry e;
  e.key = "robinson:" + std::to_string(s);
  e.description = "Robinson congruence from s w1 + w3 = 0; twisting for s != 0";
  attach_family(e, SurfaceFamily::Linear, s, BranchSign::Plus);
  set_boxes(e, r3_box());
  for (double y : {0.5, 0.75, 1.0, 1.25}) e.trace_seeds.emplace_back(0.5, y, 0.0);
  return e;
}

CatalogEntry quadric(SurfaceFamily family, const std::string& key, const std::string& text) {
  CatalogEntry e;
  e.key = key;
  e.description = text;
  attach_family(e, family, 0.0, BranchSign::Plus);
  Box r3 = r3_box();
  if (family == SurfaceFamily::CoaxalQuadric) {
    r3.lo[0] = 0.5;
    e.trace_plane = "x1x2";
    for (double x1 : {0.3, 0.45, 0.6, 0.75}) e.trace_seeds.emplace_back(x1, 1.0, 0.0);
  } else {
    for (double y : {0.6, 0.9, 1.2, 1.5}) e.trace_seeds.emplace_back(0.4, y, 0.0);
  }
  set_boxes(e, r3);
  return e;
}

}  // namespace

std::vector<std::string> catalog_keys() {
  return {"linear-null", "bunch",          "radial",          "circles",       "hopf",
          "robinson:1",  "quadric-radial", "quadric-circles", "quadric-coaxal"};
}

CatalogEntry catalog_entry(const std::string& key) {
  const std::string head = key.substr(0, key.find(':'));
  CatalogEntry e;
  if (head == "linear-null") {
    e = linear_null();
  } else if (head == "bunch") {
    e = bunch(parameter(key, 1.0));
  } else if (head == "radial") {
    e = radial();
  } else if (head == "circles") {
    e = circles();
  } else if (head == "hopf") {
    e = hopf();
  } else if (head == "robinson") {
    e = robinson(parameter(key, 1.0));
  } else if (head == "quadric-radial") {
    e = quadric(SurfaceFamily::RadialQuadric, key, "quadric w0 w3 - w1 w2; radial lines");
  } else if (head == "quadric-circles") {
    e = quadric(SurfaceFamily::CirclesQuadric, key, "quadric w0 w3 + w1 w2; circles");
  } else if (head == "quadric-coaxal") {
    e = quadric(SurfaceFamily::CoaxalQuadric, key, "quadric w0 w1 + w2 w3; coaxal circles");
  } else {
    throw std::invalid_argument("unknown catalog key: " + key);
  }
  if (e.chart && e.f.is_constant()) {
    e.f = substitute(*e.phi_hyp, {FieldExpr(e.a0), sym::x(1), sym::x(2), sym::x(3)});
  }
  return e;
}

Box default_box(SliceKind kind) {
  CatalogEntry e;
  set_boxes(e, r3_box());
  return e.boxes.at(kind);
}

std::vector<std::string> condition_names() {
  return {"hc3", "alpha", "hermitian", "sfr", "hm", "hyp", "orth", "shear"};
}

namespace {

Domain domain_for(const CatalogEntry& e, SliceKind kind, const VerifyOptions& opt,
                  Point4C base = Point4C{}) {
  Domain d = make_domain(kind, e.boxes.at(kind), opt.samples, base);
  d.seed = opt.seed;
  return d;
}

bool wants(const std::string& condition, const std::string& name) {
  return condition == "all" || condition == name;
}

void append(std::vector<ResidualReport>& out, std::vector<ResidualReport> more) {
  for (auto& r : more) out.push_back(std::move(r));
}

void mu_checks(std::vector<ResidualReport>& out, const FieldExpr& mu, const CatalogEntry& e,
               const VerifyOptions& opt) {
  const bool holomorphic = !contains_conj(mu);
  const double tol = opt.tol;
  const auto plus = BranchSign::Plus;
  if (holomorphic && wants(opt.condition, "alpha")) {
    out.push_back(check_alpha(mu, domain_for(e, SliceKind::C4, opt), plus, tol));
  }
  if (wants(opt.condition, "hermitian")) {
    out.push_back(check_hermitian(mu, domain_for(e, SliceKind::R4, opt), plus, tol));
  }
  if (wants(opt.condition, "sfr")) {
    out.push_back(check_sfr(mu, domain_for(e, SliceKind::M4, opt), plus, tol));
  }
  if (wants(opt.condition, "hm")) {
    append(out, check_harmonic_morphism(mu, domain_for(e, SliceKind::R4, opt), plus, tol));
    if (holomorphic) {
      append(out, check_harmonic_morphism(mu, domain_for(e, SliceKind::C4, opt), plus, tol));
    }
    append(out, check_harmonic_morphism(mu, domain_for(e, SliceKind::M4, opt), plus, tol));
  }
  if (wants(opt.condition, "shear")) {
    out.push_back(check_shear(ufield_from_mu(mu), domain_for(e, SliceKind::M4, opt),
                              kRayParameters, tol));
  }
}

void phi_checks(std::vector<ResidualReport>& out, const FieldExpr& f,
                const std::optional<FieldExpr>& phi, cplx a0, const CatalogEntry& e,
                const VerifyOptions& opt) {
  const auto exclude = e.singular_loci.empty() ? nullptr : exclude_near(e.singular_loci);
  const auto plus = BranchSign::Plus;
  if (wants(opt.condition, "hc3")) {
    Domain d = domain_for(e, SliceKind::R3, opt, boundary_base(a0));
    d.exclude = exclude;
    out.push_back(check_hc3(f, d, plus, opt.tol));
  }
  if (!phi) return;
  if (wants(opt.condition, "hyp")) {
    Domain d = make_domain(SliceKind::R4, e.hyp_box, opt.samples, boundary_base(a0));
    d.seed = opt.seed;
    d.exclude = exclude;
    append(out, check_hyperbolic_hm(*phi, a0, d, plus, opt.tol));
  }
  if (wants(opt.condition, "orth")) {
    Domain d = domain_for(e, SliceKind::R3, opt, boundary_base(a0));
    d.exclude = exclude;
    out.push_back(check_boundary_orthogonality(*phi, d, plus, opt.tol));
  }
}

void apply_overrides(CatalogEntry& e, const VerifyOptions& opt) {
  for (const auto& [kind, box] : opt.boxes) {
    if (static_cast<int>(box.lo.size()) != slice_arity(kind) || box.hi.size() != box.lo.size()) {
      throw std::invalid_argument(std::string("box for ") + to_string(kind) + " needs " +
                                  std::to_string(slice_arity(kind)) + " intervals");
    }
    e.boxes[kind] = box;
  }
  if (opt.hyp_box) {
    if (opt.hyp_box->lo.size() != 4 || opt.hyp_box->hi.size() != 4) {
      throw std::invalid_argument("hyperbolic box needs 4 intervals");
    }
    e.hyp_box = *opt.hyp_box;
  }
}

VerifyOptions options(const std::string& condition, std::size_t samples, std::uint64_t seed) {
  VerifyOptions opt;
  opt.condition = condition;
  opt.samples = samples;
  opt.seed = seed;
  return opt;
}

CatalogEntry expression_entry() {
  CatalogEntry e;
  set_boxes(e, r3_box());
  return e;
}

}  // namespace

std::vector<ResidualReport> verify_entry(const CatalogEntry& entry, const VerifyOptions& opt) {
  CatalogEntry e = entry;
  apply_overrides(e, opt);
  std::vector<ResidualReport> out;
  mu_checks(out, e.mu, e, opt);
  phi_checks(out, e.f, e.phi_hyp, e.a0, e, opt);
  return out;
}

std::vector<ResidualReport> verify_entry(const CatalogEntry& e, const std::string& condition,
                                         std::size_t samples, std::uint64_t seed) {
  return verify_entry(e, options(condition, samples, seed));
}

std::vector<ResidualReport> verify_mu(const FieldExpr& mu, const VerifyOptions& opt) {
  CatalogEntry e = expression_entry();
  apply_overrides(e, opt);
  std::vector<ResidualReport> out;
  mu_checks(out, mu, e, opt);
  return out;
}

std::vector<ResidualReport> verify_mu(const FieldExpr& mu, const std::string& condition,
                                      std::size_t samples, std::uint64_t seed) {
  return verify_mu(mu, options(condition, samples, seed));
}

std::vector<ResidualReport> verify_phi(const FieldExpr& phi, const VerifyOptions& opt) {
  CatalogEntry e = expression_entry();
  apply_overrides(e, opt);
  std::vector<ResidualReport> out;
  phi_checks(out, phi, phi, 0.0, e, opt);
  if (wants(opt.condition, "hm")) {
    const auto plus = BranchSign::Plus;
    append(out, check_harmonic_morphism(phi, domain_for(e, SliceKind::R4, opt), plus, opt.tol));
    if (!contains_conj(phi)) {
      append(out, check_harmonic_morphism(phi, domain_for(e, SliceKind::C4, opt), plus, opt.tol));
    }
    append(out, check_harmonic_morphism(phi, domain_for(e, SliceKind::M4, opt), plus, opt.tol));
  }
  return out;
}

std::vector<ResidualReport> verify_phi(const FieldExpr& phi, const std::string& condition,
                                       std::size_t samples, std::uint64_t seed) {
  return verify_phi(phi, options(condition, samples, seed));
}

}  // namespace twk
