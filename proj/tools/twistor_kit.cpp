// twistor-kit: command line front end to the twistorkit library.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "twistorkit/catalog.hpp"
#include "twistorkit/errors.hpp"
#include "twistorkit/groups.hpp"
#include "twistorkit/report_json.hpp"
#include "twistorkit/trace.hpp"

using namespace twk;

namespace {

bool all_passed(const std::vector<ResidualReport>& reports) {
  if (reports.empty()) return false;
  for (const auto& r : reports) {
    if (!r.passed()) return false;
  }
  return true;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return json::parse(in);
}

bool is_file(const std::string& path) { return std::ifstream(path).good(); }

BranchSign parse_branch(const std::string& s) {
  if (s == "+" || s == "plus") return BranchSign::Plus;
  if (s == "-" || s == "minus") return BranchSign::Minus;
  throw std::invalid_argument("branch must be plus or minus");
}

// linear:s, quadric-radial, quadric-circles, quadric-coaxal
SurfaceChart chart_from_key(const std::string& key, BranchSign branch) {
  const std::string head = key.substr(0, key.find(':'));
  if (head == "linear") {
    const cplx s = key.find(':') == std::string::npos ? cplx(0.0)
                                                      : parse_complex(key.substr(key.find(':') + 1));
    return chart_for(SurfaceFamily::Linear, s, branch);
  }
  if (head == "quadric-radial") return chart_for(SurfaceFamily::RadialQuadric, 0.0, branch);
  if (head == "quadric-circles") return chart_for(SurfaceFamily::CirclesQuadric, 0.0, branch);
  if (head == "quadric-coaxal") return chart_for(SurfaceFamily::CoaxalQuadric, 0.0, branch);
  throw std::invalid_argument("unknown surface family: " + key);
}

TwistorSurface surface_from_arg(const std::string& arg) {
  if (is_file(arg)) return surface_from_json(read_json_file(arg));
  const std::string head = arg.substr(0, arg.find(':'));
  if (head == "linear" || head.rfind("quadric-", 0) == 0) {
    return chart_from_key(arg, BranchSign::Plus).surface;
  }
  return catalog_entry(arg).surface;
}

Point4C parse_point(const std::string& text) {
  std::vector<cplx> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(parse_complex(item));
  if (v.size() != 4) throw std::invalid_argument("a point needs four comma-separated coordinates");
  return Point4C(v[0], v[1], v[2], v[3]);
}

void emit_json(const json& j, const std::string& out_path);

int print_reports(const std::vector<ResidualReport>& reports, json extra = json::object(),
                  const std::string& out_path = "") {
  extra["reports"] = to_json(reports);
  extra["passed"] = all_passed(reports);
  emit_json(extra, out_path);
  return all_passed(reports) ? 0 : 1;
}

// s for a surface of the form s w1 + w3, up to scale.
std::optional<cplx> linear_parameter(const TwistorSurface& psi) {
  if (psi.degree() != 1) return std::nullopt;
  cplx c1 = 0.0, c3 = 0.0;
  for (const Monomial& m : psi.monomials()) {
    if (m.e == std::array<int, 4>{0, 1, 0, 0}) {
      c1 = m.c;
    } else if (m.e == std::array<int, 4>{0, 0, 0, 1}) {
      c3 = m.c;
    } else if (std::abs(m.c) > 1e-12) {
      return std::nullopt;
    }
  }
  if (std::abs(c3) <= 1e-12) return std::nullopt;
  return c1 / c3;
}

// "R4=lo0,hi0,lo1,hi1,..." or "hyp=..." for the hyperbolic offsets.
void parse_box(const std::string& text, VerifyOptions& opt) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("box must look like R4=lo,hi,...");
  const std::string slice = text.substr(0, eq);
  std::vector<double> v;
  std::stringstream ss(text.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
  if (v.size() % 2 != 0) throw std::invalid_argument("box needs lo,hi pairs: " + text);
  Box box;
  for (std::size_t k = 0; k < v.size(); k += 2) {
    box.lo.push_back(v[k]);
    box.hi.push_back(v[k + 1]);
  }
  if (slice == "hyp") {
    opt.hyp_box = box;
  } else {
    opt.boxes[slice_kind_from_string(slice)] = box;
  }
}

// Accepts "re,im" as well as complex literals such as 1+2i.
cplx parse_a0(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return parse_complex(text);
  return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

// Catalog entry whose congruence is built from the given surface family.
CatalogEntry entry_for_family(const std::string& key) {
  const std::string head = key.substr(0, key.find(':'));
  if (head == "linear") {
    return catalog_entry(key.find(':') == std::string::npos ? "robinson:0" : "robinson" + key.substr(key.find(':')));
  }
  return catalog_entry(key);
}

void emit_json(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot write " + out_path);
  out << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twistor surfaces, shear-free congruences and harmonic morphisms"};
  app.require_subcommand(1);
  // Global options such as --seed may also follow the subcommand.
  app.fallthrough();

  std::size_t samples = 500;
  std::uint64_t seed = default_seed();
  app.add_option("--seed", seed, "sampling seed (default: TWISTOR_SEED or 42)");

  auto* verify = app.add_subcommand("verify", "sample residuals of a named example or expression");
  std::string example, mu_text, phi_text, out_path;
  std::vector<std::string> box_args;
  VerifyOptions vopt;
  auto* key_pos = verify->add_option("key", example, "catalog key");
  auto* ex_opt = verify->add_option("--example", example, "catalog key");
  auto* mu_opt = verify->add_option("--mu", mu_text, "direction field mu(x0..x3)");
  auto* phi_opt = verify->add_option("--phi", phi_text, "map phi(x0..x3)");
  ex_opt->excludes(mu_opt, phi_opt);
  key_pos->excludes(mu_opt, phi_opt);
  mu_opt->excludes(phi_opt);
  verify->add_option("--condition", vopt.condition, "hc3 alpha hermitian sfr hm hyp orth shear all");
  verify->add_option("--samples", samples, "samples per domain");
  verify->add_option("--box", box_args, "SLICE=lo,hi,... with SLICE in R3 R4 M4 C4 hyp; repeatable");
  verify->add_option("--tol", vopt.tol, "residual tolerance");
  verify->add_option("--out", out_path, "write the JSON report to this file");

  auto* kerr = app.add_subcommand("kerr", "direction field of a twistor surface at a point");
  std::string surface_arg, point_text, branch_text = "plus";
  kerr->add_option("--surface", surface_arg, "catalog key, family key or JSON file")->required();
  kerr->add_option("--point", point_text, "x0,x1,x2,x3 (complex entries allowed)")->required();
  kerr->add_option("--branch", branch_text, "plus or minus");

  auto* trace = app.add_subcommand("trace", "integral curves of U on a Minkowski time slice");
  std::string format = "csv", trace_example, trace_out;
  std::optional<double> trace_x1;
  TraceOptions topt;
  auto* trace_key = trace->add_option("key", trace_example, "catalog key");
  auto* trace_ex = trace->add_option("--example", trace_example, "catalog key");
  trace_key->excludes(trace_ex);
  trace->add_option("--t", topt.t, "slice time");
  trace->add_option("--x1", trace_x1, "move every seed to this x1");
  trace->add_option("--leaves", topt.leaves, "number of leaves (0 = all seeds)");
  trace->add_option("--step", topt.step, "arc-length step");
  trace->add_option("--steps", topt.steps, "integration steps per leaf");
  trace->add_option("--format", format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
  trace->add_option("--out", trace_out, "write the trace to this file");

  auto* transform = app.add_subcommand("transform", "apply a twistor transformation to an example");
  std::string matrix_arg, tr_example, tr_condition = "alpha";
  bool then_verify = false;
  transform->add_option("--matrix", matrix_arg, "named matrix or JSON file")->required();
  transform->add_option("--apply-to,--example", tr_example, "catalog key")->required();
  transform->add_flag("--then-verify", then_verify, "verify the transformed direction field");
  transform->add_option("--condition", tr_condition, "condition checked by --then-verify");
  transform->add_option("--samples", samples, "samples per domain");

  auto* boundary = app.add_subcommand("boundary", "hyperbolic harmonic morphism of a surface family");
  std::string family_key, a0_text = "0", emit = "phi", bbranch = "plus";
  boundary->add_option("--surface", family_key, "linear:s, quadric-radial, quadric-circles, quadric-coaxal")
      ->required();
  boundary->add_option("--a0", a0_text, "boundary parameter, re,im or a complex literal");
  boundary->add_option("--branch", bbranch, "plus or minus");
  boundary->add_option("--emit", emit, "phi, f or trace")->check(CLI::IsMember({"phi", "f", "trace"}));
  boundary->add_option("--samples", samples, "samples per domain");

  app.add_subcommand("catalog", "list the named examples");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      vopt.samples = samples;
      vopt.seed = seed;
      for (const auto& b : box_args) parse_box(b, vopt);
      if (!example.empty()) {
        const CatalogEntry e = catalog_entry(example);
        return print_reports(verify_entry(e, vopt),
                             {{"example", e.key}, {"mu", to_string(e.mu)}, {"f", to_string(e.f)}},
                             out_path);
      }
      if (!mu_text.empty()) {
        return print_reports(verify_mu(parse_expr(mu_text), vopt), {{"mu", mu_text}}, out_path);
      }
      if (!phi_text.empty()) {
        return print_reports(verify_phi(parse_expr(phi_text), vopt), {{"phi", phi_text}}, out_path);
      }
      std::cerr << "verify needs a catalog key, --mu or --phi\n";
      return 2;
    }
    if (kerr->parsed()) {
      const TwistorSurface psi = surface_from_arg(surface_arg);
      const Point4C p = parse_point(point_text);
      const ProjectivePair mu = kerr_eval(psi, p, parse_branch(branch_text));
      json out = {{"surface", to_json(psi)}, {"mu", to_json(mu)}};
      out["U"] = to_json(stereo_inv(ProjectivePair{mu.w0, I * mu.w1}));
      std::cout << out.dump(2) << '\n';
      return 0;
    }
    if (trace->parsed()) {
      if (trace_example.empty()) {
        std::cerr << "trace needs a catalog key\n";
        return 2;
      }
      CatalogEntry e = catalog_entry(trace_example);
      if (trace_x1) {
        for (auto& seed_point : e.trace_seeds) seed_point(0) = *trace_x1;
      }
      const auto leaves = trace_leaves(e, topt);
      std::ofstream file;
      if (!trace_out.empty()) {
        file.open(trace_out);
        if (!file) throw std::invalid_argument("cannot write " + trace_out);
      }
      std::ostream& os = trace_out.empty() ? std::cout : file;
      if (format == "svg") {
        write_svg(os, leaves, e.trace_plane);
      } else {
        write_csv(os, leaves);
      }
      std::cerr << trace_summary(leaves).dump() << '\n';
      return 0;
    }
    if (transform->parsed()) {
      const Eigen::Matrix4cd P =
          is_file(matrix_arg) ? matrix4_from_json(read_json_file(matrix_arg)) : named_matrix(matrix_arg);
      const CatalogEntry e = catalog_entry(tr_example);
      const TwistorSurface image = transform_surface(P, e.surface);
      json matches = json::array();
      for (const auto& key : catalog_keys()) {
        if (same_surface(catalog_entry(key).surface, image, 1e-10)) matches.push_back(key);
      }
      if (const auto s = linear_parameter(image)) {
        // s w1 + w3: robinson:s for real s, bunch:c for s = -i c.
        if (std::abs(s->imag()) <= 1e-12) matches.push_back("robinson:" + std::to_string(s->real()));
        if (std::abs(s->real()) <= 1e-12) matches.push_back("bunch:" + std::to_string(-s->imag()));
      }
      json extra = {{"example", e.key},
                    {"matrix", to_json(Eigen::MatrixXcd(P))},
                    {"sl2h", is_sl2h(P)},
                    {"su4h", is_su4h(P)},
                    {"surface", to_json(image)},
                    {"matches", matches}};
      if (!then_verify) {
        std::cout << extra.dump(2) << '\n';
        return 0;
      }
      const FieldExpr mu = pushforward_mu(P, e.mu);
      extra["mu"] = to_string(mu);
      return print_reports(verify_mu(mu, tr_condition, samples, seed), extra);
    }
    if (boundary->parsed()) {
      const cplx a0 = parse_a0(a0_text);
      const PhiSolution sol = solve_superminimal(chart_from_key(family_key, parse_branch(bbranch)), a0);
      const FieldExpr f = restrict_boundary(sol);
      if (emit == "f") {
        std::cout << to_string(f) << '\n';
        return 0;
      }
      if (emit == "trace") {
        // a0 = -i t picks the Minkowski slice at time t.
        if (std::abs(a0.real()) > 1e-12) throw std::invalid_argument("trace needs a0 = -i t");
        const CatalogEntry e = entry_for_family(family_key);
        TraceOptions opt;
        opt.t = -a0.imag();
        const auto leaves = trace_leaves(e, opt);
        write_csv(std::cout, leaves);
        std::cerr << trace_summary(leaves).dump() << '\n';
        return 0;
      }
      Domain chart_domain = make_domain(
          SliceKind::C4, Box{{0.3, -0.15, 0.3, -0.15, 0.0, 0.0, 0.0, 0.0}, {1.2, 0.15, 1.2, 0.15, 0.0, 0.0, 0.0, 0.0}},
          samples);
      chart_domain.seed = seed;
      std::vector<ResidualReport> reports{ode_residual(sol.chart, a0, sol.zeta_tilde, chart_domain)};
      const CatalogEntry box_source = catalog_entry("robinson");
      Domain hyp = make_domain(SliceKind::R4, box_source.hyp_box, samples, boundary_base(a0));
      hyp.seed = seed;
      hyp.exclude = exclude_near(sol.singular_loci);
      for (auto& r : check_hyperbolic_hm(sol.phi, a0, hyp)) reports.push_back(std::move(r));
      Domain r3 = make_domain(SliceKind::R3, box_source.boxes.at(SliceKind::R3), samples, boundary_base(a0));
      r3.seed = seed;
      r3.exclude = exclude_near(sol.singular_loci);
      reports.push_back(check_boundary_orthogonality(sol.phi, r3));
      reports.push_back(check_hc3(f, r3));
      return print_reports(reports, {{"zeta_tilde", to_string(sol.zeta_tilde, kChartNames)},
                                     {"mu", to_string(sol.mu)},
                                     {"phi", to_string(sol.phi)},
                                     {"f", to_string(f)}});
    }
    for (const auto& key : catalog_keys()) {
      std::cout << key << "\t" << catalog_entry(key).description << '\n';
    }
    return 0;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  }
}
