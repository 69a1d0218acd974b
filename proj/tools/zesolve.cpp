// zesolve: construct zero-energy-solvable radial potentials by composing
// catalog families, verify the claimed properties, and export curves.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "zesolve/analysis.hpp"
#include "zesolve/catalog.hpp"
#include "zesolve/transform.hpp"

using json = nlohmann::json;
using namespace zesolve;

namespace {

constexpr const char* kVersionLine = "# zesolve 1.0";

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct GridSpec {
  double r_min = 1e-2;
  double r_max = 20.0;
  int points = 400;
  bool log_spacing = true;

  Array build() const {
    if (points < 2) throw ParamDomain("grid: points >= 2 required");
    return log_spacing ? log_grid(r_min, r_max, points)
                       : linear_grid(r_min, r_max, points);
  }
};

GridSpec parse_grid(const std::string& s) {
  // "log:1e-2,20,400" or "lin:0,20,400"
  GridSpec g;
  const auto colon = s.find(':');
  if (colon == std::string::npos)
    throw ParamDomain("grid spec must look like log:rmin,rmax,points");
  const std::string kind = s.substr(0, colon);
  if (kind == "log")
    g.log_spacing = true;
  else if (kind == "lin" || kind == "linear")
    g.log_spacing = false;
  else
    throw ParamDomain("grid spacing must be log or lin");
  std::stringstream body(s.substr(colon + 1));
  std::string tok;
  std::vector<double> vals;
  while (std::getline(body, tok, ',')) vals.push_back(std::stod(tok));
  if (vals.size() != 3) throw ParamDomain("grid spec needs rmin,rmax,points");
  g.r_min = vals[0];
  g.r_max = vals[1];
  g.points = static_cast<int>(vals[2]);
  return g;
}

FamilyId parse_family(const std::string& s) {
  FamilyId f;
  const auto colon = s.find(':');
  f.id = s.substr(0, colon == std::string::npos ? s.size() : colon);
  if (f.id == "exp") f.id = "exponential-70";
  if (colon != std::string::npos) {
    std::stringstream body(s.substr(colon + 1));
    std::string tok;
    while (std::getline(body, tok, ',')) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos)
        throw ParamDomain("family parameter must look like key=value");
      f.params[tok.substr(0, eq)] = std::stod(tok.substr(eq + 1));
    }
  }
  return f;
}

Tolerance tolerance_profile(std::string name) {
  if (name.empty()) {
    if (const char* env = std::getenv("ZESOLVE_TOL")) name = env;
  }
  if (name.empty() || name == "default") return {1e-10, 1e-12, 200000};
  if (name == "fast") return {1e-8, 1e-10, 100000};
  if (name == "strict") return {1e-12, 1e-14, 500000};
  throw ParamDomain("unknown tolerance profile '" + name + "'");
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file " + path);
  out << text;
}

json report_to_json(const VerificationReport& rep) {
  json flags = json::array();
  for (const auto& f : rep.flags) flags.push_back({{f.name, f.passed}});
  return {{"max_wronskian_dev", rep.max_wronskian_dev},
          {"max_residual_rel", rep.max_residual_rel},
          {"node_count", rep.node_count},
          {"bargmann_bound", rep.bargmann_bound},
          {"tail", {{"A", rep.tail.A}, {"B", rep.tail.B}}},
          {"flags", flags}};
}

// ---------------------------------------------------------------------------
// Subcommand payloads
// ---------------------------------------------------------------------------

int run_catalog() {
  std::cout << kVersionLine << " catalog\n";
  for (const auto& f : list_families()) {
    std::printf("%-26s  params: %-28s %s%s\n", f.id.c_str(),
                f.parameters.c_str(), f.description.c_str(),
                f.has_pair ? "" : "  [potential only]");
  }
  return 0;
}

int run_sample(const FamilyId& family, const GridSpec& grid,
               const std::string& out_path) {
  const Array radii = grid.build();
  std::ostringstream os;
  os << kVersionLine << " sample " << family.id << "\n";
  const auto families = list_families();
  bool has_pair = false;
  for (const auto& f : families)
    if (f.id == family.id) has_pair = f.has_pair;

  if (has_pair) {
    const SolutionPair pair = make_pair(family);
    os << "r,V,phi,chi\n";
    for (double r : radii)
      os << fmt17(r) << ',' << fmt17(pair.potential.effective(r)) << ','
         << fmt17(pair.phi(r)) << ',' << fmt17(pair.chi(r)) << '\n';
  } else {
    const PotentialSpec pot = make_potential(family);
    os << "r,V\n";
    for (double r : radii)
      os << fmt17(r) << ',' << fmt17(pot.effective(r)) << '\n';
  }
  write_text(out_path, os.str());
  return 0;
}

VerificationReport composed_report(const ComposedSystem& sys,
                                   const GridSpec& grid) {
  VerificationReport rep;
  const Array g = grid.build();
  for (double r : g) {
    const double w = sys.base().dphi(r) * sys.base().chi(r) -
                     sys.base().phi(r) * sys.base().dchi(r);
    rep.max_wronskian_dev = std::max(rep.max_wronskian_dev, std::abs(w - 1.0));
  }
  rep.max_residual_rel =
      residual(sys.potential(), [&sys](double r) { return sys.solution(r); },
               g);
  const double x_hi = sys.mapping().forward(grid.r_max);
  const int inner_nodes =
      count_nodes([&sys](double x) { return sys.inner_solution(x); },
                  1e-3 * x_hi, x_hi);
  rep.node_count =
      count_nodes([&sys](double r) { return sys.solution(r); },
                  1e-3 * grid.r_max, grid.r_max);
  try {
    rep.bargmann_bound = bargmann_bound(sys.inner());
  } catch (const Error&) {
    rep.bargmann_bound = std::numeric_limits<double>::quiet_NaN();
  }
  rep.flags.push_back({"wronskian<1e-8", rep.max_wronskian_dev < 1e-8});
  rep.flags.push_back({"residual<1e-5", rep.max_residual_rel < 1e-5});
  rep.flags.push_back({"node_preservation", inner_nodes == rep.node_count});
  if (std::isfinite(rep.bargmann_bound))
    rep.flags.push_back(
        {"bargmann", rep.node_count <= std::floor(rep.bargmann_bound)});
  return rep;
}

int run_compose(const FamilyId& base_id, const FamilyId& inner_id, int depth,
                const GridSpec& grid, const std::string& out_path,
                const std::string& format, const Tolerance& tol) {
  const SolutionPair base = make_pair(base_id);
  const PotentialSpec inner = make_potential(inner_id);

  // use the catalog closed-form inner solution when the parameters admit one
  ScalarFn1 phi1, dphi1;
  try {
    const SolutionPair ip = make_pair(inner_id);
    phi1 = ip.phi;
    dphi1 = ip.dphi;
  } catch (const ParamDomain&) {
  }

  const ComposedSystem sys =
      iterate(base, inner, depth, phi1, dphi1,
              std::max(grid.r_max, 1.2 * grid.r_max), tol);

  VerificationReport rep = composed_report(sys, grid);

  std::ostringstream os;
  if (format == "json") {
    json j;
    j["config"] = {{"base", base.name},
                   {"inner", inner.name},
                   {"depth", depth},
                   {"grid",
                    {{"r_min", grid.r_min},
                     {"r_max", grid.r_max},
                     {"points", grid.points},
                     {"spacing", grid.log_spacing ? "log" : "linear"}}}};
    j["provenance"] = sys.provenance();
    j["report"] = report_to_json(rep);
    os << kVersionLine << "\n" << j.dump(2) << "\n";
  } else {
    os << kVersionLine << " compose " << base.name << " <- " << inner.name
       << " depth=" << depth << "\n";
    os << "r,V,phi,x\n";
    for (double r : grid.build())
      os << fmt17(r) << ',' << fmt17(sys.potential().effective(r)) << ','
         << fmt17(sys.solution(r)) << ',' << fmt17(sys.mapping().forward(r))
         << '\n';
  }
  write_text(out_path, os.str());

  for (const auto& f : rep.flags)
    if (!f.passed) {
      std::cerr << "verification check failed: " << f.name << "\n";
      return 1;
    }
  return 0;
}

int run_verify(bool all, const std::string& family) {
  std::vector<FamilyId> targets;
  if (all || family.empty()) {
    targets = {{"free", {}},
               {"rational-exp-22", {{"lambda", 1.0}, {"a", 1.0}}},
               {"inverse-square-quartic-23", {{"g", 4.0}, {"b", 1.0}}},
               {"exponential-70", {{"lambda", 1.0}, {"mu", 1.0}}},
               {"inverse-power-72", {{"g", 1.0}, {"n", 5.0}}},
               {"inverse-quartic-74", {{"g", 1.0}}},
               {"coulomb-72p", {{"alpha", 1.0}}},
               {"chi-rational-79", {{"alpha", 1.0}, {"beta", 1.0}, {"n", 2.0}}},
               {"chi-exponential-82", {{"mu", 1.0}}}};
  } else {
    targets.push_back(parse_family(family));
  }
  bool ok = true;
  for (const auto& t : targets) {
    const SolutionPair pair = make_pair(t);
    const VerificationReport rep = verify_pair(pair);
    for (const auto& f : rep.flags) {
      std::printf("%-26s %-24s %s\n", t.id.c_str(), f.name.c_str(),
                  f.passed ? "PASS" : "FAIL");
      ok = ok && f.passed;
    }
  }
  return ok ? 0 : 1;
}

void apply_config(const std::string& path, CLI::App* cmd,
                  std::string& base_s, std::string& inner_s,
                  std::string& family_s, int& depth, std::string& grid_s,
                  std::string& out, std::string& format, std::string& tol_s) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw ParamDomain("cannot read config file " + path);
  json j;
  in >> j;
  auto take = [&](const char* key, auto& target, const char* flag) {
    if (j.contains(key) && cmd->count(flag) == 0) target = j[key];
  };
  take("base", base_s, "--base");
  take("inner", inner_s, "--inner");
  take("family", family_s, "--family");
  take("grid", grid_s, "--grid");
  take("out", out, "--out");
  take("format", format, "--format");
  take("tol", tol_s, "--tol");
  if (j.contains("depth") && cmd->count("--depth") == 0) depth = j["depth"];
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zero-energy solvable potential construction and verification"};
  app.require_subcommand(1);

  std::string base_s, inner_s, family_s, grid_s, out = "-", format = "csv",
                                                 tol_s, config_s;
  int depth = 1;
  bool verify_all = false;
  // per-parameter flags for `sample`
  std::map<std::string, double> flag_params;
  const std::vector<std::string> param_names = {
      "g", "lambda", "mu", "a", "b", "n", "alpha", "beta", "C", "R", "ell"};

  auto* c_catalog = app.add_subcommand("catalog", "list families");
  auto* c_sample = app.add_subcommand("sample", "export potential/pair curves");
  c_sample->add_option("--family", family_s, "family id, e.g. inverse-quartic-74");
  c_sample->add_option("--grid", grid_s, "grid spec log:rmin,rmax,points");
  c_sample->add_option("--out", out, "output path or - for stdout");
  c_sample->add_option("--config", config_s, "JSON config; flags override");
  for (const auto& p : param_names)
    c_sample->add_option("--" + p, flag_params[p], "family parameter " + p);

  auto add_compose_flags = [&](CLI::App* c) {
    c->add_option("--base", base_s, "base family (no bound states)");
    c->add_option("--inner", inner_s, "inner family spec");
    c->add_option("--grid", grid_s, "grid spec");
    c->add_option("--out", out, "output path or -");
    c->add_option("--format", format, "csv or json");
    c->add_option("--tol", tol_s, "tolerance profile fast|default|strict");
    c->add_option("--config", config_s, "JSON config; flags override");
  };
  auto* c_compose = app.add_subcommand("compose", "compose base and inner");
  add_compose_flags(c_compose);
  auto* c_iterate = app.add_subcommand("iterate", "iterated composition");
  add_compose_flags(c_iterate);
  c_iterate->add_option("--depth", depth, "iteration depth >= 1");

  auto* c_verify = app.add_subcommand("verify", "run the invariant suite");
  c_verify->add_flag("--all", verify_all, "verify every catalog family");
  c_verify->add_option("--family", family_s, "verify a single family");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_catalog->parsed()) return run_catalog();

    if (c_sample->parsed()) {
      apply_config(config_s, c_sample, base_s, inner_s, family_s, depth,
                   grid_s, out, format, tol_s);
      if (family_s.empty()) throw ParamDomain("sample: --family is required");
      FamilyId fam = parse_family(family_s);
      for (const auto& p : param_names)
        if (c_sample->count("--" + p) > 0) fam.params[p] = flag_params[p];
      GridSpec grid = grid_s.empty() ? GridSpec{} : parse_grid(grid_s);
      return run_sample(fam, grid, out);
    }

    if (c_compose->parsed() || c_iterate->parsed()) {
      CLI::App* cmd = c_compose->parsed() ? c_compose : c_iterate;
      apply_config(config_s, cmd, base_s, inner_s, family_s, depth, grid_s,
                   out, format, tol_s);
      if (base_s.empty() || inner_s.empty())
        throw ParamDomain("compose/iterate: --base and --inner are required");
      GridSpec grid = grid_s.empty() ? GridSpec{} : parse_grid(grid_s);
      return run_compose(parse_family(base_s), parse_family(inner_s),
                         c_compose->parsed() ? 1 : depth, grid, out, format,
                         tolerance_profile(tol_s));
    }

    if (c_verify->parsed()) return run_verify(verify_all, family_s);
  } catch (const ParamDomain& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
