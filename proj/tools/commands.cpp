#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cgeom/catalog.hpp"
#include "cgeom/contour.hpp"
#include "cgeom/error.hpp"
#include "cgeom/identities.hpp"
#include "spec_io.hpp"
#include "svg.hpp"

namespace cgeom::cli {
namespace {

using ojson = nlohmann::ordered_json;

IdentityOptions identity_options(const GlobalOptions& g) {
  IdentityOptions o;
  o.closed_tol = g.tol_identity;
  o.traced_tol = std::max(1e-6, g.tol_identity);
  o.tol_sing = g.tol_sing;
  return o;
}

ojson value_entry(double v, const char* unit) { return ojson{{"value", v}, {"unit", unit}}; }

ojson null_entry(const std::string& reason, const char* unit) {
  return ojson{{"value", nullptr}, {"unit", unit}, {"reason", reason}};
}

ojson vec_json(const Vec2& v) { return ojson::array({v.x(), v.y()}); }

ojson record_json(const IdentityRecord& r) {
  ojson j;
  j["name"] = r.name;
  j["pipeline"] = to_string(r.pipeline);
  j["applicable"] = r.applicable;
  if (r.applicable) {
    j["left"] = r.left;
    j["right"] = r.right;
    j["abs_residual"] = r.abs_residual;
    j["rel_residual"] = r.rel_residual;
    j["threshold"] = r.threshold;
    j["passed"] = r.passed;
  }
  if (!r.reason.empty()) j["reason"] = r.reason;
  j["provenance"] = r.provenance;
  return j;
}

bool load(const std::string& path, SurfaceSpec& spec, std::ostream& err) {
  try {
    spec = load_spec(path);
    return true;
  } catch (const SpecError& e) {
    if (e.line() > 0) {
      err << path << ':' << e.line() << ':' << e.column() << ": parse error: " << e.what() << '\n';
    } else {
      err << path << ": invalid spec: " << e.what() << '\n';
    }
    return false;
  }
}

Vec2 default_point(const SurfaceSpec& spec) {
  if (spec.point) return *spec.point;
  return spec.domain.contains(Vec2::Zero()) ? Vec2::Zero() : spec.domain.center();
}

Vec2 default_direction(const SurfaceSpec& spec) {
  return spec.kind == "catalog" ? catalog_default_direction(spec.name) : Vec2(0.0, 1.0);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string short_fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

struct ContourRun {
  SingularSetTrace trace;
  std::vector<PlaneCurvePoint> points;
  ContourFeatures features;
};

ContourRun run_contour(const ViewMap& vm, const Vec2& seed, double budget, double step) {
  ContourRun r;
  r.trace = trace_singular_set(vm, seed, budget, step);
  r.points = contour_line(r.trace, vm);
  r.features = detect_features(r.trace, vm, r.points);
  return r;
}

}  // namespace

int cmd_analyze(const AnalyzeArgs& args, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  SurfaceSpec spec;
  if (!load(args.spec_path, spec, err)) return kExitParse;
  const IdentityOptions iopts = identity_options(g);
  try {
    const SurfacePatch patch = build_patch(spec);
    const Vec2 p = args.point.value_or(default_point(spec));
    if (!patch.domain().contains(p)) {
      err << "point (" << p.x() << ", " << p.y() << ") is outside the domain\n";
      return kExitInapplicable;
    }
    const CurvatureData cd = curvature_data(patch, p);

    TangentDirection dir;
    dir.basepoint = p;
    if (args.asymptotic) {
      const int k = *args.asymptotic;
      const AsymptoticDirections ad = asymptotic_directions(patch, p);
      if (ad.planar) {
        err << "planar point: every direction is asymptotic, choose one with --direction\n";
        return kExitInapplicable;
      }
      if (static_cast<int>(ad.directions.size()) < k) {
        if (cd.K > 0.0) err << "no asymptotic direction: K > 0\n";
        else err << "only " << ad.directions.size() << " asymptotic direction(s) at this point\n";
        return kExitInapplicable;
      }
      dir = ad.directions[static_cast<std::size_t>(k - 1)];
    } else {
      dir.components = args.direction.value_or(default_direction(spec));
    }
    dir = with_principal_angle(patch, dir);

    ojson report;
    report["schema_version"] = kReportSchemaVersion;
    report["tool_version"] = kToolVersion;
    report["surface"] = {{"id", patch.name()}, {"spec", spec_to_json(spec)}};
    report["point"] = vec_json(p);
    report["direction"] = vec_json(dir.components);
    report["tolerances"] = {{"tol_sing", g.tol_sing},
                            {"tol_identity_closed_form", iopts.closed_tol},
                            {"tol_identity_traced", iopts.traced_tol}};

    ojson inv;
    inv["K"] = value_entry(cd.K, "1/length^2");
    inv["H"] = value_entry(cd.H, "1/length");
    inv["lambda1"] = value_entry(cd.lambda1, "1/length");
    inv["lambda2"] = value_entry(cd.lambda2, "1/length");
    const double kappa = normal_curvature(patch, dir);
    inv["kappa"] = value_entry(kappa, "1/length");

    const ProjectionSetup setup = build_projection(patch, dir);
    const ViewMap vm(setup, patch);
    const SingularityClass cls = classify_singularity(vm, p, g.tol_sing);

    const double step = 1e-2 * patch.domain().diameter();
    std::optional<ContourRun> contour;
    std::string contour_error;
    try {
      contour = run_contour(vm, p, 3.0 * step, step);
    } catch (const GeometryError& e) {
      contour_error = e.what();
    }
    if (!contour) {
      inv["mu"] = null_entry("contour not traceable at p: " + contour_error, "1/length");
    } else {
      const PlaneCurvePoint& pt = contour->points[contour->trace.seed_index];
      if (pt.regular) inv["mu"] = value_entry(contour_curvature(pt), "1/length");
      else inv["mu"] = null_entry("contour is singular at p (see omega)", "1/length");
    }
    try {
      inv["R"] = value_entry(mannheim_radius(patch, dir), "length");
    } catch (const GeometryError& e) {
      inv["R"] = null_entry(e.what(), "length");
    }

    std::optional<AsymptoticEvidence> ev;
    ojson traced;
    std::string asym_reason = "direction is not asymptotic";
    if (std::abs(kappa) <= 1e-12 * std::max({1.0, std::abs(cd.lambda1), std::abs(cd.lambda2)})) {
      if (cd.K < 0.0) {
        ev = collect_evidence(patch, dir, iopts);
      } else {
        asym_reason = "requires K < 0";
      }
    }
    if (ev) {
      inv["alpha"] = value_entry(ev->closed.alpha, "1/length");
      inv["beta"] = value_entry(ev->closed.beta, "1/length");
      inv["delta"] = value_entry(ev->closed.delta, "1/length");
      inv["rho"] = value_entry(ev->closed.rho, "1/length^2");
      if (ev->omega_closed) inv["omega"] = value_entry(*ev->omega_closed, "1/length^(1/2)");
      else inv["omega"] = null_entry("rho = 0: the contour has no cusp", "1/length^(1/2)");
      traced["alpha"] = ev->alpha_traced ? ojson(*ev->alpha_traced) : ojson(nullptr);
      traced["beta"] = ev->beta_traced;
      traced["delta"] = ev->delta_traced ? ojson(*ev->delta_traced) : ojson(nullptr);
      traced["rho"] = ev->rho_traced;
      traced["omega"] = ev->omega_traced ? ojson(*ev->omega_traced) : ojson(nullptr);
    } else {
      for (const char* name : {"alpha", "beta", "delta"}) inv[name] = null_entry(asym_reason, "1/length");
      inv["rho"] = null_entry(asym_reason, "1/length^2");
      inv["omega"] = null_entry(asym_reason, "1/length^(1/2)");
    }
    report["invariants"] = inv;
    if (ev) report["traced_invariants"] = traced;

    ojson sing;
    sing["tag"] = to_string(cls.tag);
    sing["witness"] = {{"J", cls.witness.J},
                       {"grad_norm", cls.witness.grad_norm},
                       {"eta", vec_json(cls.witness.eta)},
                       {"eta_J", cls.witness.eta_J},
                       {"eta_eta_J", cls.witness.eta_eta_J}};
    report["singularity"] = sing;
    if (contour) {
      ojson cusps = ojson::array();
      for (const auto& c : contour->features.cusps) {
        cusps.push_back({{"param", vec_json(c.param)},
                         {"image", vec_json(c.location)},
                         {"cuspidal_curvature", c.cuspidal_curvature}});
      }
      report["contour_cusps"] = cusps;
    }

    const IdentityReport ids = verify_identities(patch, dir, iopts);
    ojson table = ojson::array();
    for (const auto& r : ids.records) table.push_back(record_json(r));
    report["identities"] = table;
    report["all_identities_passed"] = ids.all_passed();

    out << report.dump(2) << '\n';
    return kExitOk;
  } catch (const GeometryError& e) {
    err << "inapplicable: " << e.what() << " [" << to_string(e.kind()) << "]\n";
    return kExitInapplicable;
  }
}

int cmd_contour(const ContourArgs& args, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  (void)g;
  SurfaceSpec spec;
  if (!load(args.spec_path, spec, err)) return kExitParse;
  const SurfacePatch patch = build_patch(spec);
  const Vec2 p = args.point.value_or(default_point(spec));
  TangentDirection dir;
  dir.basepoint = p;
  dir.components = args.direction.value_or(default_direction(spec));
  const double diameter = patch.domain().diameter();
  const double budget = args.budget.value_or(diameter);
  const double step = args.step.value_or(1e-2 * diameter);

  ContourRun run;
  std::string failure;
  std::optional<ViewMap> vm;
  try {
    const ProjectionSetup setup = build_projection(patch, dir);
    vm.emplace(setup, patch);
    run = run_contour(*vm, p, budget, step);
    if (run.trace.truncated) {
      for (const auto& d : run.trace.diagnostics) failure += d + "; ";
    }
  } catch (const GeometryError& e) {
    failure = e.what();
  }

  if (!args.csv_path.empty()) {
    std::ofstream csv(args.csv_path);
    if (!csv) {
      err << "cannot write '" << args.csv_path << "'\n";
      return kExitParse;
    }
    csv << "t,u,v,x_Pi,z_Pi,J,regular_flag\n";
    for (const auto& pt : run.points) {
      csv << fmt(pt.t) << ',' << fmt(pt.param.x()) << ',' << fmt(pt.param.y()) << ',' << fmt(pt.position.x()) << ','
          << fmt(pt.position.y()) << ',' << fmt(pt.jacobian) << ',' << (pt.regular ? 1 : 0) << '\n';
    }
  }
  if (!args.svg_path.empty() && vm) {
    std::ofstream svg(args.svg_path);
    if (!svg) {
      err << "cannot write '" << args.svg_path << "'\n";
      return kExitParse;
    }
    svg << render_figure(*vm, run.points, run.features, patch.name());
  }

  out << "surface: " << patch.name() << "\n";
  out << "points: " << run.points.size() << "\n";
  for (const auto& c : run.features.cusps) {
    out << "cusp: param (" << fmt(c.param.x()) << ", " << fmt(c.param.y()) << ") image (" << fmt(c.location.x())
        << ", " << fmt(c.location.y()) << ") cuspidal_curvature " << fmt(c.cuspidal_curvature) << "\n";
  }
  for (const auto& d : run.features.degenerate_images) {
    out << "degenerate image: (" << fmt(d.x()) << ", " << fmt(d.y()) << ")\n";
  }
  if (!failure.empty()) {
    err << "tracing failed: " << failure << "\n";
    return kExitFailed;
  }
  return kExitOk;
}

int cmd_verify(const VerifyArgs& args, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  struct Case {
    std::string label;
    SurfacePatch patch;
    std::vector<TangentDirection> dirs;
  };
  std::vector<Case> cases;
  if (args.spec_path) {
    SurfaceSpec spec;
    if (!load(*args.spec_path, spec, err)) return kExitParse;
    const SurfacePatch patch = build_patch(spec);
    const Vec2 p = default_point(spec);
    std::vector<TangentDirection> dirs;
    TangentDirection d;
    d.basepoint = p;
    d.components = default_direction(spec);
    dirs.push_back(d);
    try {
      for (const auto& a : asymptotic_directions(patch, p).directions) {
        if (std::abs(a.components.normalized().dot(d.components.normalized())) < 1.0 - 1e-12) dirs.push_back(a);
      }
    } catch (const GeometryError&) {
    }
    cases.push_back({patch.name(), patch, dirs});
  }
  if (args.random) {
    std::mt19937_64 rng(g.seed);
    for (int i = 0; i < *args.random; ++i) {
      TangentDirection d;
      d.components = Vec2(0.0, 1.0);
      cases.push_back({"random_" + std::to_string(i), random_cubic_monge(rng), {d}});
    }
  }
  if (cases.empty()) {
    err << "verify needs a spec file or --random N\n";
    return kExitParse;
  }

  const IdentityOptions iopts = identity_options(g);
  struct Worst {
    double abs = 0.0;
    double rel = 0.0;
    int checked = 0;
    int failed = 0;
    int inapplicable = 0;
  };
  std::map<std::pair<std::string, std::string>, Worst> table;
  ojson all = ojson::array();
  bool ok = true;
  for (const auto& c : cases) {
    for (const auto& d : c.dirs) {
      ojson entry;
      entry["case"] = c.label;
      entry["point"] = vec_json(d.basepoint);
      entry["direction"] = vec_json(d.components);
      IdentityReport rep;
      try {
        rep = verify_identities(c.patch, d, iopts);
      } catch (const GeometryError& e) {
        rep.records.push_back(inapplicable_record("all", Pipeline::closed_form, e.what()));
      }
      ojson recs = ojson::array();
      for (const auto& r : rep.records) {
        Worst& w = table[{r.name, to_string(r.pipeline)}];
        if (r.applicable) {
          ++w.checked;
          w.abs = std::max(w.abs, r.abs_residual);
          w.rel = std::max(w.rel, r.rel_residual);
          if (!r.passed) ++w.failed, ok = false;
        } else {
          ++w.inapplicable;
        }
        recs.push_back(record_json(r));
      }
      entry["records"] = recs;
      all.push_back(entry);
    }
  }

  char line[160];
  std::snprintf(line, sizeof line, "%-26s %-12s %8s %8s %8s %12s %12s\n", "identity", "pipeline", "checked", "failed",
                "n/a", "worst_abs", "worst_rel");
  out << line;
  for (const auto& [key, w] : table) {
    std::snprintf(line, sizeof line, "%-26s %-12s %8d %8d %8d %12s %12s\n", key.first.c_str(), key.second.c_str(),
                  w.checked, w.failed, w.inapplicable, w.checked ? short_fmt(w.abs).c_str() : "-",
                  w.checked ? short_fmt(w.rel).c_str() : "-");
    out << line;
  }
  out << (ok ? "all applicable identities passed\n" : "FAILED: some identities exceeded their thresholds\n");

  if (args.json_path) {
    std::ofstream js(*args.json_path);
    if (!js) {
      err << "cannot write '" << *args.json_path << "'\n";
      return kExitParse;
    }
    ojson doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["tool_version"] = kToolVersion;
    doc["seed"] = g.seed;
    doc["tolerances"] = {{"tol_identity_closed_form", iopts.closed_tol}, {"tol_identity_traced", iopts.traced_tol}};
    doc["cases"] = all;
    doc["passed"] = ok;
    js << doc.dump(2) << '\n';
  }
  return ok ? kExitOk : kExitFailed;
}

int cmd_figures(const std::string& out_dir, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  (void)g;
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    err << "cannot create output directory '" << out_dir << "'\n";
    return kExitParse;
  }
  const std::vector<std::pair<std::string, std::string>> figures{
      {"fig1_fplus", "f_plus"}, {"fig1_fminus", "f_minus"}, {"fig2_f0", "f0"}, {"fig2_f1", "f1"}};
  for (const auto& [file, surface] : figures) {
    const SurfacePatch patch = catalog_surface(surface);
    TangentDirection dir;
    dir.components = catalog_default_direction(surface);
    const ViewMap vm(build_projection(patch, dir), patch);
    const double diameter = patch.domain().diameter();
    const ContourRun run = run_contour(vm, Vec2::Zero(), diameter, 1e-2 * diameter);
    const std::string path = (std::filesystem::path(out_dir) / (file + ".svg")).string();
    std::ofstream svg(path);
    if (!svg) {
      err << "cannot write '" << path << "'\n";
      return kExitParse;
    }
    svg << render_figure(vm, run.points, run.features, surface);
    svg.close();
    if (!svg) {
      err << "cannot write '" << path << "'\n";
      return kExitParse;
    }
    out << path << "\n";
  }
  return kExitOk;
}

namespace {

std::function<std::string(std::string&)> pair_validator() {
  return [](std::string& s) -> std::string {
    const auto comma = s.find(',');
    if (comma == std::string::npos) return "expected two comma-separated numbers";
    try {
      std::size_t used = 0;
      std::stod(s.substr(0, comma), &used);
      std::stod(s.substr(comma + 1), &used);
    } catch (const std::exception&) {
      return "expected two comma-separated numbers";
    }
    return {};
  };
}

std::optional<Vec2> to_pair(const std::string& s) {
  if (s.empty()) return std::nullopt;
  const auto comma = s.find(',');
  return Vec2(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
}

}  // namespace

int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Surface, projection and contour invariants: analysis, tracing, identity checks, figures"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  app.add_option("--tol-sing", g.tol_sing, "Zero threshold of the singularity classifier")->check(CLI::PositiveNumber);
  app.add_option("--tol-identity", g.tol_identity, "Closed-form identity residual threshold")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for --random case generation");

  AnalyzeArgs an;
  std::string an_point, an_dir;
  CLI::App* analyze = app.add_subcommand("analyze", "Invariant report (JSON) at a point and direction");
  analyze->add_option("spec", an.spec_path, "Surface spec (JSON)")->required();
  analyze->add_option("--point", an_point, "u,v")->check(CLI::Validator(pair_validator(), "U,V"));
  auto* dir_opt = analyze->add_option("--direction", an_dir, "a,b")->check(CLI::Validator(pair_validator(), "A,B"));
  int asym = 0;
  analyze->add_option("--asymptotic", asym, "Use asymptotic direction 1 or 2")
      ->check(CLI::Range(1, 2))
      ->excludes(dir_opt);

  ContourArgs co;
  std::string co_point, co_dir;
  double co_budget = 0.0, co_step = 0.0;
  CLI::App* contour = app.add_subcommand("contour", "Trace the contour line; write CSV and SVG");
  contour->add_option("spec", co.spec_path, "Surface spec (JSON)")->required();
  contour->add_option("--point", co_point, "u,v")->check(CLI::Validator(pair_validator(), "U,V"));
  contour->add_option("--direction", co_dir, "a,b")->check(CLI::Validator(pair_validator(), "A,B"));
  contour->add_option("--budget", co_budget, "Arclength budget per direction")->check(CLI::PositiveNumber);
  contour->add_option("--step", co_step, "Continuation step")->check(CLI::PositiveNumber);
  contour->add_option("--svg", co.svg_path, "SVG output path");
  contour->add_option("--csv", co.csv_path, "CSV output path");

  VerifyArgs ve;
  std::string ve_spec, ve_json;
  int ve_random = 0;
  CLI::App* verify = app.add_subcommand("verify", "Check every applicable identity");
  verify->add_option("spec", ve_spec, "Surface spec (JSON)");
  verify->add_option("--random", ve_random, "Number of random cubic Monge patches")->check(CLI::PositiveNumber);
  verify->add_option("--json", ve_json, "Write all records as JSON");

  std::string fig_out = "figures";
  CLI::App* figures = app.add_subcommand("figures", "Write the four reference figures");
  figures->add_option("--out", fig_out, "Output directory");

  std::vector<const char*> cargv;
  for (const auto& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  if (analyze->parsed()) {
    an.point = to_pair(an_point);
    an.direction = to_pair(an_dir);
    if (asym > 0) an.asymptotic = asym;
    return cmd_analyze(an, g, out, err);
  }
  if (contour->parsed()) {
    co.point = to_pair(co_point);
    co.direction = to_pair(co_dir);
    if (co_budget > 0.0) co.budget = co_budget;
    if (co_step > 0.0) co.step = co_step;
    return cmd_contour(co, g, out, err);
  }
  if (verify->parsed()) {
    if (!ve_spec.empty()) ve.spec_path = ve_spec;
    if (ve_random > 0) ve.random = ve_random;
    if (!ve_json.empty()) ve.json_path = ve_json;
    return cmd_verify(ve, g, out, err);
  }
  return cmd_figures(fig_out, g, out, err);
}

}  // namespace cgeom::cli
