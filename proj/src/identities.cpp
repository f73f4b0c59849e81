#include "cgeom/identities.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "cgeom/contour.hpp"
#include "cgeom/error.hpp"

namespace cgeom {
namespace {

constexpr double kZeroBand = 1e-8;
constexpr double kNonzeroBand = 1e-4;

Verdict band(double normalized) {
  const double a = std::abs(normalized);
  if (a < kZeroBand) return Verdict::no;
  if (a > kNonzeroBand) return Verdict::yes;
  return Verdict::indeterminate;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::yes: return "true";
    case Verdict::no: return "false";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "?";
}

double contour_step(const SurfacePatch& patch, const IdentityOptions& opts) {
  return opts.contour_step > 0.0 ? opts.contour_step : 1e-2 * patch.domain().diameter();
}

bool is_asymptotic(const SurfacePatch& patch, const TangentDirection& dir) {
  const FundamentalForms ff = fundamental_forms(patch, dir.basepoint);
  const Vec2& v = dir.components;
  const double ii = v.dot(ff.second * v);
  const double i = v.dot(ff.first * v);
  return std::abs(ii) <= 1e-10 * std::max(1.0, ff.second.norm()) * i;
}

}  // namespace

const char* to_string(Pipeline p) { return p == Pipeline::closed_form ? "closed_form" : "traced"; }

bool IdentityReport::all_passed() const {
  for (const auto& r : records) {
    if (r.applicable && !r.passed) return false;
  }
  return true;
}

void IdentityReport::append(const IdentityReport& other) {
  records.insert(records.end(), other.records.begin(), other.records.end());
}

IdentityRecord make_record(std::string name, Pipeline pipeline, double left, double right, double tol,
                           std::vector<std::string> provenance) {
  IdentityRecord r;
  r.name = std::move(name);
  r.pipeline = pipeline;
  r.left = left;
  r.right = right;
  r.abs_residual = std::abs(left - right);
  const double mag = std::max(std::abs(left), std::abs(right));
  r.rel_residual = mag > 0.0 ? r.abs_residual / mag : 0.0;
  r.threshold = tol;
  r.passed = r.abs_residual <= tol * std::max(1.0, mag);
  r.provenance = std::move(provenance);
  return r;
}

IdentityRecord inapplicable_record(std::string name, Pipeline pipeline, std::string reason) {
  IdentityRecord r;
  r.name = std::move(name);
  r.pipeline = pipeline;
  r.applicable = false;
  r.reason = std::move(reason);
  return r;
}

std::optional<double> cuspidal_curvature_closed_form(const AdaptedFrame& frame) {
  const double h_xy = frame.monge_jet.partial(1, 1);
  const double h_yyy = frame.monge_jet.partial(0, 3);
  if (h_yyy == 0.0 || h_xy == 0.0) return std::nullopt;
  const double mag = 2.0 * std::pow(std::abs(h_xy), 1.5) / std::sqrt(std::abs(h_yyy));
  return h_xy > 0.0 ? mag : -mag;
}

AsymptoticEvidence collect_evidence(const SurfacePatch& patch, const TangentDirection& dir,
                                    const IdentityOptions& opts) {
  if (!is_asymptotic(patch, dir)) {
    throw GeometryError(ErrorKind::contract, "direction is not asymptotic (II(v, v) != 0)");
  }
  AsymptoticEvidence ev;
  ev.K = curvature_data(patch, dir.basepoint).K;
  const ProjectionSetup setup = build_projection(patch, dir);
  const AdaptedFrame& frame = setup.frame;
  ev.closed = asymptotic_invariants_closed_form(frame);
  ev.omega_closed = cuspidal_curvature_closed_form(frame);

  const double length = 1.0 / std::sqrt(std::abs(ev.K));
  const double fine = 1e-2 * std::min(length, patch.domain().diameter());

  const TangentialCurveGerm germ = trace_tangential_curve(frame, patch, 10.0 * fine);
  ev.alpha_traced = germ.alpha_traced;
  ev.diagnostics.insert(ev.diagnostics.end(), germ.diagnostics.begin(), germ.diagnostics.end());

  const AsymptoticCurve curve = trace_asymptotic_curve(patch, dir, fine, fine);
  const FrenetData fd = curve_curvature_torsion(curve.samples.front().space_jet);
  ev.beta_traced = fd.beta;
  ev.delta_traced = fd.delta_value;
  if (!fd.delta_value) ev.delta_traced = curve.samples.front().geodesic_torsion;

  ev.rho_traced = traced_vertical_torsion(frame, patch, fine);

  const ViewMap vm(setup, patch);
  ev.classification = classify_singularity(vm, dir.basepoint, opts.tol_sing).tag;
  const double step = contour_step(patch, opts);
  try {
    const SingularSetTrace trace = trace_singular_set(vm, dir.basepoint, 3.0 * step, step);
    const auto points = contour_line(trace, vm);
    const ContourFeatures features = detect_features(trace, vm, points);
    for (const auto& c : features.cusps) {
      if ((c.param - dir.basepoint).norm() <= 1e-6 * patch.domain().diameter()) ev.omega_traced = c.cuspidal_curvature;
    }
  } catch (const GeometryError& e) {
    ev.diagnostics.push_back(std::string("contour trace: ") + e.what());
  }
  return ev;
}

IdentityReport check_mdk(const SurfacePatch& patch, const TangentDirection& dir, const IdentityOptions& opts) {
  IdentityReport rep;
  const CurvatureData cd = curvature_data(patch, dir.basepoint);
  const double kappa = normal_curvature(patch, dir);
  const double scale = std::max({1.0, std::abs(cd.lambda1), std::abs(cd.lambda2)});
  if (std::abs(kappa) <= 1e-12 * scale) {
    const std::string why = "asymptotic direction (kappa = 0): the contour has a cusp, see the cusp formulas";
    for (const char* name : {"mdk_abs", "mdk_signed", "mannheim"}) rep.records.push_back(inapplicable_record(name, Pipeline::traced, why));
    return rep;
  }
  if (std::abs(cd.K) <= 1e-12 * scale * scale) {
    for (const char* name : {"mdk_abs", "mdk_signed"}) {
      rep.records.push_back(inapplicable_record(name, Pipeline::traced, "parabolic point (K = 0)"));
    }
  }

  const ProjectionSetup setup = build_projection(patch, dir);
  const ViewMap vm(setup, patch);
  const double step = contour_step(patch, opts);
  const SingularSetTrace trace = trace_singular_set(vm, dir.basepoint, 3.0 * step, step);
  const auto points = contour_line(trace, vm);
  const double mu = contour_curvature(points[trace.seed_index]);

  const std::vector<std::string> prov{"K: surface", "kappa: surface", "mu: contour (traced)"};
  if (rep.records.empty()) {
    rep.records.push_back(make_record("mdk_abs", Pipeline::traced, std::abs(cd.K), std::abs(mu * kappa),
                                      opts.traced_tol, prov));
    rep.records.push_back(make_record("mdk_signed", Pipeline::traced, cd.K, mu * kappa, opts.traced_tol, prov));
  }
  try {
    const double R = mannheim_radius(patch, dir);
    rep.records.push_back(make_record("mannheim", Pipeline::traced, std::abs(mu), 1.0 / R, opts.traced_tol,
                                      {"mu: contour (traced)", "R: surface"}));
  } catch (const GeometryError& e) {
    rep.records.push_back(inapplicable_record("mannheim", Pipeline::traced, e.what()));
  }
  return rep;
}

IdentityReport check_asymptotic_identities(const AsymptoticEvidence& ev, const IdentityOptions& opts) {
  IdentityReport rep;
  const double sk = std::sqrt(std::abs(ev.K));

  struct Operands {
    Pipeline pipeline;
    double tol;
    std::optional<double> alpha;
    double beta;
    std::optional<double> delta;
    double rho;
    std::vector<std::string> prov;
  };
  const std::vector<Operands> sets{
      {Pipeline::closed_form, opts.closed_tol, ev.closed.alpha, ev.closed.beta, ev.closed.delta, ev.closed.rho,
       {"K: surface", "alpha, beta, delta, rho: asymptotic (closed form)"}},
      {Pipeline::traced, opts.traced_tol, ev.alpha_traced, ev.beta_traced, ev.delta_traced, ev.rho_traced,
       {"K: surface", "alpha: asymptotic (tangential curve trace)", "beta, delta: asymptotic (curve trace)",
        "rho: asymptotic (normal section trace)"}},
  };

  for (const auto& s : sets) {
    const bool beta_zero = s.beta / sk < kZeroBand;
    const bool alpha_zero = !s.alpha || std::abs(*s.alpha) / sk < kZeroBand;
    if (!s.alpha) {
      rep.records.push_back(inapplicable_record("horizontal_asymptotic", s.pipeline, "tangential branch not traced"));
    } else if (beta_zero) {
      rep.records.push_back(inapplicable_record("horizontal_asymptotic", s.pipeline, "beta = 0: both sides vanish"));
    } else {
      rep.records.push_back(
          make_record("horizontal_asymptotic", s.pipeline, std::abs(*s.alpha), 2.0 * s.beta / 3.0, s.tol, s.prov));
    }
    if (!s.delta) {
      rep.records.push_back(inapplicable_record("torsion_product", s.pipeline, "torsion undefined"));
      rep.records.push_back(inapplicable_record("beltrami_enneper", s.pipeline, "torsion undefined"));
    } else {
      if (beta_zero) {
        rep.records.push_back(inapplicable_record("torsion_product", s.pipeline, "beta = 0: both sides vanish"));
      } else {
        rep.records.push_back(
            make_record("torsion_product", s.pipeline, 2.0 * s.beta * std::abs(*s.delta), std::abs(s.rho), s.tol, s.prov));
      }
      rep.records.push_back(make_record("beltrami_enneper", s.pipeline, std::abs(*s.delta), sk, s.tol, s.prov));
    }
    if (alpha_zero) {
      rep.records.push_back(inapplicable_record("curvature_from_alpha_rho", s.pipeline, "alpha = 0"));
    } else {
      rep.records.push_back(make_record("curvature_from_alpha_rho", s.pipeline, ev.K,
                                        -s.rho * s.rho / (9.0 * *s.alpha * *s.alpha), s.tol, s.prov));
    }
    if (beta_zero) {
      rep.records.push_back(inapplicable_record("curvature_from_beta_rho", s.pipeline, "beta = 0"));
    } else {
      rep.records.push_back(make_record("curvature_from_beta_rho", s.pipeline, ev.K,
                                        -s.rho * s.rho / (4.0 * s.beta * s.beta), s.tol, s.prov));
    }
  }
  return rep;
}

IdentityReport check_asymptotic_identities(const SurfacePatch& patch, const TangentDirection& dir,
                                           const IdentityOptions& opts) {
  return check_asymptotic_identities(collect_evidence(patch, dir, opts), opts);
}

IdentityReport check_cusp_formulas(const AsymptoticEvidence& ev, const IdentityOptions& opts) {
  IdentityReport rep;
  const double k = std::abs(ev.K);
  const std::string no_cusp = "rho = 0: by the theorem alpha = 0 and the contour has no cusp";
  const bool rho_zero_closed = std::abs(ev.closed.rho) / k < kZeroBand;
  const bool rho_zero_traced = std::abs(ev.rho_traced) / k < kZeroBand;

  auto add = [&](Pipeline p, bool rho_zero, std::optional<double> alpha, std::optional<double> omega, double rho,
                 double tol, std::vector<std::string> prov) {
    if (rho_zero) {
      rep.records.push_back(inapplicable_record("cusp_cubic", p, no_cusp));
      rep.records.push_back(inapplicable_record("cusp_linear", p, no_cusp));
      return;
    }
    if (!omega) {
      rep.records.push_back(inapplicable_record("cusp_cubic", p, "no cusp located on the contour"));
      rep.records.push_back(inapplicable_record("cusp_linear", p, "no cusp located on the contour"));
      return;
    }
    const double w2 = *omega * *omega;
    rep.records.push_back(make_record("cusp_cubic", p, ev.K * ev.K * ev.K, -rho * rho * w2 * w2 / 16.0, tol, prov));
    if (!alpha) {
      rep.records.push_back(inapplicable_record("cusp_linear", p, "tangential branch not traced"));
    } else {
      rep.records.push_back(make_record("cusp_linear", p, ev.K, -0.75 * std::abs(*alpha) * w2, tol, prov));
    }
  };
  add(Pipeline::closed_form, rho_zero_closed, ev.closed.alpha, ev.omega_closed, ev.closed.rho, opts.closed_tol,
      {"K: surface", "alpha, rho: asymptotic (closed form)", "omega: contour (closed form)"});
  add(Pipeline::traced, rho_zero_traced, ev.alpha_traced, ev.omega_traced, ev.rho_traced, opts.traced_tol,
      {"K: surface", "alpha, rho: asymptotic (traces)", "omega: contour (traced cusp)"});
  return rep;
}

IdentityReport check_cusp_formulas(const SurfacePatch& patch, const TangentDirection& dir,
                                   const IdentityOptions& opts) {
  return check_cusp_formulas(collect_evidence(patch, dir, opts), opts);
}

TheoremConditions theorem_conditions(const AsymptoticEvidence& ev) {
  const double sk = std::sqrt(std::abs(ev.K));
  TheoremConditions c;
  c.alpha_nonzero = band(ev.closed.alpha / sk);
  c.rho_nonzero = band(ev.closed.rho / (sk * sk));
  c.contour_cusp = ev.omega_traced ? Verdict::yes : Verdict::no;
  switch (ev.classification) {
    case SingularityTag::whitney_cusp: c.whitney_cusp = Verdict::yes; break;
    case SingularityTag::nondegenerate_unclassified: c.whitney_cusp = Verdict::indeterminate; break;
    default: c.whitney_cusp = Verdict::no; break;
  }
  return c;
}

IdentityReport check_theorem_equivalences(const AsymptoticEvidence& ev) {
  const TheoremConditions c = theorem_conditions(ev);
  const std::array<Verdict, 4> all{c.alpha_nonzero, c.rho_nonzero, c.contour_cusp, c.whitney_cusp};
  std::string detail = std::string("alpha!=0: ") + verdict_name(c.alpha_nonzero) +
                       ", rho!=0: " + verdict_name(c.rho_nonzero) + ", contour cusp: " + verdict_name(c.contour_cusp) +
                       ", whitney cusp: " + verdict_name(c.whitney_cusp);
  IdentityReport rep;
  for (Verdict v : all) {
    if (v == Verdict::indeterminate) {
      rep.records.push_back(inapplicable_record("theorem_equivalence", Pipeline::traced, "indeterminate: " + detail));
      return rep;
    }
  }
  const int yes = static_cast<int>(std::count(all.begin(), all.end(), Verdict::yes));
  IdentityRecord r = make_record("theorem_equivalence", Pipeline::traced, yes, yes >= 2 ? 4.0 : 0.0, 0.0,
                                 {"alpha, rho: asymptotic", "cusp: contour", "class: projection"});
  r.reason = detail;
  rep.records.push_back(r);
  return rep;
}

IdentityReport check_theorem_equivalences(const SurfacePatch& patch, const TangentDirection& dir,
                                          const IdentityOptions& opts) {
  return check_theorem_equivalences(collect_evidence(patch, dir, opts));
}

IdentityReport verify_identities(const SurfacePatch& patch, const TangentDirection& dir,
                                 const IdentityOptions& opts) {
  IdentityReport rep;
  if (!is_asymptotic(patch, dir)) {
    rep.append(check_mdk(patch, dir, opts));
    for (const char* name : {"beltrami_enneper", "cusp_cubic", "cusp_linear", "theorem_equivalence"}) {
      rep.records.push_back(inapplicable_record(name, Pipeline::closed_form, "requires an asymptotic direction"));
    }
    return rep;
  }
  const CurvatureData cd = curvature_data(patch, dir.basepoint);
  rep.append(check_mdk(patch, dir, opts));
  if (!(cd.K < 0.0)) {
    for (const char* name : {"beltrami_enneper", "cusp_cubic", "cusp_linear", "theorem_equivalence"}) {
      rep.records.push_back(inapplicable_record(name, Pipeline::closed_form, "requires K < 0"));
    }
    return rep;
  }
  const AsymptoticEvidence ev = collect_evidence(patch, dir, opts);
  rep.append(check_asymptotic_identities(ev, opts));
  rep.append(check_cusp_formulas(ev, opts));
  rep.append(check_theorem_equivalences(ev));
  return rep;
}

CuspQuadruple reconstruct(CuspQuantity a, double value_a, CuspQuantity b, double value_b) {
  if (a == b) throw GeometryError(ErrorKind::contract, "reconstruction needs two different quantities");
  if (static_cast<int>(a) > static_cast<int>(b)) {
    std::swap(a, b);
    std::swap(value_a, value_b);
  }
  // k = -K, a = |alpha|, w = omega^2, r = |rho|:
  // k = r^2 / (9 a^2), k = 3 a w / 4, k^3 = r^2 w^2 / 16.
  double k = 0.0, al = 0.0, w = 0.0, r = 0.0;
  using Q = CuspQuantity;
  if (a == Q::K && b == Q::alpha) {
    k = std::abs(value_a), al = std::abs(value_b);
    w = 4.0 * k / (3.0 * al);
    r = 3.0 * al * std::sqrt(k);
  } else if (a == Q::K && b == Q::omega) {
    k = std::abs(value_a), w = value_b * value_b;
    al = 4.0 * k / (3.0 * w);
    r = 4.0 * std::pow(k, 1.5) / w;
  } else if (a == Q::K && b == Q::rho) {
    k = std::abs(value_a), r = std::abs(value_b);
    al = r / (3.0 * std::sqrt(k));
    w = 4.0 * std::pow(k, 1.5) / r;
  } else if (a == Q::alpha && b == Q::omega) {
    al = std::abs(value_a), w = value_b * value_b;
    k = 0.75 * al * w;
    r = 3.0 * al * std::sqrt(k);
  } else if (a == Q::alpha && b == Q::rho) {
    al = std::abs(value_a), r = std::abs(value_b);
    k = r * r / (9.0 * al * al);
    w = 4.0 * k / (3.0 * al);
  } else {
    w = value_a * value_a, r = std::abs(value_b);
    k = std::cbrt(r * r * w * w / 16.0);
    al = 4.0 * k / (3.0 * w);
  }
  return {-k, al, std::sqrt(w), r};
}

}  // namespace cgeom
