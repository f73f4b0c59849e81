#include "cgeom/asymptotic.hpp"

#include <cmath>
#include <limits>

#include "cgeom/error.hpp"

namespace cgeom {
namespace {

constexpr double kAsymptoticTol = 1e-10;
constexpr double kParabolicTol = 1e-10;
/// Below this curvature (relative to |II|) the Frenet frame is too noisy to
/// use for the torsion; the geodesic torsion takes over.
constexpr double kFrenetMinCurvature = 1e-3;

/// Asymptotic direction at q closest (up to sign) to reference, oriented along it.
std::optional<Vec2> asymptotic_field(const SurfacePatch& patch, const Vec2& q, const Vec2& reference) {
  if (!patch.domain().contains(q)) return std::nullopt;
  const CurvatureData cd = curvature_data(patch, q);
  if (!(cd.K < 0.0)) return std::nullopt;
  const AsymptoticDirections ad = asymptotic_directions(patch, q);
  if (ad.planar || ad.directions.empty()) return std::nullopt;
  const Mat2 first = fundamental_forms(patch, q).first;
  Vec2 best = ad.directions.front().components;
  double best_score = -1.0;
  for (const auto& d : ad.directions) {
    const double score = std::abs(d.components.dot(first * reference));
    if (score > best_score) {
      best_score = score;
      best = d.components;
    }
  }
  if (best.dot(first * reference) < 0.0) best = -best;
  return best;
}

Vec3 jet_values(const Jet2Vec3& a) { return {a[0].value(), a[1].value(), a[2].value()}; }

/// Directional derivative of a vector jet along d at its base.
Vec3 directional_value(const Jet2Vec3& a, const Vec2& d) {
  return d.x() * Vec3(a[0].partial(1, 0), a[1].partial(1, 0), a[2].partial(1, 0)) +
         d.y() * Vec3(a[0].partial(0, 1), a[1].partial(0, 1), a[2].partial(0, 1));
}

AsymptoticSample make_sample(const SurfacePatch& patch, const Vec2& q, const Vec2& t) {
  AsymptoticSample s;
  s.param = q;
  s.tangent = t;
  const FormJets fj = form_jets(patch, q);
  s.K = curvature_data(patch, q).K;

  // tau'' from d/ds II(tau', tau') = 0 and d/ds I(tau', tau') = 0.
  auto quad = [&](const Jet2& A, const Jet2& B, const Jet2& C) {
    const Vec2 dA = A.gradient(), dB = B.gradient(), dC = C.gradient();
    return dA.dot(t) * t.x() * t.x() + 2.0 * dB.dot(t) * t.x() * t.y() + dC.dot(t) * t.y() * t.y();
  };
  const FundamentalForms ff = fj.at_base();
  Mat2 A;
  A.row(0) = (ff.second * t).transpose();
  A.row(1) = (ff.first * t).transpose();
  const Vec2 rhs(-0.5 * quad(fj.L, fj.M, fj.N), -0.5 * quad(fj.E, fj.F, fj.G));
  const Vec2 t2 = A.fullPivLu().solve(rhs);

  const Jet1 x = Jet1::from_coeffs(0.0, {q.x(), t.x(), 0.5 * t2.x(), 0.0, 0.0}, 3);
  const Jet1 y = Jet1::from_coeffs(0.0, {q.y(), t.y(), 0.5 * t2.y(), 0.0, 0.0}, 3);
  const Jet2Vec3 f = patch.jet(q);
  for (int k = 0; k < 3; ++k) s.space_jet[static_cast<std::size_t>(k)] = jet_compose(f[static_cast<std::size_t>(k)], x, y);

  const Vec3 nu = jet_values(fj.normal);
  const Vec3 T = directional_value(f, t);
  s.geodesic_torsion = -directional_value(fj.normal, t).dot(nu.cross(T));
  return s;
}

}  // namespace

AsymptoticInvariants asymptotic_invariants_closed_form(const AdaptedFrame& frame) {
  const Jet2& h = frame.monge_jet;
  const double h_xy = h.partial(1, 1);
  const double h_yy = h.partial(0, 2);
  const double h_yyy = h.partial(0, 3);
  const double scale = std::max({1.0, std::abs(h_xy), std::abs(h.partial(2, 0))});
  if (std::abs(h_yy) > kAsymptoticTol * scale) {
    throw GeometryError(ErrorKind::contract, "frame direction is not asymptotic (h_yy(o) != 0)");
  }
  if (std::abs(h_xy) <= kParabolicTol) {
    throw GeometryError(ErrorKind::parabolic, "h_xy(o) vanishes: parabolic point (K = 0)");
  }
  AsymptoticInvariants inv;
  inv.rho = h_yyy;
  inv.beta = std::abs(h_yyy / (2.0 * h_xy));
  inv.delta = -h_xy;
  inv.alpha = h_yyy / (3.0 * h_xy);
  return inv;
}

double FrenetData::delta() const {
  if (!delta_value) {
    throw GeometryError(ErrorKind::torsion_undefined, "inflection point: r' x r'' vanishes, torsion undefined");
  }
  return *delta_value;
}

FrenetData curve_curvature_torsion(const Vec3& d1, const Vec3& d2, const Vec3& d3, double inflection_tol) {
  const double speed = d1.norm();
  if (speed == 0.0) throw GeometryError(ErrorKind::contract, "singular curve point: r' = 0");
  const Vec3 c = d1.cross(d2);
  FrenetData out;
  out.beta = c.norm() / (speed * speed * speed);
  if (c.norm() > inflection_tol * speed * d2.norm()) out.delta_value = c.dot(d3) / c.squaredNorm();
  return out;
}

FrenetData curve_curvature_torsion(const std::array<Jet1, 3>& curve, double inflection_tol) {
  auto d = [&](int k) { return Vec3(curve[0].derivative(k), curve[1].derivative(k), curve[2].derivative(k)); };
  return curve_curvature_torsion(d(1), d(2), d(3), inflection_tol);
}

double sample_torsion_magnitude(const AsymptoticSample& sample) {
  const FrenetData fd = curve_curvature_torsion(sample.space_jet);
  if (fd.delta_value && fd.beta > kFrenetMinCurvature * std::sqrt(std::abs(sample.K))) {
    return std::abs(*fd.delta_value);
  }
  return std::abs(sample.geodesic_torsion);
}

AsymptoticCurve trace_asymptotic_curve(const SurfacePatch& patch, const TangentDirection& start, double budget,
                                       double step) {
  AsymptoticCurve curve;
  const double h = step > 0.0 ? step : 1e-3 * patch.domain().diameter();
  curve.step = h;

  Vec2 q = start.basepoint;
  const std::optional<Vec2> t0 = asymptotic_field(patch, q, start.components);
  if (!t0) {
    throw GeometryError(ErrorKind::not_applicable, "no asymptotic direction at the start point (K >= 0)");
  }
  Vec2 t = *t0;
  curve.samples.push_back(make_sample(patch, q, t));

  const int steps = static_cast<int>(std::floor(budget / h + 1e-9));
  for (int i = 0; i < steps; ++i) {
    const auto k1 = asymptotic_field(patch, q, t);
    const auto k2 = k1 ? asymptotic_field(patch, q + 0.5 * h * *k1, *k1) : std::nullopt;
    const auto k3 = k2 ? asymptotic_field(patch, q + 0.5 * h * *k2, *k2) : std::nullopt;
    const auto k4 = k3 ? asymptotic_field(patch, q + h * *k3, *k3) : std::nullopt;
    if (!k4) {
      curve.truncated = true;
      curve.diagnostics.push_back("left the hyperbolic region or the domain (K >= 0 encountered)");
      break;
    }
    const Vec2 next = q + (h / 6.0) * (*k1 + 2.0 * *k2 + 2.0 * *k3 + *k4);
    const auto tn = asymptotic_field(patch, next, t);
    if (!tn) {
      curve.truncated = true;
      curve.diagnostics.push_back("left the hyperbolic region or the domain (K >= 0 encountered)");
      break;
    }
    q = next;
    t = *tn;
    curve.samples.push_back(make_sample(patch, q, t));
  }
  return curve;
}

std::optional<Vec3> solve_on_surface(const AdaptedFrame& frame, const SurfacePatch& patch, int a, double value_a,
                                     int b, double value_b, Vec2 guess) {
  const Mat3 basis = (Mat3() << frame.e1.transpose(), frame.e2.transpose(), frame.e3.transpose()).finished();
  // Converged when the Newton step reaches roundoff. A residual test alone
  // would stop early where the system is ill conditioned (near o, grad z ~ 0).
  double previous = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 60; ++it) {
    if (!patch.domain().contains(guess)) return std::nullopt;
    const Jet2Vec3 f = patch.jet(guess);
    const Vec3 c = basis * (partial(f, 0, 0) - frame.origin);
    const Vec3 cu = basis * partial(f, 1, 0);
    const Vec3 cv = basis * partial(f, 0, 1);
    const Vec2 residual(c[a] - value_a, c[b] - value_b);
    if (residual.squaredNorm() == 0.0) return c;
    Mat2 jac;
    jac << cu[a], cv[a], cu[b], cv[b];
    const Eigen::FullPivLU<Mat2> lu(jac);
    if (!lu.isInvertible()) return std::nullopt;
    const Vec2 delta = lu.solve(residual);
    const double step = delta.norm();
    const bool stalled = it >= 3 && step >= 0.5 * previous;
    guess -= delta;
    if (step <= 1e-16 * (1.0 + guess.norm()) || stalled) {
      if (step > 1e-12 * (1.0 + guess.norm())) return std::nullopt;
      const Jet2Vec3 g = patch.jet(guess);
      return Vec3(basis * (partial(g, 0, 0) - frame.origin));
    }
    previous = step;
  }
  return std::nullopt;
}

TangentialCurveGerm trace_tangential_curve(const AdaptedFrame& frame, const SurfacePatch& patch, double budget) {
  const Jet2& h = frame.monge_jet;
  const double c11 = h.coeff(1, 1);
  const double scale = std::max({1.0, std::abs(c11), std::abs(h.coeff(2, 0))});
  if (std::abs(h.coeff(0, 2)) > kAsymptoticTol * scale) {
    throw GeometryError(ErrorKind::contract, "frame direction is not asymptotic (h_yy(o) != 0)");
  }
  if (std::abs(c11) <= kParabolicTol) {
    throw GeometryError(ErrorKind::parabolic, "h_xy(o) vanishes: the zero set of h is not a transversal pair");
  }
  TangentialCurveGerm germ;
  const double xi2 = -h.coeff(0, 3) / c11;
  germ.xi = Jet1::from_coeffs(0.0, {0.0, 0.0, xi2, 0.0, 0.0}, 2);
  // sigma = (t, -xi) in the (e2, -e1) frame: curvature -xi''(0).
  germ.alpha_closed = -2.0 * xi2;

  auto branch_point = [&](double t, const Vec2& guess) {
    return solve_on_surface(frame, patch, 1, t, 2, 0.0, guess);
  };
  auto guess_for = [&](double t) {
    const Vec2 offset(xi2 * t * t, t);
    return Vec2(frame.to_patch.first().evaluate(offset), frame.to_patch.second().evaluate(offset));
  };

  const int n = 50;
  const double dt = budget / n;
  for (double sign : {-1.0, 1.0}) {
    std::vector<Vec2> side;
    for (int k = 1; k <= n; ++k) {
      const double t = sign * k * dt;
      const auto c = branch_point(t, guess_for(t));
      if (!c) {
        germ.diagnostics.push_back("branch continuation stopped near y = " + std::to_string(t));
        break;
      }
      side.emplace_back(c->x(), c->y());
    }
    if (sign < 0.0) {
      germ.samples.assign(side.rbegin(), side.rend());
      germ.samples.emplace_back(0.0, 0.0);
    } else {
      germ.samples.insert(germ.samples.end(), side.begin(), side.end());
    }
  }

  // xi''(0) by central differences at spacings s, 2s, 4s, two Richardson levels.
  const double s = 1e-3 / std::max(1.0, std::abs(c11));
  std::array<double, 3> d{};
  for (std::size_t level = 0; level < d.size(); ++level) {
    const double sl = s * static_cast<double>(1 << level);
    double sum = 0.0;
    for (double t : {sl, -sl}) {
      const auto c = branch_point(t, guess_for(t));
      if (!c) {
        germ.diagnostics.push_back("branch tracing failed near o: germ only");
        return germ;
      }
      sum += c->x();
    }
    d[level] = sum / (sl * sl);
  }
  const double r1 = (4.0 * d[0] - d[1]) / 3.0;
  const double r2 = (4.0 * d[1] - d[2]) / 3.0;
  germ.alpha_traced = -(16.0 * r1 - r2) / 15.0;
  return germ;
}

Jet1 normal_section(const AdaptedFrame& frame) {
  const Jet2& h = frame.monge_jet;
  const Jet1 x = Jet1::constant(0.0, 0.0, h.order());
  const Jet1 y = Jet1::variable(0.0, h.order());
  return jet_compose(h, x, y);
}

double vertical_torsion(const Jet1& section) {
  const double z1 = section.derivative(1);
  const double z2 = section.derivative(2);
  const double z3 = section.derivative(3);
  const double w = 1.0 + z1 * z1;
  return (z3 * w - 3.0 * z1 * z2 * z2) / (w * w * w);
}

double traced_vertical_torsion(const AdaptedFrame& frame, const SurfacePatch& patch, double h) {
  std::array<double, 9> z{};  // z(k h) for k = -4..4
  for (int k = -4; k <= 4; ++k) {
    const double t = k * h;
    const Vec2 guess(frame.to_patch.first().evaluate(Vec2(0.0, t)), frame.to_patch.second().evaluate(Vec2(0.0, t)));
    const auto c = solve_on_surface(frame, patch, 0, 0.0, 1, t, guess);
    if (!c) throw GeometryError(ErrorKind::contract, "normal section could not be traced near o");
    z[static_cast<std::size_t>(k + 4)] = c->z();
  }
  auto at = [&](int k) { return z[static_cast<std::size_t>(k + 4)]; };
  auto d1 = [&](int m) { return (at(m) - at(-m)) / (2.0 * m * h); };
  auto d2 = [&](int m) { return (at(m) - 2.0 * at(0) + at(-m)) / (m * m * h * h); };
  auto d3 = [&](int m) {
    const double hm = m * h;
    return (at(2 * m) - 2.0 * at(m) + 2.0 * at(-m) - at(-2 * m)) / (2.0 * hm * hm * hm);
  };
  const double z1 = (4.0 * d1(1) - d1(2)) / 3.0;
  const double z2 = (4.0 * d2(1) - d2(2)) / 3.0;
  const double z3 = (4.0 * d3(1) - d3(2)) / 3.0;
  return vertical_torsion(Jet1::from_coeffs(0.0, {0.0, z1, 0.5 * z2, z3 / 6.0, 0.0}, 3));
}

}  // namespace cgeom
