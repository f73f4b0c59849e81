#include "cgeom/contour.hpp"

#include <cmath>

#include "cgeom/error.hpp"

namespace cgeom {
namespace {

constexpr int kMaxCorrector = 10;
constexpr double kCorrectorTol = 1e-12;
constexpr double kDegenerateGrad = 1e-8;

Vec2 perp(const Vec2& v) { return {-v.y(), v.x()}; }

double det2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Newton along grad J. Returns false when it does not reach kCorrectorTol.
bool correct(const ViewMap& vm, Vec2& q) {
  for (int it = 0; it <= kMaxCorrector; ++it) {
    if (!vm.domain().contains(q)) return false;
    const Jet2 J = vm.normalized_jacobian(q);
    if (std::abs(J.value()) < kCorrectorTol) return true;
    if (it == kMaxCorrector) break;
    const Vec2 g = J.gradient();
    const double g2 = g.squaredNorm();
    if (g2 == 0.0) return false;
    q -= (J.value() / g2) * g;
  }
  return false;
}

/// Orientation at a regular contour point: first Pi_V coordinate increasing.
Vec2 regular_orientation(const Mat2& dg, Vec2 tangent) {
  const Vec2 image = dg * tangent;
  const double eps = 1e-12 * image.norm();
  if (image.x() < -eps || (std::abs(image.x()) <= eps && image.y() < 0.0)) tangent = -tangent;
  return tangent;
}

Vec2 seed_orientation(const ViewMap& vm, const Vec2& q, const Vec2& tangent) {
  const Mat2 dg = vm.jet(q).linear_part();
  if ((dg * tangent).norm() > 1e-6 * std::max(dg.norm(), 1e-300)) return regular_orientation(dg, tangent);
  return cusp_orientation(vm, q, tangent);
}

Vec2 tangent_at(const ViewMap& vm, const Vec2& q, const Vec2& along) {
  const Vec2 g = vm.normalized_jacobian(q).gradient();
  Vec2 t = perp(g).normalized();
  if (t.dot(along) < 0.0) t = -t;
  return t;
}

double scaled_grad_norm(const ViewMap& vm, const Jet2& J) {
  return J.gradient().norm() * vm.curvature_scale();
}

/// 3D diameter of the traced set (parameter diameter for model germs).
double trace_diameter(const SingularSetTrace& trace, const ViewMap& vm) {
  double d = 0.0;
  const auto& pts = trace.points;
  if (pts.empty()) return 0.0;
  auto embed = [&](const Vec2& q) -> Vec3 {
    if (vm.patch()) return vm.patch()->point(q);
    return {q.x(), q.y(), 0.0};
  };
  const Vec3 first = embed(pts.front());
  const Vec3 last = embed(pts.back());
  const Vec3 seed = embed(pts[trace.seed_index]);
  for (const auto& q : pts) {
    const Vec3 x = embed(q);
    d = std::max({d, (x - first).norm(), (x - last).norm(), (x - seed).norm()});
  }
  return d;
}

}  // namespace

Vec2 cusp_orientation(const ViewMap& vm, const Vec2& q, Vec2 tangent) {
  if (vm.setup() && vm.patch()) {
    const Jet2Vec3 f = vm.patch()->jet(q);
    const Vec3 image = tangent.x() * partial(f, 1, 0) + tangent.y() * partial(f, 0, 1);
    if (image.dot(vm.setup()->frame.e2) < 0.0) tangent = -tangent;
    return tangent;
  }
  if (tangent.y() < 0.0 || (tangent.y() == 0.0 && tangent.x() < 0.0)) tangent = -tangent;
  return tangent;
}

Jet1 singular_set_germ(const AdaptedFrame& frame) {
  const Jet2 J = frame.monge_jet.derivative_v();
  const double Jx = J.coeff(1, 0);
  if (std::abs(Jx) <= 1e-12) {
    throw GeometryError(ErrorKind::parabolic, "h_xy vanishes: the singular set is not a graph over y");
  }
  const int order = J.order();
  const Jet1 y = Jet1::variable(0.0, order);
  Jet1 psi = Jet1::constant(0.0, 0.0, order);
  for (int k = 0; k <= order; ++k) {
    const Jet1 r = jet_compose(J, psi, y);
    psi = psi - r * (1.0 / Jx);
    psi.set_coeff(0, 0.0);
  }
  return psi;
}

SingularSetTrace trace_singular_set(const ViewMap& vm, const Vec2& seed, double arclength_budget, double step) {
  if (!(step > 0.0)) throw GeometryError(ErrorKind::contract, "trace step must be positive");
  SingularSetTrace trace;
  trace.step = step;

  Vec2 q = seed;
  {
    const Jet2 J = vm.normalized_jacobian(q);
    const Vec2 g = J.gradient();
    if (g.squaredNorm() > 0.0) q -= (J.value() / g.squaredNorm()) * g;
    if (!vm.domain().contains(q) || std::abs(vm.normalized_jacobian(q).value()) >= 1e-6) {
      throw GeometryError(ErrorKind::contract, "seed is not on the singular set");
    }
  }
  if (!correct(vm, q)) throw GeometryError(ErrorKind::contract, "could not polish the seed onto J = 0");
  const Jet2 J0 = vm.normalized_jacobian(q);
  if (scaled_grad_norm(vm, J0) < kDegenerateGrad) {
    throw GeometryError(ErrorKind::contract, "grad J vanishes at the seed (degenerate singular point)");
  }
  const Vec2 tangent0 = seed_orientation(vm, q, perp(J0.gradient()).normalized());
  trace.seed_tangent = tangent0;

  auto march = [&](double sign) {
    std::vector<Vec2> out;
    Vec2 cur = q;
    Vec2 dir = sign * tangent0;
    double travelled = 0.0;
    while (travelled + step <= arclength_budget * (1.0 + 1e-12)) {
      double h = step;
      bool accepted = false;
      bool boundary = false;
      for (int halving = 0; halving <= 2; ++halving, h *= 0.5) {
        Vec2 next = cur + h * dir;
        if (!vm.domain().contains(next)) {
          boundary = true;
          break;
        }
        if (correct(vm, next)) {
          cur = next;
          accepted = true;
          if (halving > 0) trace.step_halved = true;
          break;
        }
      }
      if (boundary) break;
      if (!accepted) {
        trace.truncated = true;
        trace.diagnostics.push_back("corrector failed after two step halvings");
        break;
      }
      const Jet2 J = vm.normalized_jacobian(cur);
      out.push_back(cur);
      travelled += h;
      if (scaled_grad_norm(vm, J) < kDegenerateGrad) {
        trace.hit_degenerate = true;
        trace.diagnostics.push_back("grad J vanishes on the path; stopped at a degenerate point");
        break;
      }
      dir = tangent_at(vm, cur, dir);
    }
    return out;
  };

  std::vector<Vec2> backward = march(-1.0);
  std::vector<Vec2> forward = march(1.0);
  trace.points.assign(backward.rbegin(), backward.rend());
  trace.seed_index = trace.points.size();
  trace.points.push_back(q);
  trace.points.insert(trace.points.end(), forward.begin(), forward.end());

  if (vm.setup() && (q - vm.setup()->frame.basepoint).norm() < 1e-9) {
    try {
      trace.psi = singular_set_germ(vm.setup()->frame);
    } catch (const GeometryError&) {
      trace.diagnostics.push_back("h_xy vanishes at the seed: no graph germ psi");
    }
  }
  return trace;
}

PlaneCurvePoint contour_point(const ViewMap& vm, const Vec2& q, const Vec2& along, double regular_tol) {
  const Jet2 J = vm.normalized_jacobian(q);
  const Vec2 g = J.gradient();
  const double gn = g.norm();
  if (gn == 0.0) throw GeometryError(ErrorKind::contract, "grad J vanishes: singular set is not a curve here");
  const Vec2 normal = g / gn;
  Vec2 tangent = perp(normal);
  if (tangent.dot(along) < 0.0) tangent = -tangent;
  // gamma(s) = q + s T + (c / 2) s^2 N solves J(gamma(s)) = 0 through order 2.
  const double c = -tangent.dot(J.hessian() * tangent) / gn;

  const Jet1 x = Jet1::from_coeffs(0.0, {q.x(), tangent.x(), 0.5 * c * normal.x(), 0.0, 0.0}, 3);
  const Jet1 y = Jet1::from_coeffs(0.0, {q.y(), tangent.y(), 0.5 * c * normal.y(), 0.0, 0.0}, 3);
  const JetMap2 gj = vm.jet(q);
  const Jet1 gamma1 = jet_compose(gj.first(), x, y);
  const Jet1 gamma2 = jet_compose(gj.second(), x, y);

  PlaneCurvePoint pt;
  pt.param = q;
  pt.position = {gamma1.value(), gamma2.value()};
  pt.d1 = {gamma1.derivative(1), gamma2.derivative(1)};
  pt.d2 = {gamma1.derivative(2), gamma2.derivative(2)};
  pt.d3 = {gamma1.derivative(3), gamma2.derivative(3)};
  pt.d3_complete = false;
  pt.regular = pt.d1.norm() > regular_tol;
  pt.jacobian = vm.jacobian(q).value();
  return pt;
}

std::vector<PlaneCurvePoint> contour_line(const SingularSetTrace& trace, const ViewMap& vm) {
  std::vector<PlaneCurvePoint> out;
  const auto& pts = trace.points;
  if (pts.empty()) return out;
  const double tol = 1e-6 * std::max(trace_diameter(trace, vm), 1e-12);
  const Vec2& seed = pts[trace.seed_index];

  Vec3 axis = Vec3::Zero();
  Vec3 origin = Vec3::Zero();
  if (vm.patch()) {
    const Jet2Vec3 f = vm.patch()->jet(seed);
    axis = (trace.seed_tangent.x() * partial(f, 1, 0) + trace.seed_tangent.y() * partial(f, 0, 1)).normalized();
    origin = partial(f, 0, 0);
  }

  out.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Vec2 along = trace.seed_tangent;
    if (pts.size() > 1) {
      const Vec2 a = pts[i == 0 ? 0 : i - 1];
      const Vec2 b = pts[i + 1 == pts.size() ? i : i + 1];
      if ((b - a).squaredNorm() > 0.0) along = b - a;
    }
    PlaneCurvePoint pt = contour_point(vm, pts[i], along, tol);
    pt.t = vm.patch() ? (vm.patch()->point(pts[i]) - origin).dot(axis) : (pts[i] - seed).dot(trace.seed_tangent);
    out.push_back(pt);
  }
  return out;
}

double contour_curvature(const PlaneCurvePoint& pt) {
  if (!pt.regular) {
    throw GeometryError(ErrorKind::not_applicable,
                        "contour is singular here (|Gamma'| ~ 0): use the cuspidal curvature");
  }
  const double len = pt.d1.norm();
  const double sign = (pt.d1.x() > 0.0 || (pt.d1.x() == 0.0 && pt.d1.y() > 0.0)) ? 1.0 : -1.0;
  return sign * det2(pt.d1, pt.d2) / (len * len * len);
}

CuspData cuspidal_curvature(const PlaneCurvePoint& pt, double tol) {
  const double n2 = pt.d2.norm();
  if (pt.d1.norm() > tol * std::max(1.0, n2)) {
    throw GeometryError(ErrorKind::contract, "not a singular point of the curve: Gamma' does not vanish");
  }
  if (n2 <= tol) {
    throw GeometryError(ErrorKind::higher_degeneracy, "Gamma'' vanishes: degenerate beyond an ordinary cusp");
  }
  CuspData cusp;
  cusp.param = pt.param;
  cusp.location = pt.position;
  cusp.d2 = pt.d2;
  cusp.d3 = pt.d3;
  cusp.cuspidal_curvature = det2(pt.d2, pt.d3) / std::pow(n2, 2.5);
  return cusp;
}

std::optional<Vec2> locate_cusp(const ViewMap& vm, const Vec2& q0) {
  if (!vm.domain().contains(q0)) return std::nullopt;
  const Mat2 dg0 = vm.jet(q0).linear_part();
  const int row = dg0.row(0).squaredNorm() >= dg0.row(1).squaredNorm() ? 0 : 1;

  Vec2 q = q0;
  for (int it = 0; it < 40; ++it) {
    if (!vm.domain().contains(q)) return std::nullopt;
    const JetMap2 g = vm.jet(q);
    const Jet2 J = vm.normalized_jacobian(q);
    const Jet2 eta_u = -g[row].derivative_v();
    const Jet2 eta_v = g[row].derivative_u();
    const Jet2 J_eta = J.derivative_u() * eta_u + J.derivative_v() * eta_v;

    Mat2 jac;
    jac.row(0) = J.gradient().transpose();
    jac.row(1) = J_eta.gradient().transpose();
    const Vec2 residual(J.value(), J_eta.value());
    const double det = jac.determinant();
    if (!(std::abs(det) > 1e-12 * jac.squaredNorm())) return std::nullopt;
    const Vec2 delta = jac.inverse() * residual;
    q -= delta;
    if (delta.norm() <= 1e-15 * (1.0 + q.norm())) break;
  }
  if (!vm.domain().contains(q)) return std::nullopt;
  if (std::abs(vm.normalized_jacobian(q).value()) > 1e-10) return std::nullopt;
  return q;
}

ContourFeatures detect_features(const SingularSetTrace& trace, const ViewMap& vm,
                                const std::vector<PlaneCurvePoint>& points) {
  ContourFeatures out;
  if (points.empty()) return out;
  const double tol = 1e-6 * std::max(trace_diameter(trace, vm), 1e-12);

  auto add_degenerate = [&](const Vec2& image) {
    for (const auto& d : out.degenerate_images) {
      if ((d - image).norm() <= 1e-9 * (1.0 + image.norm())) return;
    }
    out.degenerate_images.push_back(image);
  };
  auto add_cusp = [&](const CuspData& c) {
    for (const auto& d : out.cusps) {
      if ((d.param - c.param).norm() <= 1e-7) return;
    }
    out.cusps.push_back(c);
  };

  std::vector<double> j_eta(points.size(), 0.0);
  Vec2 prev_eta = Vec2::Zero();
  for (std::size_t i = 0; i < points.size(); ++i) {
    Vec2 eta;
    try {
      eta = null_direction(vm, points[i].param);
    } catch (const GeometryError&) {
      continue;
    }
    if (i > 0 && eta.dot(prev_eta) < 0.0) eta = -eta;
    prev_eta = eta;
    j_eta[i] = vm.normalized_jacobian(points[i].param).gradient().dot(eta);
  }

  for (std::size_t i = 0; i < points.size(); ++i) {
    const bool sign_change = i > 0 && j_eta[i - 1] * j_eta[i] < 0.0;
    if (points[i].regular && !sign_change) continue;
    const Vec2 start = sign_change ? 0.5 * (points[i - 1].param + points[i].param) : points[i].param;
    const std::optional<Vec2> loc = locate_cusp(vm, start);
    if (loc) {
      const Vec2 oriented = cusp_orientation(vm, *loc, perp(vm.normalized_jacobian(*loc).gradient()).normalized());
      const PlaneCurvePoint pt = contour_point(vm, *loc, oriented, tol);
      if (pt.d2.norm() > tol) {
        try {
          add_cusp(cuspidal_curvature(pt, tol));
        } catch (const GeometryError&) {
        }
      } else {
        add_degenerate(pt.position);
      }
    } else if (!points[i].regular && points[i].d2.norm() <= tol) {
      add_degenerate(points[i].position);
    }
  }
  return out;
}

}  // namespace cgeom
