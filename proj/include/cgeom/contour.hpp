#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cgeom/projection.hpp"

namespace cgeom {

/// Samples of the singular set {J = 0} of a view map.
struct SingularSetTrace {
  std::vector<Vec2> points;
  /// Index of the (polished) seed within points.
  std::size_t seed_index = 0;
  /// Unit tangent of the set at the seed in the parameter plane; points are
  /// ordered along it.
  Vec2 seed_tangent = Vec2(1.0, 0.0);
  /// x = psi(y) in adapted coordinates at the seed, when the view map comes
  /// from a surface and the seed is the setup base point.
  std::optional<Jet1> psi;
  double step = 0.0;
  bool step_halved = false;
  bool truncated = false;
  bool hit_degenerate = false;
  std::vector<std::string> diagnostics;
};

/// Predictor-corrector continuation of J = 0 from seed, in both directions,
/// spending at most arclength_budget (parameter-plane arclength) per
/// direction. Throws ErrorKind::contract when the seed cannot be polished
/// onto the set or grad J vanishes there.
SingularSetTrace trace_singular_set(const ViewMap& vm, const Vec2& seed, double arclength_budget, double step);

/// Germ x = psi(y) of the singular set in adapted coordinates (order 2).
/// Throws ErrorKind::parabolic when h_xy(o) vanishes.
Jet1 singular_set_germ(const AdaptedFrame& frame);

/// A point of the contour line with derivatives of Gamma = g o gamma for a
/// unit-speed (parameter plane) parametrization gamma of the singular set.
struct PlaneCurvePoint {
  Vec2 param = Vec2::Zero();
  Vec2 position = Vec2::Zero();
  Vec2 d1 = Vec2::Zero();
  Vec2 d2 = Vec2::Zero();
  Vec2 d3 = Vec2::Zero();
  /// False when d3 omits the gamma''' term (needs fourth-order surface data);
  /// the omitted part is parallel to d2 at a cusp and to d1 elsewhere.
  bool d3_complete = true;
  bool regular = true;
  /// Coordinate along the 3D tangent of the singular curve at the seed.
  double t = 0.0;
  double jacobian = 0.0;
};

/// Contour point at q on the singular set; the unit tangent is oriented along
/// `along` (parameter plane).
PlaneCurvePoint contour_point(const ViewMap& vm, const Vec2& q, const Vec2& along, double regular_tol);

std::vector<PlaneCurvePoint> contour_line(const SingularSetTrace& trace, const ViewMap& vm);

/// Signed curvature det(G', G'') / |G'|^3 with the curve oriented so that its
/// first Pi_V coordinate increases. Throws not_applicable at a cusp.
double contour_curvature(const PlaneCurvePoint& pt);

struct CuspData {
  Vec2 param = Vec2::Zero();
  Vec2 location = Vec2::Zero();
  double cuspidal_curvature = 0.0;
  Vec2 d2 = Vec2::Zero();
  Vec2 d3 = Vec2::Zero();
};

/// det(G'', G''') / |G''|^{5/2}. Throws contract when pt is regular and
/// higher_degeneracy when G'' vanishes.
CuspData cuspidal_curvature(const PlaneCurvePoint& pt, double tol = 1e-9);

/// Newton on (J, J_eta) from q0. Returns the located cusp parameter point.
std::optional<Vec2> locate_cusp(const ViewMap& vm, const Vec2& q0);

/// Orientation used at a cusp: tangent with df(T) . e2 > 0 (or T.y > 0 for
/// model germs).
Vec2 cusp_orientation(const ViewMap& vm, const Vec2& q, Vec2 tangent);

struct ContourFeatures {
  std::vector<CuspData> cusps;
  /// Images of points where G' and G'' both vanish (e.g. f0).
  std::vector<Vec2> degenerate_images;
};

ContourFeatures detect_features(const SingularSetTrace& trace, const ViewMap& vm,
                                const std::vector<PlaneCurvePoint>& points);

}  // namespace cgeom
