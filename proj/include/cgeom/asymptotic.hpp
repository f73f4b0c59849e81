#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cgeom/surface.hpp"

namespace cgeom {

struct AsymptoticInvariants {
  double alpha = 0.0;  // horizontal curvature, 1/length
  double beta = 0.0;   // asymptotic curvature, 1/length
  double delta = 0.0;  // asymptotic torsion, 1/length
  double rho = 0.0;    // vertical torsion, 1/length^2
};

/// rho = h_yyy, beta = |h_yyy / (2 h_xy)|, delta = -h_xy, alpha = h_yyy / (3 h_xy).
/// Throws contract when the frame direction is not asymptotic, parabolic when
/// h_xy(o) vanishes.
AsymptoticInvariants asymptotic_invariants_closed_form(const AdaptedFrame& frame);

/// Curvature and torsion of a space curve from its first three derivatives.
struct FrenetData {
  double beta = 0.0;
  std::optional<double> delta_value;

  /// Throws ErrorKind::torsion_undefined at an inflection.
  double delta() const;
};

/// beta = |r' x r''| / |r'|^3, delta = det(r', r'', r''') / |r' x r''|^2.
/// Torsion is left undefined when |r' x r''| <= inflection_tol |r'| |r''|.
FrenetData curve_curvature_torsion(const Vec3& d1, const Vec3& d2, const Vec3& d3, double inflection_tol = 1e-9);
FrenetData curve_curvature_torsion(const std::array<Jet1, 3>& curve, double inflection_tol = 1e-9);

struct AsymptoticSample {
  Vec2 param = Vec2::Zero();
  /// I-unit asymptotic tangent in the parameter plane.
  Vec2 tangent = Vec2::Zero();
  /// f o tau around this sample (arclength parameter, order 3).
  std::array<Jet1, 3> space_jet;
  double K = 0.0;
  /// Torsion of the geodesic frame, -<d nu / ds, nu x T>; equals the Frenet
  /// torsion of an asymptotic curve wherever the latter is defined.
  double geodesic_torsion = 0.0;
};

struct AsymptoticCurve {
  std::vector<AsymptoticSample> samples;
  double step = 0.0;
  bool truncated = false;
  std::vector<std::string> diagnostics;
};

/// RK4 on the asymptotic direction field from start (the asymptotic direction
/// nearest to start.components), arclength parametrized, over at most budget.
/// step <= 0 selects 1e-3 times the domain diameter.
AsymptoticCurve trace_asymptotic_curve(const SurfacePatch& patch, const TangentDirection& start, double budget,
                                       double step = 0.0);

/// |delta| at a sample: Frenet torsion where the curve is curved enough to
/// fix a Frenet frame, the geodesic torsion otherwise.
double sample_torsion_magnitude(const AsymptoticSample& sample);

/// Branch of {h = 0} tangent to the y axis: sigma(t) = (xi(t), t).
struct TangentialCurveGerm {
  /// xi as a jet at t = 0 (order 2: xi(0) = xi'(0) = 0).
  Jet1 xi;
  /// Adapted (x, y) coordinates of traced branch points, ordered by y.
  std::vector<Vec2> samples;
  /// Horizontal curvature in the oriented tangent plane, (v, nu x v) positive.
  double alpha_closed = 0.0;
  std::optional<double> alpha_traced;
  std::vector<std::string> diagnostics;
};

TangentialCurveGerm trace_tangential_curve(const AdaptedFrame& frame, const SurfacePatch& patch, double budget);

/// z(y) = h(0, y): the section by the normal plane span(e2, e3), order 3.
Jet1 normal_section(const AdaptedFrame& frame);

/// Arclength derivative of the curvature of the graph z(y) at y = 0.
double vertical_torsion(const Jet1& section);

/// rho from the section traced on the patch (Newton on the plane constraint)
/// and Richardson-extrapolated differences with base spacing h.
double traced_vertical_torsion(const AdaptedFrame& frame, const SurfacePatch& patch, double h);

/// Adapted coordinates of the surface point with coordinate a fixed to
/// value_a and coordinate b fixed to value_b (indices into (x, y, z)),
/// found by Newton from guess. Empty when Newton fails.
std::optional<Vec3> solve_on_surface(const AdaptedFrame& frame, const SurfacePatch& patch, int a, double value_a,
                                     int b, double value_b, Vec2 guess);

}  // namespace cgeom
