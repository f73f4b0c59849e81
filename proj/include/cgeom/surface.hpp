#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cgeom/field.hpp"
#include "cgeom/jet.hpp"

namespace cgeom {

/// Axis-aligned rectangle in the (u, v) plane.
struct Domain {
  Vec2 lo = Vec2(-1.0, -1.0);
  Vec2 hi = Vec2(1.0, 1.0);

  bool contains(const Vec2& p) const;
  Vec2 center() const { return 0.5 * (lo + hi); }
  double diameter() const { return (hi - lo).norm(); }
};

/// Vector-valued jet: one Jet2 per ambient coordinate.
using Jet2Vec3 = std::array<Jet2, 3>;

Jet2 dot(const Jet2Vec3& a, const Jet2Vec3& b);
Jet2 dot(const Jet2Vec3& a, const Vec3& b);
Jet2Vec3 cross(const Jet2Vec3& a, const Jet2Vec3& b);
Jet2Vec3 derivative_u(const Jet2Vec3& a);
Jet2Vec3 derivative_v(const Jet2Vec3& a);
/// Raw partial derivative vector d^{i+j} / du^i dv^j.
Vec3 partial(const Jet2Vec3& a, int i, int j);

/// Embedding (u, v) -> (f1, f2, f3) of a rectangle into 3-space.
class SurfacePatch {
 public:
  SurfacePatch() = default;
  SurfacePatch(std::array<Field, 3> components, Domain domain, std::string name = {});

  /// Monge patch (u, v, height(u, v)).
  static SurfacePatch graph(const Field& height, Domain domain, std::string name = {});

  const std::array<Field, 3>& components() const { return components_; }
  const Domain& domain() const { return domain_; }
  const std::string& name() const { return name_; }

  /// Throws ErrorKind::outside_domain for points outside the rectangle.
  Jet2Vec3 jet(const Vec2& p) const;
  Vec3 point(const Vec2& p) const;

  /// x -> rotation * x + translation applied to the image.
  SurfacePatch moved(const Mat3& rotation, const Vec3& translation) const;
  SurfacePatch scaled(double s) const;
  /// Pre-composition with (s, t) -> (u(s, t), v(s, t)) defined on new_domain.
  SurfacePatch reparametrized(const Field& u_of_st, const Field& v_of_st, Domain new_domain) const;

 private:
  std::array<Field, 3> components_;
  Domain domain_;
  std::string name_;
};

/// Tangent vector a d/du + b d/dv at a parameter point.
struct TangentDirection {
  Vec2 basepoint = Vec2::Zero();
  Vec2 components = Vec2(0.0, 1.0);
  /// Angle to the lambda1 principal direction, radians in [0, pi).
  std::optional<double> angle_to_principal;
};

struct FundamentalForms {
  Mat2 first;
  Mat2 second;
};

/// First and second fundamental forms as jet fields around p (E, F, G valid
/// to order 2, L, M, N to order 1), plus the unit normal jet.
struct FormJets {
  Jet2 E, F, G;
  Jet2 L, M, N;
  Jet2Vec3 normal;

  FundamentalForms at_base() const;
};

FormJets form_jets(const SurfacePatch& patch, const Vec2& p);
FundamentalForms fundamental_forms(const SurfacePatch& patch, const Vec2& p);

struct CurvatureData {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double K = 0.0;
  double H = 0.0;
  TangentDirection dir1;
  TangentDirection dir2;
  Vec3 normal = Vec3::UnitZ();
  bool umbilic = false;
};

CurvatureData curvature_data(const SurfacePatch& patch, const Vec2& p);

/// Angle between v and dir1 measured in the first fundamental form.
double angle_to_principal(const CurvatureData& cd, const Mat2& first_form, const Vec2& v);
/// dir with angle_to_principal filled in.
TangentDirection with_principal_angle(const SurfacePatch& patch, const TangentDirection& dir);

/// II(v, v) / I(v, v).
double normal_curvature(const SurfacePatch& patch, const TangentDirection& dir);
/// lambda1 cos^2 + lambda2 sin^2.
double euler_normal_curvature(const CurvatureData& cd, double angle_to_principal);

struct AsymptoticDirections {
  /// II vanishes identically at the point: every direction is asymptotic.
  bool planar = false;
  /// I-unit, b >= 0 (then a >= 0), ordered by decreasing polar angle in the
  /// parameter plane.
  std::vector<TangentDirection> directions;
};

AsymptoticDirections asymptotic_directions(const SurfacePatch& patch, const Vec2& p);

/// Curvature radius of the contour line, |sin^2/lambda1 + cos^2/lambda2|.
/// Throws not_applicable for asymptotic directions, division when a principal
/// curvature vanishes.
double mannheim_radius(const SurfacePatch& patch, const TangentDirection& dir);

/// Orthonormal frame adapted to (p, v) with the Monge height of the surface.
struct AdaptedFrame {
  Vec2 basepoint = Vec2::Zero();
  TangentDirection direction;
  Vec3 origin = Vec3::Zero();
  Vec3 e1 = Vec3::UnitX();
  Vec3 e2 = Vec3::UnitY();
  Vec3 e3 = Vec3::UnitZ();
  /// h(x, y) at the origin of the adapted coordinates.
  Jet2 monge_jet;
  /// Adapted coordinates (x, y) -> patch parameters (u, v).
  JetMap2 to_patch;

  /// (f(q) - origin) expressed in (e1, e2, e3).
  Vec3 coordinates(const Vec3& x) const;
  Vec3 coordinates(const SurfacePatch& patch, const Vec2& q) const;
};

AdaptedFrame monge_normal_form(const SurfacePatch& patch, const TangentDirection& dir);

/// Unscaled normal (-h_x, -h_y, 1) of the Monge form as jets at the origin.
Jet2Vec3 normal_field(const AdaptedFrame& frame);

}  // namespace cgeom
