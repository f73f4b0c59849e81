#pragma once

#include <optional>
#include <string>

#include "cgeom/field.hpp"
#include "cgeom/surface.hpp"

namespace cgeom {

inline constexpr double kDefaultTolSing = 1e-8;

/// A plane through origin spanned by an orthonormal pair.
struct Plane {
  Vec3 origin = Vec3::Zero();
  Vec3 b1 = Vec3::UnitX();
  Vec3 b2 = Vec3::UnitY();

  Vec3 normal() const { return b1.cross(b2); }
};

/// Tangent plane T_p, normal plane N_V and view plane Pi_V at f(p).
struct ProjectionSetup {
  AdaptedFrame frame;
  /// V / |V| with V = df_p(v).
  Vec3 view_direction = Vec3::UnitY();
  Plane tangent_plane;   // span(e1, e2)
  Plane normal_plane;    // span(e2, e3)
  Plane view_plane;      // span(e1, e3)
};

ProjectionSetup build_projection(const SurfacePatch& patch, const TangentDirection& dir);

/// Planar map g = (g1, g2) over a parameter rectangle. Built either from a
/// surface (g = coordinates of pi_V o f in the (e1, e3) basis of Pi_V) or
/// directly from two fields (model germs).
class ViewMap {
 public:
  ViewMap(const ProjectionSetup& setup, const SurfacePatch& patch);
  ViewMap(Field g1, Field g2, Domain domain, std::string name = {});

  const Field& component(int k) const { return k == 0 ? g1_ : g2_; }
  const Domain& domain() const { return domain_; }
  const std::string& name() const { return name_; }
  const std::optional<ProjectionSetup>& setup() const { return setup_; }
  const std::optional<SurfacePatch>& patch() const { return patch_; }

  Vec2 image(const Vec2& q) const;
  /// Jet of g at q (order 3).
  JetMap2 jet(const Vec2& q) const;
  /// det(dg) as a jet at q (order 2).
  Jet2 jacobian(const Vec2& q) const;
  /// det(dg) / sqrt(det I): independent of the source parametrization up to
  /// sign. Equals jacobian() for model germs.
  Jet2 normalized_jacobian(const Vec2& q) const;
  /// First fundamental form of the source at q (identity for model germs).
  Mat2 metric(const Vec2& q) const;
  /// Length scale 1 / max|lambda_i| at the setup base point (1 for model germs).
  double curvature_scale() const { return curvature_scale_; }

 private:
  Field g1_;
  Field g2_;
  Domain domain_;
  std::string name_;
  std::optional<ProjectionSetup> setup_;
  std::optional<SurfacePatch> patch_;
  double curvature_scale_ = 1.0;
};

ViewMap view_map(const ProjectionSetup& setup, const SurfacePatch& patch);

enum class SingularityTag { regular, fold, whitney_cusp, degenerate, nondegenerate_unclassified };

const char* to_string(SingularityTag tag);

/// Quantities the classifier tested, in normalized units.
struct SingularityWitness {
  double J = 0.0;
  Vec2 grad_J = Vec2::Zero();
  double grad_norm = 0.0;
  Vec2 eta = Vec2::Zero();
  double eta_J = 0.0;
  double eta_eta_J = 0.0;
};

struct SingularityClass {
  SingularityTag tag = SingularityTag::regular;
  SingularityWitness witness;
};

/// Fold / Whitney cusp test on J, grad J and the null-direction derivatives.
/// A tested value counts as zero below tol_sing, as nonzero above
/// 100 tol_sing; anything in between is reported nondegenerate_unclassified.
SingularityClass classify_singularity(const ViewMap& vm, const Vec2& p, double tol_sing = kDefaultTolSing);

enum class ModelGerm { fold, whitney_cusp };

/// (u, v^2) for fold, (u, v^3 - 3uv) for the Whitney cusp, on [-2, 2]^2.
ViewMap normal_form_model(ModelGerm kind);

/// I-unit kernel vector of dg at q, sign fixed like asymptotic directions.
Vec2 null_direction(const ViewMap& vm, const Vec2& q);

}  // namespace cgeom
