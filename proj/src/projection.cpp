#include "cgeom/projection.hpp"

#include <cmath>

#include "cgeom/error.hpp"

namespace cgeom {
namespace {

Field image_coordinate(const SurfacePatch& patch, const Vec3& origin, const Vec3& axis) {
  Field sum = Field::constant(-origin.dot(axis));
  for (int k = 0; k < 3; ++k) {
    if (axis[k] != 0.0) sum = sum + axis[k] * patch.components()[static_cast<std::size_t>(k)];
  }
  return sum;
}

enum class Decision { zero, nonzero, ambiguous };

Decision decide(double value, double tol) {
  const double a = std::abs(value);
  if (a <= tol) return Decision::zero;
  if (a > 100.0 * tol) return Decision::nonzero;
  return Decision::ambiguous;
}

}  // namespace

ProjectionSetup build_projection(const SurfacePatch& patch, const TangentDirection& dir) {
  ProjectionSetup s;
  s.frame = monge_normal_form(patch, dir);
  const AdaptedFrame& f = s.frame;
  s.view_direction = f.e2;
  s.tangent_plane = {f.origin, f.e1, f.e2};
  s.normal_plane = {f.origin, f.e2, f.e3};
  s.view_plane = {f.origin, f.e1, f.e3};
  return s;
}

ViewMap::ViewMap(const ProjectionSetup& setup, const SurfacePatch& patch)
    : g1_(image_coordinate(patch, setup.frame.origin, setup.frame.e1)),
      g2_(image_coordinate(patch, setup.frame.origin, setup.frame.e3)),
      domain_(patch.domain()),
      name_(patch.name()),
      setup_(setup),
      patch_(patch) {
  const CurvatureData cd = curvature_data(patch, setup.frame.basepoint);
  const double big = std::max(std::abs(cd.lambda1), std::abs(cd.lambda2));
  curvature_scale_ = big > 0.0 ? 1.0 / big : 1.0;
}

ViewMap::ViewMap(Field g1, Field g2, Domain domain, std::string name)
    : g1_(std::move(g1)), g2_(std::move(g2)), domain_(domain), name_(std::move(name)) {}

Vec2 ViewMap::image(const Vec2& q) const { return {g1_.value(q), g2_.value(q)}; }

JetMap2 ViewMap::jet(const Vec2& q) const {
  if (!domain_.contains(q)) {
    throw GeometryError(ErrorKind::outside_domain, "view map queried outside its domain");
  }
  return {g1_.jet(q), g2_.jet(q)};
}

Jet2 ViewMap::jacobian(const Vec2& q) const {
  const JetMap2 g = jet(q);
  return g.first().derivative_u() * g.second().derivative_v() -
         g.first().derivative_v() * g.second().derivative_u();
}

Jet2 ViewMap::normalized_jacobian(const Vec2& q) const {
  if (!patch_) return jacobian(q);
  const FormJets fj = form_jets(*patch_, q);
  const Jet2 det_first = fj.E * fj.G - fj.F * fj.F;
  return jacobian(q) / sqrt(det_first);
}

Mat2 ViewMap::metric(const Vec2& q) const {
  if (!patch_) return Mat2::Identity();
  return fundamental_forms(*patch_, q).first;
}

ViewMap view_map(const ProjectionSetup& setup, const SurfacePatch& patch) { return ViewMap(setup, patch); }

const char* to_string(SingularityTag tag) {
  switch (tag) {
    case SingularityTag::regular: return "regular";
    case SingularityTag::fold: return "fold";
    case SingularityTag::whitney_cusp: return "whitney_cusp";
    case SingularityTag::degenerate: return "degenerate";
    case SingularityTag::nondegenerate_unclassified: return "nondegenerate_unclassified";
  }
  return "unknown";
}

Vec2 null_direction(const ViewMap& vm, const Vec2& q) {
  const Mat2 dg = vm.jet(q).linear_part();
  const Vec2 r0 = dg.row(0).transpose();
  const Vec2 r1 = dg.row(1).transpose();
  const Vec2 row = r0.squaredNorm() >= r1.squaredNorm() ? r0 : r1;
  if (row.squaredNorm() == 0.0) {
    throw GeometryError(ErrorKind::rank, "dg vanishes: no distinguished null direction");
  }
  Vec2 eta(-row.y(), row.x());
  const Mat2 metric = vm.metric(q);
  eta /= std::sqrt(eta.dot(metric * eta));
  const double eps = 1e-14;
  if (eta.y() < -eps || (std::abs(eta.y()) <= eps && eta.x() < 0.0)) eta = -eta;
  return eta;
}

SingularityClass classify_singularity(const ViewMap& vm, const Vec2& p, double tol_sing) {
  if (!vm.domain().contains(p)) {
    throw GeometryError(ErrorKind::outside_domain, "classification point outside the domain");
  }
  const double scale = vm.curvature_scale();  // length unit where |II| ~ 1
  const Jet2 J = vm.normalized_jacobian(p);
  const Mat2 metric = vm.metric(p);

  SingularityClass out;
  SingularityWitness& w = out.witness;
  w.J = J.value();
  w.grad_J = J.gradient();
  w.grad_norm = std::sqrt(w.grad_J.dot(metric.inverse() * w.grad_J)) * scale;

  const Decision singular = decide(w.J, tol_sing);
  if (singular == Decision::nonzero) return out;
  if (singular == Decision::ambiguous) {
    out.tag = SingularityTag::nondegenerate_unclassified;
    return out;
  }

  const Decision nondeg = decide(w.grad_norm, tol_sing);
  if (nondeg != Decision::nonzero) {
    out.tag = nondeg == Decision::zero ? SingularityTag::degenerate : SingularityTag::nondegenerate_unclassified;
    return out;
  }

  w.eta = null_direction(vm, p);
  w.eta_J = w.grad_J.dot(w.eta) * scale;
  w.eta_eta_J = w.eta.dot(J.hessian() * w.eta) * scale * scale;

  switch (decide(w.eta_J, tol_sing)) {
    case Decision::nonzero:
      out.tag = SingularityTag::fold;
      return out;
    case Decision::ambiguous:
      out.tag = SingularityTag::nondegenerate_unclassified;
      return out;
    case Decision::zero:
      break;
  }
  switch (decide(w.eta_eta_J, tol_sing)) {
    case Decision::nonzero: out.tag = SingularityTag::whitney_cusp; break;
    case Decision::ambiguous: out.tag = SingularityTag::nondegenerate_unclassified; break;
    case Decision::zero: out.tag = SingularityTag::degenerate; break;
  }
  return out;
}

ViewMap normal_form_model(ModelGerm kind) {
  const Field u = Field::u();
  const Field v = Field::v();
  const Domain domain{Vec2(-2.0, -2.0), Vec2(2.0, 2.0)};
  if (kind == ModelGerm::fold) {
    return ViewMap(u, Field::polynomial({{0, 2, 1.0}}), domain, "fold_model");
  }
  return ViewMap(u, Field::polynomial({{0, 3, 1.0}, {1, 1, -3.0}}), domain, "whitney_cusp_model");
}

}  // namespace cgeom
