#include "cgeom/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "cgeom/error.hpp"

namespace cgeom {
namespace {

constexpr double kUmbilicTol = 1e-10;
constexpr double kPlanarTol = 1e-12;
constexpr double kParabolicTol = 1e-10;

double form(const Mat2& m, const Vec2& a, const Vec2& b) { return a.dot(m * b); }

/// Sign convention for principal directions: first component >= 0, then second.
Vec2 normalize_sign_first(Vec2 d) {
  const double eps = 1e-14 * d.norm();
  if (d.x() < -eps || (std::abs(d.x()) <= eps && d.y() < 0.0)) d = -d;
  return d;
}

/// Sign convention for asymptotic directions: second component >= 0, then first.
Vec2 normalize_sign_second(Vec2 d) {
  const double eps = 1e-14 * d.norm();
  if (d.y() < -eps || (std::abs(d.y()) <= eps && d.x() < 0.0)) d = -d;
  return d;
}

Vec2 unit_in(const Mat2& first, const Vec2& d) { return d / std::sqrt(form(first, d, d)); }

}  // namespace

bool Domain::contains(const Vec2& p) const {
  return p.x() >= lo.x() && p.x() <= hi.x() && p.y() >= lo.y() && p.y() <= hi.y();
}

Jet2 dot(const Jet2Vec3& a, const Jet2Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Jet2 dot(const Jet2Vec3& a, const Vec3& b) { return a[0] * b.x() + a[1] * b.y() + a[2] * b.z(); }

Jet2Vec3 cross(const Jet2Vec3& a, const Jet2Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Jet2Vec3 derivative_u(const Jet2Vec3& a) {
  return {a[0].derivative_u(), a[1].derivative_u(), a[2].derivative_u()};
}

Jet2Vec3 derivative_v(const Jet2Vec3& a) {
  return {a[0].derivative_v(), a[1].derivative_v(), a[2].derivative_v()};
}

Vec3 partial(const Jet2Vec3& a, int i, int j) {
  return {a[0].partial(i, j), a[1].partial(i, j), a[2].partial(i, j)};
}

// ---------------------------------------------------------------------------

SurfacePatch::SurfacePatch(std::array<Field, 3> components, Domain domain, std::string name)
    : components_(std::move(components)), domain_(domain), name_(std::move(name)) {}

SurfacePatch SurfacePatch::graph(const Field& height, Domain domain, std::string name) {
  return SurfacePatch({Field::u(), Field::v(), height}, domain, std::move(name));
}

Jet2Vec3 SurfacePatch::jet(const Vec2& p) const {
  if (!domain_.contains(p)) {
    throw GeometryError(ErrorKind::outside_domain, "query point outside the patch domain");
  }
  return {components_[0].jet(p), components_[1].jet(p), components_[2].jet(p)};
}

Vec3 SurfacePatch::point(const Vec2& p) const {
  return {components_[0].value(p), components_[1].value(p), components_[2].value(p)};
}

SurfacePatch SurfacePatch::moved(const Mat3& rotation, const Vec3& translation) const {
  std::array<Field, 3> out;
  for (int r = 0; r < 3; ++r) {
    Field sum = Field::constant(translation[r]);
    for (int c = 0; c < 3; ++c) {
      if (rotation(r, c) != 0.0) sum = sum + rotation(r, c) * components_[static_cast<std::size_t>(c)];
    }
    out[static_cast<std::size_t>(r)] = sum;
  }
  return SurfacePatch(out, domain_, name_);
}

SurfacePatch SurfacePatch::scaled(double s) const { return moved(s * Mat3::Identity(), Vec3::Zero()); }

SurfacePatch SurfacePatch::reparametrized(const Field& u_of_st, const Field& v_of_st,
                                          Domain new_domain) const {
  std::array<Field, 3> out;
  for (std::size_t k = 0; k < 3; ++k) out[k] = components_[k].substitute(u_of_st, v_of_st);
  return SurfacePatch(out, new_domain, name_);
}

// ---------------------------------------------------------------------------

FundamentalForms FormJets::at_base() const {
  FundamentalForms ff;
  ff.first << E.value(), F.value(), F.value(), G.value();
  ff.second << L.value(), M.value(), M.value(), N.value();
  return ff;
}

FormJets form_jets(const SurfacePatch& patch, const Vec2& p) {
  const Jet2Vec3 f = patch.jet(p);
  const Jet2Vec3 fu = derivative_u(f);
  const Jet2Vec3 fv = derivative_v(f);
  const Jet2Vec3 n = cross(fu, fv);
  const Jet2 n2 = dot(n, n);
  const double scale = partial(f, 1, 0).norm() * partial(f, 0, 1).norm();
  if (!(scale > 0.0) || std::sqrt(std::max(n2.value(), 0.0)) <= 1e-12 * scale) {
    throw GeometryError(ErrorKind::degenerate_patch, "f_u x f_v vanishes: not an immersion here");
  }
  const Jet2 inv_len = 1.0 / sqrt(n2);
  const Jet2Vec3 nu = {n[0] * inv_len, n[1] * inv_len, n[2] * inv_len};

  FormJets fj;
  fj.E = dot(fu, fu);
  fj.F = dot(fu, fv);
  fj.G = dot(fv, fv);
  fj.L = dot(derivative_u(fu), nu);
  fj.M = dot(derivative_v(fu), nu);
  fj.N = dot(derivative_v(fv), nu);
  fj.normal = nu;
  return fj;
}

FundamentalForms fundamental_forms(const SurfacePatch& patch, const Vec2& p) {
  return form_jets(patch, p).at_base();
}

CurvatureData curvature_data(const SurfacePatch& patch, const Vec2& p) {
  const FormJets fj = form_jets(patch, p);
  const FundamentalForms ff = fj.at_base();

  CurvatureData cd;
  cd.normal = Vec3(fj.normal[0].value(), fj.normal[1].value(), fj.normal[2].value());
  cd.K = ff.second.determinant() / ff.first.determinant();
  cd.H = 0.5 * (ff.first.inverse() * ff.second).trace();

  Eigen::GeneralizedSelfAdjointEigenSolver<Mat2> solver(ff.second, ff.first);
  const Vec2 lambdas = solver.eigenvalues();  // ascending
  cd.lambda1 = lambdas(1);
  cd.lambda2 = lambdas(0);

  const double scale = std::max({1.0, std::abs(cd.lambda1), std::abs(cd.lambda2)});
  Vec2 d1;
  Vec2 d2;
  if (std::abs(cd.lambda1 - cd.lambda2) <= kUmbilicTol * scale) {
    cd.umbilic = true;
    cd.lambda1 = cd.lambda2 = cd.H;
    d1 = unit_in(ff.first, Vec2(1.0, 0.0));
    const Vec2 w(-ff.first(0, 1), ff.first(0, 0));
    d2 = unit_in(ff.first, w);
  } else {
    d1 = unit_in(ff.first, solver.eigenvectors().col(1));
    d2 = unit_in(ff.first, solver.eigenvectors().col(0));
  }
  cd.dir1 = {p, normalize_sign_first(d1), 0.0};
  cd.dir2 = {p, normalize_sign_first(d2), std::numbers::pi / 2.0};
  return cd;
}

double angle_to_principal(const CurvatureData& cd, const Mat2& first_form, const Vec2& v) {
  const double c1 = form(first_form, v, cd.dir1.components);
  const double c2 = form(first_form, v, cd.dir2.components);
  double theta = std::atan2(c2, c1);
  if (theta < 0.0) theta += std::numbers::pi;
  if (theta >= std::numbers::pi) theta -= std::numbers::pi;
  return theta;
}

TangentDirection with_principal_angle(const SurfacePatch& patch, const TangentDirection& dir) {
  if (dir.components.squaredNorm() == 0.0) {
    throw GeometryError(ErrorKind::contract, "zero tangent direction");
  }
  const CurvatureData cd = curvature_data(patch, dir.basepoint);
  const FundamentalForms ff = fundamental_forms(patch, dir.basepoint);
  TangentDirection out = dir;
  out.angle_to_principal = angle_to_principal(cd, ff.first, dir.components);
  return out;
}

double normal_curvature(const SurfacePatch& patch, const TangentDirection& dir) {
  const Vec2& v = dir.components;
  if (v.squaredNorm() == 0.0) throw GeometryError(ErrorKind::contract, "zero tangent direction");
  const FundamentalForms ff = fundamental_forms(patch, dir.basepoint);
  return form(ff.second, v, v) / form(ff.first, v, v);
}

double euler_normal_curvature(const CurvatureData& cd, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return cd.lambda1 * c * c + cd.lambda2 * s * s;
}

AsymptoticDirections asymptotic_directions(const SurfacePatch& patch, const Vec2& p) {
  const CurvatureData cd = curvature_data(patch, p);
  const FundamentalForms ff = fundamental_forms(patch, p);
  AsymptoticDirections out;

  const double big = std::max(std::abs(cd.lambda1), std::abs(cd.lambda2));
  if (big <= kPlanarTol) {
    out.planar = true;
    return out;
  }
  const Vec2& d1 = cd.dir1.components;
  const Vec2& d2 = cd.dir2.components;
  std::vector<Vec2> dirs;
  if (std::abs(cd.lambda2) <= kParabolicTol * big) {
    dirs.push_back(d2);
  } else if (std::abs(cd.lambda1) <= kParabolicTol * big) {
    dirs.push_back(d1);
  } else if (cd.lambda1 > 0.0 && cd.lambda2 < 0.0) {
    // lambda1 c1^2 + lambda2 c2^2 = 0 in the I-orthonormal principal basis.
    const double a = std::sqrt(-cd.lambda2);
    const double b = std::sqrt(cd.lambda1);
    dirs.push_back(a * d1 + b * d2);
    dirs.push_back(a * d1 - b * d2);
  }

  for (const Vec2& d : dirs) {
    TangentDirection t;
    t.basepoint = p;
    t.components = normalize_sign_second(unit_in(ff.first, d));
    t.angle_to_principal = angle_to_principal(cd, ff.first, t.components);
    out.directions.push_back(t);
  }
  std::sort(out.directions.begin(), out.directions.end(), [](const auto& x, const auto& y) {
    return std::atan2(x.components.y(), x.components.x()) > std::atan2(y.components.y(), y.components.x());
  });
  return out;
}

double mannheim_radius(const SurfacePatch& patch, const TangentDirection& dir) {
  const CurvatureData cd = curvature_data(patch, dir.basepoint);
  const FundamentalForms ff = fundamental_forms(patch, dir.basepoint);
  const double kappa = normal_curvature(patch, dir);
  const double scale = std::max({1.0, std::abs(cd.lambda1), std::abs(cd.lambda2)});
  if (std::abs(kappa) <= 1e-12 * scale) {
    throw GeometryError(ErrorKind::not_applicable,
                        "normal curvature vanishes (asymptotic direction): the contour has a cusp, use the "
                        "cuspidal curvature invariants");
  }
  if (std::abs(cd.lambda1) <= 1e-12 * scale || std::abs(cd.lambda2) <= 1e-12 * scale) {
    throw GeometryError(ErrorKind::division, "a principal curvature vanishes");
  }
  const double theta = dir.angle_to_principal.value_or(angle_to_principal(cd, ff.first, dir.components));
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  return std::abs(s * s / cd.lambda1 + c * c / cd.lambda2);
}

// ---------------------------------------------------------------------------

Vec3 AdaptedFrame::coordinates(const Vec3& x) const {
  const Vec3 d = x - origin;
  return {d.dot(e1), d.dot(e2), d.dot(e3)};
}

Vec3 AdaptedFrame::coordinates(const SurfacePatch& patch, const Vec2& q) const {
  return coordinates(patch.point(q));
}

AdaptedFrame monge_normal_form(const SurfacePatch& patch, const TangentDirection& dir) {
  if (dir.components.squaredNorm() == 0.0) {
    throw GeometryError(ErrorKind::contract, "zero tangent direction");
  }
  const Vec2& p = dir.basepoint;
  const FormJets fj = form_jets(patch, p);
  const Jet2Vec3 f = patch.jet(p);

  AdaptedFrame frame;
  frame.basepoint = p;
  frame.direction = dir;
  frame.origin = partial(f, 0, 0);
  frame.e3 = Vec3(fj.normal[0].value(), fj.normal[1].value(), fj.normal[2].value()).normalized();
  const Vec3 velocity = dir.components.x() * partial(f, 1, 0) + dir.components.y() * partial(f, 0, 1);
  frame.e2 = (velocity - velocity.dot(frame.e3) * frame.e3).normalized();
  frame.e1 = frame.e2.cross(frame.e3);

  const Jet2Vec3 shifted = {f[0] - frame.origin.x(), f[1] - frame.origin.y(), f[2] - frame.origin.z()};
  Jet2 x = dot(shifted, frame.e1);
  Jet2 y = dot(shifted, frame.e2);
  Jet2 z = dot(shifted, frame.e3);
  x.set_coeff(0, 0, 0.0);
  y.set_coeff(0, 0, 0.0);

  frame.to_patch = jet_invert(JetMap2(x, y));
  frame.monge_jet = jet_compose(z, frame.to_patch);
  return frame;
}

Jet2Vec3 normal_field(const AdaptedFrame& frame) {
  const Jet2& h = frame.monge_jet;
  return {-h.derivative_u(), -h.derivative_v(), Jet2::constant(h.base(), 1.0, h.order() - 1)};
}

}  // namespace cgeom
