#include <cmath>

#include <gtest/gtest.h>

#include "cgeom/catalog.hpp"
#include "cgeom/contour.hpp"
#include "cgeom/error.hpp"

using namespace cgeom;

namespace {

ViewMap catalog_view(const std::string& name) {
  const SurfacePatch s = catalog_surface(name);
  const TangentDirection d{Vec2::Zero(), catalog_default_direction(name), std::nullopt};
  return view_map(build_projection(s, d), s);
}

struct Traced {
  SingularSetTrace trace;
  std::vector<PlaneCurvePoint> points;
};

Traced traced(const ViewMap& vm, double budget = 0.5, double step = 0.01) {
  Traced t{trace_singular_set(vm, Vec2::Zero(), budget, step), {}};
  t.points = contour_line(t.trace, vm);
  return t;
}

PlaneCurvePoint cusp_point(Vec2 d2, Vec2 d3) {
  PlaneCurvePoint p;
  p.d2 = d2;
  p.d3 = d3;
  p.regular = false;
  return p;
}

}  // namespace

TEST(Contour, F1ContourIsSemicubical) {
  // h = xy + y^3 seen along d/dy: generator x = -3 y^2, image (x, h) = (-3y^2, -2y^3).
  const Traced t = traced(catalog_view("f1"));
  ASSERT_GT(t.points.size(), 20u);
  for (const auto& p : t.points) {
    EXPECT_NEAR(p.param.x(), -3.0 * p.param.y() * p.param.y(), 1e-10);
    EXPECT_NEAR(p.position.x(), -3.0 * p.t * p.t, 1e-9);
    EXPECT_NEAR(p.position.y(), -2.0 * p.t * p.t * p.t, 1e-9);
  }
}

TEST(Contour, FPlusContourIsParabola) {
  const Traced t = traced(catalog_view("f_plus"));
  for (const auto& p : t.points) {
    EXPECT_NEAR(p.param.y(), 0.0, 1e-10);
    EXPECT_NEAR(p.position.y(), 2.0 * p.position.x() * p.position.x(), 1e-9);
    EXPECT_TRUE(p.regular);
  }
}

TEST(Contour, F0ContourCollapses) {
  // The singular set x = 0 is a regular curve, but its whole image is one point.
  const Traced t = traced(catalog_view("f0"));
  ASSERT_GT(t.points.size(), 20u);
  for (const auto& p : t.points) EXPECT_LT(p.position.norm(), 1e-10);
}

TEST(Contour, DegenerateSeedRejected) {
  // (u, v^3): J = 3 v^2 has a vanishing gradient all along J = 0.
  const ViewMap vm(Field::u(), pow(Field::v(), 3), Domain{});
  try {
    (void)trace_singular_set(vm, Vec2::Zero(), 0.5, 0.01);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::contract);
  }
}

TEST(Contour, MeusnierCurvatureOnQuadrics) {
  for (const std::string name : {"f_plus", "f_minus"}) {
    const Traced t = traced(catalog_view(name));
    EXPECT_NEAR(contour_curvature(t.points[t.trace.seed_index]), 4.0, 1e-9) << name;
  }
  const Traced c = traced(catalog_view("cylinder"));
  EXPECT_NEAR(contour_curvature(c.points[c.trace.seed_index]), 0.0, 1e-12);
}

TEST(Contour, CuspidalCurvatureOfModelCurves) {
  // (t^2, t^3) at 0.
  EXPECT_NEAR(std::abs(cuspidal_curvature(cusp_point(Vec2(2.0, 0.0), Vec2(0.0, 6.0))).cuspidal_curvature),
              3.0 / std::sqrt(2.0), 1e-12);
  // Cycloid a (t - sin t, 1 - cos t) at 0: G'' = (0, a), G''' = (a, 0).
  for (double a : {0.5, 1.0, 4.0}) {
    EXPECT_NEAR(std::abs(cuspidal_curvature(cusp_point(Vec2(0.0, a), Vec2(a, 0.0))).cuspidal_curvature),
                1.0 / std::sqrt(a), 1e-12);
  }
  try {
    (void)cuspidal_curvature(cusp_point(Vec2(0.0, 0.0), Vec2(1.0, 0.0)));
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::higher_degeneracy);
  }
}

TEST(Contour, F1CuspDetected) {
  const ViewMap vm = catalog_view("f1");
  const Traced t = traced(vm);
  const ContourFeatures feats = detect_features(t.trace, vm, t.points);
  ASSERT_EQ(feats.cusps.size(), 1u);
  EXPECT_LT(feats.cusps[0].param.norm(), 1e-9);
  // (-3t^2, -2t^3): det((-6, 0), (0, -12)) / 6^{5/2}.
  EXPECT_NEAR(std::abs(feats.cusps[0].cuspidal_curvature), 72.0 / std::pow(6.0, 2.5), 1e-8);
  EXPECT_TRUE(feats.degenerate_images.empty());
  try {
    (void)contour_curvature(t.points[t.trace.seed_index]);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_applicable);
  }
}

TEST(Contour, QuadricsHaveNoFeatures) {
  for (const std::string name : {"f_plus", "f_minus"}) {
    const ViewMap vm = catalog_view(name);
    const Traced t = traced(vm);
    const ContourFeatures feats = detect_features(t.trace, vm, t.points);
    EXPECT_TRUE(feats.cusps.empty()) << name;
    EXPECT_TRUE(feats.degenerate_images.empty()) << name;
  }
}

TEST(Contour, F0DegenerateImageReported) {
  const ViewMap vm = catalog_view("f0");
  const Traced t = traced(vm);
  const ContourFeatures feats = detect_features(t.trace, vm, t.points);
  EXPECT_TRUE(feats.cusps.empty());
  ASSERT_EQ(feats.degenerate_images.size(), 1u);
  EXPECT_LT(feats.degenerate_images[0].norm(), 1e-10);
}

TEST(Contour, SingularSetGerm) {
  const SurfacePatch s = catalog_surface("f1");
  const AdaptedFrame fr = monge_normal_form(s, TangentDirection{Vec2::Zero(), Vec2(0.0, 1.0), std::nullopt});
  const Jet1 psi = singular_set_germ(fr);
  EXPECT_NEAR(psi.derivative(1), 0.0, 1e-14);
  EXPECT_NEAR(psi.derivative(2), -6.0, 1e-12);
  const Traced t = traced(catalog_view("f1"));
  ASSERT_TRUE(t.trace.psi.has_value());
  EXPECT_NEAR(t.trace.psi->derivative(2), -6.0, 1e-12);

  const SurfacePatch fp = catalog_surface("f_plus");
  try {
    (void)singular_set_germ(monge_normal_form(fp, TangentDirection{Vec2::Zero(), Vec2(0.0, 1.0), std::nullopt}));
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parabolic);
  }
}

TEST(Contour, TraceSpacingAndOrder) {
  const double step = 0.02;
  const Traced t = traced(catalog_view("f1"), 0.4, step);
  const Vec2 T = t.trace.seed_tangent;
  for (std::size_t k = 1; k < t.trace.points.size(); ++k) {
    const Vec2 d = t.trace.points[k] - t.trace.points[k - 1];
    EXPECT_GT(d.norm(), 0.25 * step);
    EXPECT_LT(d.norm(), 1.05 * step);
    EXPECT_GT(d.dot(T), 0.0);
  }
  EXPECT_NEAR(t.trace.points[t.trace.seed_index].norm(), 0.0, 1e-12);
}

TEST(Contour, TraceStopsAtBoundary) {
  const Traced t = traced(catalog_view("f_plus"), 10.0, 0.05);
  EXPECT_FALSE(t.trace.truncated);
  for (const auto& q : t.trace.points) EXPECT_LE(std::abs(q.x()), 1.0 + 1e-12);
  EXPECT_GT(std::abs(t.trace.points.front().x()), 0.95);
  EXPECT_GT(std::abs(t.trace.points.back().x()), 0.95);
}

TEST(Contour, LocateCuspOnModel) {
  const ViewMap vm = normal_form_model(ModelGerm::whitney_cusp);
  const auto q = locate_cusp(vm, Vec2(0.02, 0.1));
  ASSERT_TRUE(q.has_value());
  EXPECT_LT(q->norm(), 1e-10);
  EXPECT_FALSE(locate_cusp(normal_form_model(ModelGerm::fold), Vec2(0.0, 0.0)).has_value());
}
