#include <cmath>
#include <random>

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include "cgeom/catalog.hpp"
#include "cgeom/error.hpp"
#include "cgeom/surface.hpp"

using namespace cgeom;

namespace {

TangentDirection dir_at(Vec2 p, Vec2 v) { return TangentDirection{p, v, std::nullopt}; }

double second_form(const SurfacePatch& s, const TangentDirection& d) {
  const auto ff = fundamental_forms(s, d.basepoint);
  return d.components.dot(ff.second * d.components);
}

// Gaussian curvature of a graph from its derivatives; independent of the frame code.
double graph_K(double hx, double hy, double hxx, double hxy, double hyy) {
  const double w = 1.0 + hx * hx + hy * hy;
  return (hxx * hyy - hxy * hxy) / (w * w);
}

Mat3 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  return q.toRotationMatrix();
}

// Radius of the circle through three planar points.
double circumradius(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double ab = (a - b).norm(), bc = (b - c).norm(), ca = (c - a).norm();
  const double cross = std::abs((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x());
  return ab * bc * ca / (2.0 * cross);
}

}  // namespace

TEST(Surface, QuadricCurvatures) {
  const auto fp = curvature_data(catalog_surface("f_plus"), Vec2::Zero());
  EXPECT_NEAR(fp.K, 8.0, 1e-12);
  EXPECT_NEAR(std::max(fp.lambda1, fp.lambda2), 4.0, 1e-12);
  EXPECT_NEAR(std::min(fp.lambda1, fp.lambda2), 2.0, 1e-12);

  const auto fm = curvature_data(catalog_surface("f_minus"), Vec2::Zero());
  EXPECT_NEAR(fm.K, -8.0, 1e-12);

  const auto cyl = curvature_data(catalog_surface("cylinder"), Vec2::Zero());
  EXPECT_NEAR(cyl.K, 0.0, 1e-12);
  EXPECT_NEAR(std::abs(cyl.lambda1) + std::abs(cyl.lambda2), 2.0, 1e-12);
}

TEST(Surface, SphereIsUmbilicWithUnitCurvature) {
  const SurfacePatch s = catalog_surface("sphere");
  for (const Vec2 p : {Vec2(0.0, 0.0), Vec2(0.3, -0.2), Vec2(-0.4, 0.1)}) {
    const auto cd = curvature_data(s, p);
    EXPECT_NEAR(cd.K, 1.0, 1e-10);
    EXPECT_NEAR(std::abs(cd.H), 1.0, 1e-10);
    EXPECT_TRUE(cd.umbilic);
  }
}

TEST(Surface, GraphCurvatureMatchesClosedForm) {
  const Field u = Field::u(), v = Field::v();
  const Field h = sin(u) * v + 0.3 * u * u * u + exp(0.2 * v) * u;
  const SurfacePatch s = SurfacePatch::graph(h, Domain{});
  for (const Vec2 p : {Vec2(0.1, 0.2), Vec2(-0.5, 0.7), Vec2(0.8, -0.3)}) {
    const Jet2 j = h.jet(p);
    const double expect =
        graph_K(j.partial(1, 0), j.partial(0, 1), j.partial(2, 0), j.partial(1, 1), j.partial(0, 2));
    EXPECT_NEAR(curvature_data(s, p).K, expect, 1e-10);
  }
}

TEST(Surface, EulerFormulaMatchesNormalCurvature) {
  const SurfacePatch s = catalog_surface("f_plus");
  for (double th : {0.0, 0.4, 1.1, 2.5}) {
    const TangentDirection d = with_principal_angle(s, dir_at(Vec2(0.2, 0.1), Vec2(std::cos(th), std::sin(th))));
    const auto cd = curvature_data(s, d.basepoint);
    EXPECT_NEAR(normal_curvature(s, d), euler_normal_curvature(cd, *d.angle_to_principal), 1e-10);
  }
}

TEST(Surface, AsymptoticDirectionsAnnihilateSecondForm) {
  const SurfacePatch s = catalog_surface("f1");
  for (const Vec2 p : {Vec2(0.0, 0.0), Vec2(0.2, 0.3), Vec2(-0.1, -0.4)}) {
    const auto ad = asymptotic_directions(s, p);
    ASSERT_EQ(ad.directions.size(), 2u);
    const auto ff = fundamental_forms(s, p);
    for (const auto& d : ad.directions) {
      EXPECT_NEAR(second_form(s, d), 0.0, 1e-12);
      EXPECT_NEAR(d.components.dot(ff.first * d.components), 1.0, 1e-12);
    }
  }
  EXPECT_TRUE(asymptotic_directions(catalog_surface("f_plus"), Vec2::Zero()).directions.empty());
  EXPECT_TRUE(asymptotic_directions(SurfacePatch::graph(Field::u() * 0.0, Domain{}), Vec2::Zero()).planar);
}

TEST(Surface, MannheimRadiusMatchesCircleFit) {
  // The contour generator of z = a x^2 + b y^2 seen along v at the origin is
  // the line {2a x v1 + 2b y v2 = 0}; project it orthogonally to V and fit a
  // circle through three nearby points.
  for (const auto& [a, b] : {std::pair{2.0, 1.0}, std::pair{2.0, -1.0}}) {
    const Field u = Field::u(), w = Field::v();
    const SurfacePatch s = SurfacePatch::graph(a * u * u + b * w * w, Domain{});
    for (double th : {0.3, 0.9, 1.4}) {
      const Vec2 v(std::cos(th), std::sin(th));
      const Vec2 line = Vec2(-b * v.y(), a * v.x()).normalized();
      const Vec3 V(v.x(), v.y(), 0.0);
      const Vec3 side = Vec3::UnitZ().cross(V);
      auto projected = [&](double s_) {
        const Vec2 q = s_ * line;
        const Vec3 x(q.x(), q.y(), a * q.x() * q.x() + b * q.y() * q.y());
        return Vec2(x.dot(side), x.z());
      };
      const double eps = 1e-4;
      const double fit = circumradius(projected(-eps), projected(0.0), projected(eps));
      EXPECT_NEAR(mannheim_radius(s, dir_at(Vec2::Zero(), v)), fit, 1e-6 * fit);
    }
  }
}

TEST(Surface, MannheimRadiusRejectsAsymptoticAndParabolic) {
  try {
    (void)mannheim_radius(catalog_surface("f1"), dir_at(Vec2::Zero(), Vec2(0.0, 1.0)));
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_applicable);
  }
  try {
    (void)mannheim_radius(catalog_surface("cylinder"), dir_at(Vec2::Zero(), Vec2(1.0, 1.0).normalized()));
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::division);
  }
}

TEST(Surface, MongeFrameIsAdapted) {
  const Field u = Field::u(), v = Field::v();
  const SurfacePatch s({u + 0.2 * v * v, v - 0.1 * u * v, sin(u) * cos(v) + 0.3 * u * v}, Domain{});
  const TangentDirection d = dir_at(Vec2(0.2, -0.1), Vec2(0.6, 0.8));
  const AdaptedFrame fr = monge_normal_form(s, d);
  const Mat3 E = (Mat3() << fr.e1, fr.e2, fr.e3).finished();
  EXPECT_LT((E.transpose() * E - Mat3::Identity()).norm(), 1e-12);
  EXPECT_NEAR(E.determinant(), 1.0, 1e-12);

  const Jet2Vec3 fj = s.jet(d.basepoint);
  const Vec3 fu = partial(fj, 1, 0), fv = partial(fj, 0, 1);
  const Vec3 V = d.components.x() * fu + d.components.y() * fv;
  EXPECT_NEAR(V.normalized().dot(fr.e2), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(fu.cross(fv).normalized().dot(fr.e3)), 1.0, 1e-12);

  EXPECT_NEAR(fr.monge_jet.value(), 0.0, 1e-14);
  EXPECT_LT(fr.monge_jet.gradient().norm(), 1e-12);
  // The adapted coordinates of f(to_patch(x, y)) are (x, y, h(x, y)).
  for (const Vec2 xy : {Vec2(1e-3, 0.0), Vec2(0.0, -1e-3), Vec2(7e-4, 5e-4)}) {
    const Vec2 q(fr.to_patch.first().evaluate(xy), fr.to_patch.second().evaluate(xy));
    const Vec3 c = fr.coordinates(s, q);
    EXPECT_NEAR(c.x(), xy.x(), 1e-8);
    EXPECT_NEAR(c.y(), xy.y(), 1e-8);
    EXPECT_NEAR(c.z(), fr.monge_jet.evaluate(xy), 1e-8);
  }
}

TEST(Surface, AsymptoticMongeFormHasZeroHyy) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 10; ++k) {
    const SurfacePatch s = catalog_surface("f1").moved(random_rotation(rng), Vec3(0.1, -0.2, 0.3));
    const Vec2 p(0.1, -0.2);
    for (const auto& d : asymptotic_directions(s, p).directions) {
      const AdaptedFrame fr = monge_normal_form(s, d);
      const Jet2& h = fr.monge_jet;
      EXPECT_NEAR(h.partial(0, 2), 0.0, 1e-10);
      EXPECT_NEAR(curvature_data(s, p).K, -h.partial(1, 1) * h.partial(1, 1), 1e-10);
    }
  }
}

TEST(Surface, InvariantUnderMotionsAndReparametrizations) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  const Field s = Field::u(), t = Field::v();
  for (const std::string name : {"f_plus", "f_minus", "f1", "sphere"}) {
    const SurfacePatch base = catalog_surface(name);
    const TangentDirection d = dir_at(Vec2(0.05, 0.1), Vec2(0.6, 0.8));
    const auto cd0 = curvature_data(base, d.basepoint);
    const double kn0 = normal_curvature(base, d);
    for (int k = 0; k < 20; ++k) {
      const Mat3 R = random_rotation(rng);
      const SurfacePatch moved = base.moved(R, Vec3(c(rng), c(rng), c(rng)));
      EXPECT_NEAR(curvature_data(moved, d.basepoint).K, cd0.K, 1e-10 * std::max(1.0, std::abs(cd0.K)));
      EXPECT_NEAR(std::abs(normal_curvature(moved, d)), std::abs(kn0), 1e-10);

      // (u, v) = p + A (s, t) + quadratic terms; the direction transforms by A^{-1}.
      Mat2 A;
      do {
        A << c(rng), c(rng), c(rng), c(rng);
      } while (std::abs(A.determinant()) < 0.3);
      const double q1 = 0.2 * c(rng), q2 = 0.2 * c(rng);
      const Field uu = d.basepoint.x() + A(0, 0) * s + A(0, 1) * t + q1 * s * t;
      const Field vv = d.basepoint.y() + A(1, 0) * s + A(1, 1) * t + q2 * t * t;
      const SurfacePatch rep = base.reparametrized(uu, vv, Domain{Vec2(-0.05, -0.05), Vec2(0.05, 0.05)});
      const TangentDirection d2 = dir_at(Vec2::Zero(), A.inverse() * d.components);
      EXPECT_NEAR(curvature_data(rep, Vec2::Zero()).K, cd0.K, 1e-10 * std::max(1.0, std::abs(cd0.K)));
      EXPECT_NEAR(std::abs(normal_curvature(rep, d2)), std::abs(kn0), 1e-10 * std::max(1.0, std::abs(kn0)));
    }
  }
}

TEST(Surface, CurvatureScalesInversely) {
  const SurfacePatch s = catalog_surface("f1");
  const Vec2 p(0.1, 0.2);
  const double K = curvature_data(s, p).K;
  for (double lam : {0.5, 2.0, 3.0}) {
    EXPECT_NEAR(curvature_data(s.scaled(lam), p).K, K * std::pow(lam, -2.0), 1e-12);
  }
}

TEST(Surface, OutsideDomainThrows) {
  try {
    (void)catalog_surface("f1").jet(Vec2(2.0, 0.0));
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::outside_domain);
  }
}
