#include <cmath>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "cgeom/catalog.hpp"
#include "cgeom/error.hpp"
#include "cgeom/identities.hpp"

using namespace cgeom;

namespace {

TangentDirection along_y() { return TangentDirection{Vec2::Zero(), Vec2(0.0, 1.0), std::nullopt}; }

const IdentityRecord* find(const IdentityReport& rep, const std::string& name, Pipeline p) {
  for (const auto& r : rep.records) {
    if (r.name == name && r.pipeline == p) return &r;
  }
  return nullptr;
}

SurfacePatch cubic_family(double c) {
  const Field u = Field::u(), v = Field::v();
  return SurfacePatch::graph(u * v + c * pow(v, 3), Domain{Vec2(-0.5, -0.5), Vec2(0.5, 0.5)});
}

}  // namespace

TEST(Identities, RecordResiduals) {
  const IdentityRecord r = make_record("x", Pipeline::traced, 2.0, 2.0 + 1e-7, 1e-6, {});
  EXPECT_NEAR(r.abs_residual, 1e-7, 1e-15);
  EXPECT_NEAR(r.rel_residual, 1e-7 / (2.0 + 1e-7), 1e-15);
  EXPECT_TRUE(r.passed);
  EXPECT_FALSE(make_record("x", Pipeline::traced, 0.0, 2e-6, 1e-6, {}).passed);
  const IdentityRecord na = inapplicable_record("x", Pipeline::closed_form, "why");
  EXPECT_FALSE(na.applicable);
  EXPECT_TRUE(na.passed);
}

TEST(Identities, F1TableOnBothPipelines) {
  const IdentityReport rep = verify_identities(catalog_surface("f1"), along_y());
  EXPECT_TRUE(rep.all_passed());
  for (const std::string name : {"horizontal_asymptotic", "torsion_product", "beltrami_enneper",
                                 "curvature_from_alpha_rho", "curvature_from_beta_rho", "cusp_cubic",
                                 "cusp_linear"}) {
    for (Pipeline p : {Pipeline::closed_form, Pipeline::traced}) {
      const IdentityRecord* r = find(rep, name, p);
      ASSERT_NE(r, nullptr) << name << " " << to_string(p);
      EXPECT_TRUE(r->applicable) << name << " " << to_string(p);
      EXPECT_TRUE(r->passed) << name << " " << to_string(p) << " " << r->abs_residual;
    }
  }
  const IdentityRecord* th = find(rep, "theorem_equivalence", Pipeline::traced);
  ASSERT_NE(th, nullptr);
  EXPECT_EQ(th->left, 4.0);
  EXPECT_TRUE(th->passed);
  const IdentityRecord* mdk = find(rep, "mdk_abs", Pipeline::traced);
  ASSERT_NE(mdk, nullptr);
  EXPECT_FALSE(mdk->applicable);
}

TEST(Identities, F1Evidence) {
  const AsymptoticEvidence ev = collect_evidence(catalog_surface("f1"), along_y());
  EXPECT_NEAR(ev.K, -1.0, 1e-12);
  ASSERT_TRUE(ev.alpha_traced && ev.delta_traced && ev.omega_traced && ev.omega_closed);
  EXPECT_NEAR(std::abs(*ev.alpha_traced), 2.0, 1e-6);
  EXPECT_NEAR(ev.beta_traced, 3.0, 1e-6);
  EXPECT_NEAR(std::abs(*ev.delta_traced), 1.0, 1e-6);
  EXPECT_NEAR(std::abs(ev.rho_traced), 6.0, 1e-6);
  EXPECT_NEAR(std::abs(*ev.omega_traced), std::sqrt(2.0 / 3.0), 1e-6);
  EXPECT_NEAR(std::abs(*ev.omega_closed), std::sqrt(2.0 / 3.0), 1e-12);
  EXPECT_EQ(ev.classification, SingularityTag::whitney_cusp);
}

TEST(Identities, F0InapplicableEntries) {
  const IdentityReport rep = verify_identities(catalog_surface("f0"), along_y());
  EXPECT_TRUE(rep.all_passed());
  for (Pipeline p : {Pipeline::closed_form, Pipeline::traced}) {
    for (const std::string name : {"horizontal_asymptotic", "torsion_product", "curvature_from_alpha_rho",
                                   "curvature_from_beta_rho", "cusp_cubic", "cusp_linear"}) {
      const IdentityRecord* r = find(rep, name, p);
      ASSERT_NE(r, nullptr) << name;
      EXPECT_FALSE(r->applicable) << name << " " << to_string(p);
    }
    const IdentityRecord* be = find(rep, "beltrami_enneper", p);
    ASSERT_NE(be, nullptr);
    EXPECT_TRUE(be->applicable);
    EXPECT_TRUE(be->passed);
  }
  const IdentityRecord* th = find(rep, "theorem_equivalence", Pipeline::traced);
  ASSERT_NE(th, nullptr);
  EXPECT_EQ(th->left, 0.0);
  EXPECT_TRUE(th->passed);
}

TEST(Identities, MeusnierOnQuadricsAndSphere) {
  for (const std::string name : {"f_plus", "f_minus", "sphere"}) {
    const IdentityReport rep = check_mdk(catalog_surface(name), along_y());
    ASSERT_EQ(rep.records.size(), 3u) << name;
    for (const auto& r : rep.records) {
      EXPECT_TRUE(r.applicable) << name << " " << r.name << " " << r.reason;
      EXPECT_TRUE(r.passed) << name << " " << r.name << " " << r.abs_residual;
    }
  }
  const IdentityReport sphere = verify_identities(catalog_surface("sphere"), along_y());
  EXPECT_TRUE(sphere.all_passed());
  const IdentityRecord* cc = find(sphere, "cusp_cubic", Pipeline::closed_form);
  ASSERT_NE(cc, nullptr);
  EXPECT_FALSE(cc->applicable);
}

TEST(Identities, ReconstructionFromAnyPair) {
  // f1 at the origin: K = -1, alpha = 2, omega = sqrt(2/3), rho = 6.
  const std::map<CuspQuantity, double> truth{{CuspQuantity::K, -1.0},
                                             {CuspQuantity::alpha, 2.0},
                                             {CuspQuantity::omega, std::sqrt(2.0 / 3.0)},
                                             {CuspQuantity::rho, 6.0}};
  int pairs = 0;
  for (const auto& [a, va] : truth) {
    for (const auto& [b, vb] : truth) {
      if (static_cast<int>(a) >= static_cast<int>(b)) continue;
      const CuspQuadruple q = reconstruct(a, va, b, vb);
      EXPECT_NEAR(q.K, -1.0, 1e-12);
      EXPECT_NEAR(q.alpha, 2.0, 1e-12);
      EXPECT_NEAR(q.omega, std::sqrt(2.0 / 3.0), 1e-12);
      EXPECT_NEAR(q.rho, 6.0, 1e-12);
      ++pairs;
    }
  }
  EXPECT_EQ(pairs, 6);
  EXPECT_THROW(reconstruct(CuspQuantity::K, -1.0, CuspQuantity::K, -1.0), GeometryError);
}

TEST(Identities, CubicFamilySweep) {
  for (double c : {-3.0, -1.0, -0.25, 0.1, 0.5, 2.0, 4.0}) {
    const IdentityReport rep = verify_identities(cubic_family(c), along_y());
    for (const auto& r : rep.records) {
      EXPECT_TRUE(r.passed) << "c=" << c << " " << r.name << " " << to_string(r.pipeline) << " "
                            << r.abs_residual;
    }
    const IdentityRecord* th = find(rep, "theorem_equivalence", Pipeline::traced);
    ASSERT_NE(th, nullptr);
    EXPECT_EQ(th->left, 4.0) << c;
  }
}

TEST(Identities, RandomCubicPatches) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 30; ++k) {
    const SurfacePatch s = random_cubic_monge(rng);
    const IdentityReport rep = verify_identities(s, along_y());
    for (const auto& r : rep.records) {
      EXPECT_TRUE(r.passed) << k << " " << r.name << " " << to_string(r.pipeline) << " " << r.rel_residual;
    }
  }
}

TEST(Identities, QuarticHasNoCuspCondition) {
  // h = xy + y^4: alpha = rho = 0 and the contour (-4y^3, -3y^4) has no ordinary cusp.
  const Field u = Field::u(), v = Field::v();
  const SurfacePatch s = SurfacePatch::graph(u * v + pow(v, 4), Domain{Vec2(-0.5, -0.5), Vec2(0.5, 0.5)});
  const AsymptoticEvidence ev = collect_evidence(s, along_y());
  const TheoremConditions c = theorem_conditions(ev);
  EXPECT_EQ(c.alpha_nonzero, Verdict::no);
  EXPECT_EQ(c.rho_nonzero, Verdict::no);
  EXPECT_EQ(c.contour_cusp, Verdict::no);
  EXPECT_EQ(c.whitney_cusp, Verdict::no);
  const IdentityReport rep = check_theorem_equivalences(ev);
  ASSERT_EQ(rep.records.size(), 1u);
  EXPECT_TRUE(rep.records[0].passed);
}

TEST(Identities, NearBoundaryIsIndeterminate) {
  // rho / |K| = 6c in the band (1e-8, 1e-4) is neither zero nor nonzero.
  const AsymptoticEvidence ev = collect_evidence(cubic_family(1e-6), along_y());
  EXPECT_EQ(theorem_conditions(ev).rho_nonzero, Verdict::indeterminate);
  const IdentityReport rep = check_theorem_equivalences(ev);
  ASSERT_EQ(rep.records.size(), 1u);
  EXPECT_FALSE(rep.records[0].applicable);
  EXPECT_EQ(rep.records[0].reason.rfind("indeterminate", 0), 0u);
}

TEST(Identities, NonAsymptoticDirectionSkipsAsymptoticChecks) {
  const IdentityReport rep = verify_identities(catalog_surface("f1"), TangentDirection{Vec2::Zero(), Vec2(1.0, 1.0), std::nullopt});
  const IdentityRecord* mdk = find(rep, "mdk_signed", Pipeline::traced);
  ASSERT_NE(mdk, nullptr);
  EXPECT_TRUE(mdk->applicable);
  EXPECT_TRUE(mdk->passed);
  const IdentityRecord* th = find(rep, "theorem_equivalence", Pipeline::closed_form);
  ASSERT_NE(th, nullptr);
  EXPECT_FALSE(th->applicable);
}
