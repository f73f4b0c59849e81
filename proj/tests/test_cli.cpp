#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "commands.hpp"
#include "spec_io.hpp"

using namespace cgeom;
using namespace cgeom::cli;
namespace fs = std::filesystem;

namespace {

const std::string kSpecs = CGEOM_SPEC_DIR;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "cgeom");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("cgeom_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST(SpecIo, ParseErrorCarriesPosition) {
  const std::string text = "{\n  \"kind\": \"monge_poly\",\n  \"coeffs\": [[1, 1, 1.0],\n}\n";
  try {
    (void)parse_spec(text);
    FAIL();
  } catch (const SpecError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_GE(e.column(), 1u);
  }
}

TEST(SpecIo, StructuralErrorHasNoPosition) {
  try {
    (void)parse_spec(R"({"name": "x", "coeffs": [[1, 1, 1.0]]})");
    FAIL();
  } catch (const SpecError& e) {
    EXPECT_EQ(e.line(), 0u);
  }
  EXPECT_THROW(parse_spec(R"({"kind": "monge_poly", "coeffs": [[1, 1]]})"), SpecError);
  EXPECT_THROW(parse_spec(R"({"kind": "catalog", "name": "torus"})"), SpecError);
}

TEST(SpecIo, RoundTrip) {
  const SurfaceSpec a = load_spec(kSpecs + "/f1_monge.json");
  const SurfaceSpec b = parse_spec(spec_to_json(a).dump());
  EXPECT_EQ(a.kind, b.kind);
  EXPECT_EQ(a.name, b.name);
  EXPECT_EQ(a.height, b.height);
  EXPECT_EQ(a.domain.lo, b.domain.lo);
  EXPECT_EQ(a.domain.hi, b.domain.hi);
  ASSERT_TRUE(b.point.has_value());
  EXPECT_EQ(*a.point, *b.point);

  const std::string para = R"({"kind": "parametric_poly", "name": "p",
    "coeffs": {"x": [[1, 0, 1.0]], "y": [[0, 1, 1.0]], "z": [[1, 1, 1.0], [0, 3, 1.0]]},
    "domain": {"u": [-0.5, 0.5], "v": [-0.5, 0.5]}})";
  const SurfaceSpec c = parse_spec(para);
  const SurfaceSpec d = parse_spec(spec_to_json(c).dump());
  for (int k = 0; k < 3; ++k) EXPECT_EQ(c.components[k], d.components[k]);
  // Both encodings of h = xy + y^3 build the same surface.
  const SurfacePatch pc = build_patch(c), pa = build_patch(a);
  EXPECT_LT((pc.point(Vec2(0.2, -0.3)) - pa.point(Vec2(0.2, -0.3))).norm(), 1e-15);
}

TEST(Cli, AnalyzeReport) {
  const CliResult r = run({"analyze", kSpecs + "/f1.json", "--asymptotic", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema_version"], kReportSchemaVersion);
  EXPECT_NEAR(j["invariants"]["K"]["value"].get<double>(), -1.0, 1e-12);
  EXPECT_EQ(j["singularity"]["tag"], "whitney_cusp");
  EXPECT_TRUE(j["all_identities_passed"].get<bool>());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"analyze", kSpecs + "/f_plus.json"}).code, kExitOk);
  EXPECT_EQ(run({"analyze", kSpecs + "/f_plus.json", "--asymptotic", "1"}).code, kExitInapplicable);
  EXPECT_EQ(run({"analyze", kSpecs + "/missing.json"}).code, kExitParse);
  EXPECT_EQ(run({"analyze", kSpecs + "/f1.json", "--point", "nope"}).code, kExitParse);
  EXPECT_EQ(run({"frobnicate"}).code, kExitParse);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
  EXPECT_EQ(run({"contour", kSpecs + "/f1.json", "--csv", "/nonexistent/dir/out.csv"}).code, kExitParse);

  // z = y^3 seen along d/dy: J = 3 y^2 has no gradient at the seed, so the trace cannot start.
  const fs::path d = scratch_dir("bad_spec");
  std::ofstream(d / "cubic.json") << R"({"kind": "monge_poly", "name": "c", "coeffs": [[0, 3, 1.0]],
    "domain": {"u": [-1, 1], "v": [-1, 1]}})";
  EXPECT_EQ(run({"contour", (d / "cubic.json").string()}).code, kExitFailed);

  std::ofstream(d / "bad.json") << "{ \"kind\": ";
  const CliResult bad = run({"analyze", (d / "bad.json").string()});
  EXPECT_EQ(bad.code, kExitParse);
  EXPECT_NE(bad.err.find("line 1"), std::string::npos) << bad.err;
}

TEST(Cli, ContourCsv) {
  const fs::path d = scratch_dir("csv");
  const CliResult r = run({"contour", kSpecs + "/f1.json", "--csv", (d / "c.csv").string(), "--svg", (d / "c.svg").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("cusp:"), std::string::npos);
  std::ifstream csv(d / "c.csv");
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "t,u,v,x_Pi,z_Pi,J,regular_flag");
  int rows = 0;
  while (std::getline(csv, line)) {
    double t, u, v, x, z, J;
    int flag;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%d", &t, &u, &v, &x, &z, &J, &flag), 7) << line;
    EXPECT_NEAR(x, -3.0 * t * t, 1e-9);
    EXPECT_NEAR(z, -2.0 * t * t * t, 1e-9);
    EXPECT_LT(std::abs(J), 1e-10);
    ++rows;
  }
  EXPECT_GT(rows, 50);
  EXPECT_NE(slurp(d / "c.svg").find("<svg"), std::string::npos);
}

TEST(Cli, Verify) {
  const fs::path d = scratch_dir("verify");
  const CliResult r = run({"verify", "--random", "20", "--seed", "3", "--json", (d / "v.json").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(slurp(d / "v.json"));
  ASSERT_TRUE(j.is_object() || j.is_array());
  EXPECT_EQ(run({"verify", kSpecs + "/f1.json"}).code, kExitOk);
  EXPECT_EQ(run({"verify", kSpecs + "/sphere.json"}).code, kExitOk);
}

TEST(Cli, FiguresAreByteDeterministic) {
  const fs::path a = scratch_dir("fig_a"), b = scratch_dir("fig_b");
  ASSERT_EQ(run({"figures", "--out", a.string()}).code, kExitOk);
  ASSERT_EQ(run({"figures", "--out", b.string()}).code, kExitOk);
  for (const char* name : {"fig1_fplus.svg", "fig1_fminus.svg", "fig2_f0.svg", "fig2_f1.svg"}) {
    const std::string sa = slurp(a / name);
    ASSERT_FALSE(sa.empty()) << name;
    EXPECT_EQ(sa, slurp(b / name)) << name;
  }
  const std::string f1 = slurp(a / "fig2_f1.svg");
  std::size_t cusps = 0;
  for (std::size_t pos = 0; (pos = f1.find("class=\"cusp\"", pos)) != std::string::npos; ++pos) ++cusps;
  EXPECT_EQ(cusps, 1u);
  EXPECT_EQ(slurp(a / "fig1_fplus.svg").find("class=\"cusp\""), std::string::npos);
}
