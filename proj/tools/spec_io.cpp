#include "spec_io.hpp"

#include <fstream>
#include <sstream>

#include "cgeom/catalog.hpp"

namespace cgeom::cli {
namespace {

using json = nlohmann::json;

void line_column(const std::string& text, std::size_t offset, std::size_t& line, std::size_t& column) {
  line = 1;
  column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
}

[[noreturn]] void structural(const std::string& what) { throw SpecError(what, 0, 0); }

std::vector<Monomial> monomials(const json& j, const std::string& where) {
  if (!j.is_array()) structural(where + ": expected a list of [i, j, value] entries");
  std::vector<Monomial> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
        !e[2].is_number()) {
      structural(where + ": each entry must be [i, j, value] with integer powers");
    }
    const int i = e[0].get<int>();
    const int k = e[1].get<int>();
    if (i < 0 || k < 0) structural(where + ": negative power");
    out.push_back({i, k, e[2].get<double>()});
  }
  return out;
}

json monomials_json(const std::vector<Monomial>& m) {
  json out = json::array();
  for (const auto& e : m) out.push_back({e.i, e.j, e.value});
  return out;
}

std::pair<double, double> interval(const json& j, const char* key) {
  if (!j.contains(key)) structural(std::string("domain.") + key + " missing");
  const json& a = j.at(key);
  if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
    structural(std::string("domain.") + key + ": expected [lo, hi]");
  }
  const double lo = a[0].get<double>(), hi = a[1].get<double>();
  if (!(lo < hi)) structural(std::string("domain.") + key + ": lo must be below hi");
  return {lo, hi};
}

}  // namespace

SpecError::SpecError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(what), line_(line), column_(column) {}

SurfaceSpec parse_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 0, column = 0;
    line_column(text, e.byte == 0 ? 0 : e.byte - 1, line, column);
    throw SpecError(e.what(), line, column);
  }
  if (!j.is_object()) structural("spec must be a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string()) structural("missing string field 'kind'");

  SurfaceSpec spec;
  spec.kind = j["kind"].get<std::string>();
  if (j.contains("name")) {
    if (!j["name"].is_string()) structural("'name' must be a string");
    spec.name = j["name"].get<std::string>();
  }

  if (spec.kind == "catalog") {
    bool known = false;
    for (const auto& n : catalog_names()) known = known || n == spec.name;
    if (!known) structural("unknown catalog name '" + spec.name + "'");
    spec.domain = catalog_domain(spec.name);
  } else if (spec.kind == "monge_poly") {
    if (!j.contains("coeffs")) structural("monge_poly needs 'coeffs'");
    spec.height = monomials(j["coeffs"], "coeffs");
  } else if (spec.kind == "parametric_poly") {
    if (!j.contains("coeffs") || !j["coeffs"].is_object()) {
      structural("parametric_poly needs 'coeffs' as {\"x\": [...], \"y\": [...], \"z\": [...]}");
    }
    const char* keys[3] = {"x", "y", "z"};
    for (std::size_t k = 0; k < 3; ++k) {
      if (!j["coeffs"].contains(keys[k])) structural(std::string("coeffs.") + keys[k] + " missing");
      spec.components[k] = monomials(j["coeffs"][keys[k]], std::string("coeffs.") + keys[k]);
    }
  } else {
    structural("unknown kind '" + spec.kind + "' (monge_poly, parametric_poly, catalog)");
  }

  if (j.contains("domain")) {
    const json& d = j["domain"];
    if (!d.is_object()) structural("'domain' must be {\"u\": [lo, hi], \"v\": [lo, hi]}");
    const auto [u0, u1] = interval(d, "u");
    const auto [v0, v1] = interval(d, "v");
    spec.domain = {Vec2(u0, v0), Vec2(u1, v1)};
  }
  if (j.contains("point")) {
    const json& p = j["point"];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      structural("'point' must be [u, v]");
    }
    spec.point = Vec2(p[0].get<double>(), p[1].get<double>());
  }
  return spec;
}

SurfaceSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open '" + path + "'", 0, 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

nlohmann::ordered_json spec_to_json(const SurfaceSpec& spec) {
  nlohmann::ordered_json j;
  j["kind"] = spec.kind;
  if (!spec.name.empty() || spec.kind == "catalog") j["name"] = spec.name;
  if (spec.kind == "monge_poly") j["coeffs"] = monomials_json(spec.height);
  if (spec.kind == "parametric_poly") {
    j["coeffs"] = {{"x", monomials_json(spec.components[0])},
                   {"y", monomials_json(spec.components[1])},
                   {"z", monomials_json(spec.components[2])}};
  }
  j["domain"] = {{"u", {spec.domain.lo.x(), spec.domain.hi.x()}}, {"v", {spec.domain.lo.y(), spec.domain.hi.y()}}};
  if (spec.point) j["point"] = {spec.point->x(), spec.point->y()};
  return j;
}

SurfacePatch build_patch(const SurfaceSpec& spec) {
  if (spec.kind == "catalog") return catalog_surface(spec.name, spec.domain);
  const std::string name = spec.name.empty() ? spec.kind : spec.name;
  if (spec.kind == "monge_poly") return SurfacePatch::graph(Field::polynomial(spec.height), spec.domain, name);
  return SurfacePatch({Field::polynomial(spec.components[0]), Field::polynomial(spec.components[1]),
                       Field::polynomial(spec.components[2])},
                      spec.domain, name);
}

}  // namespace cgeom::cli
