#include "cgeom/catalog.hpp"

#include "cgeom/error.hpp"

namespace cgeom {

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"f_plus", "f_minus", "f0", "f1", "sphere", "cylinder"};
  return names;
}

Domain catalog_domain(std::string_view name) {
  if (name == "sphere") return {Vec2(-0.5, -0.5), Vec2(0.5, 0.5)};
  return {};
}

SurfacePatch catalog_surface(std::string_view name) { return catalog_surface(name, catalog_domain(name)); }

SurfacePatch catalog_surface(std::string_view name, const Domain& domain) {
  const std::string id(name);
  if (name == "f_plus") return SurfacePatch::graph(Field::polynomial({{2, 0, 2.0}, {0, 2, 1.0}}), domain, id);
  if (name == "f_minus") return SurfacePatch::graph(Field::polynomial({{2, 0, 2.0}, {0, 2, -1.0}}), domain, id);
  if (name == "f0") return SurfacePatch::graph(Field::polynomial({{1, 1, 1.0}}), domain, id);
  if (name == "f1") return SurfacePatch::graph(Field::polynomial({{1, 1, 1.0}, {0, 3, 1.0}}), domain, id);
  if (name == "cylinder") return SurfacePatch::graph(Field::polynomial({{2, 0, 1.0}}), domain, id);
  if (name == "sphere") {
    // Unit sphere near its south pole: z = 1 - sqrt(1 - x^2 - y^2).
    const Field r2 = Field::polynomial({{2, 0, 1.0}, {0, 2, 1.0}});
    return SurfacePatch::graph(Field::constant(1.0) - sqrt(Field::constant(1.0) - r2), domain, id);
  }
  throw GeometryError(ErrorKind::contract, "unknown catalog surface '" + id + "'");
}

Vec2 catalog_default_direction(std::string_view name) {
  return name == "cylinder" ? Vec2(1.0, 0.0) : Vec2(0.0, 1.0);
}

SurfacePatch random_cubic_monge(std::mt19937_64& rng, const RandomCubicOptions& opts) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto signed_in = [&](double lo, double hi) {
    const double mag = lo + (hi - lo) * unit(rng);
    return unit(rng) < 0.5 ? -mag : mag;
  };
  auto free_coeff = [&] { return opts.other * (2.0 * unit(rng) - 1.0); };
  const double hxy = signed_in(opts.hxy_min, opts.hxy_max);
  const double hyyy = signed_in(opts.hyyy_min, opts.hyyy_max);
  const double hxx = free_coeff();
  const double hxxx = free_coeff();
  const double hxxy = free_coeff();
  const double hxyy = free_coeff();
  // Monomial coefficients are partials divided by i! j!.
  std::vector<Monomial> m{{1, 1, hxy}, {2, 0, hxx / 2.0}, {3, 0, hxxx / 6.0}, {2, 1, hxxy / 2.0}, {1, 2, hxyy / 2.0}};
  if (hyyy != 0.0) m.push_back({0, 3, hyyy / 6.0});
  return SurfacePatch::graph(Field::polynomial(std::move(m)), opts.domain, "random_cubic");
}

}  // namespace cgeom
