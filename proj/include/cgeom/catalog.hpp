#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "cgeom/surface.hpp"

namespace cgeom {

/// f_plus, f_minus, f0, f1, sphere, cylinder.
const std::vector<std::string>& catalog_names();

/// Default parameter rectangle of a catalog surface ([-1, 1]^2, smaller for
/// the sphere so the graph stays away from the equator).
Domain catalog_domain(std::string_view name);

/// Throws ErrorKind::contract for unknown names.
SurfacePatch catalog_surface(std::string_view name);
SurfacePatch catalog_surface(std::string_view name, const Domain& domain);

/// Direction used with a catalog surface when none is given: d/dv, except
/// for the cylinder, which is viewed across its rulings along d/du.
Vec2 catalog_default_direction(std::string_view name);

struct RandomCubicOptions {
  double hxy_min = 0.2;
  double hxy_max = 5.0;
  /// |h_yyy| range; a zero range gives h_yyy = 0.
  double hyyy_min = 0.2;
  double hyyy_max = 5.0;
  /// Bound on the remaining free coefficients (h_xx, h_xxx, h_xxy, h_xyy).
  double other = 2.0;
  Domain domain{Vec2(-0.5, -0.5), Vec2(0.5, 0.5)};
};

/// Cubic Monge patch z = h(x, y) with h(o) = h_x(o) = h_y(o) = h_yy(o) = 0,
/// so d/dy is asymptotic at the origin. Magnitudes are drawn uniformly from
/// the option ranges, signs independently.
SurfacePatch random_cubic_monge(std::mt19937_64& rng, const RandomCubicOptions& opts = {});

}  // namespace cgeom
