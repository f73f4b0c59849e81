#pragma once

#include <string>
#include <vector>

#include "cgeom/contour.hpp"

namespace cgeom::cli {

/// Two panels: an oblique view of the patch wireframe (adapted frame
/// coordinates) with the contour generator, and its projection to Pi_V with
/// the contour line. Cusps are marked by circle.cusp, degenerate contour
/// points by circle.degenerate. Output is a pure function of the inputs.
std::string render_figure(const ViewMap& vm, const std::vector<PlaneCurvePoint>& contour,
                          const ContourFeatures& features, const std::string& title);

}  // namespace cgeom::cli
