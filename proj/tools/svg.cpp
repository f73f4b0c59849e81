#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace cgeom::cli {
namespace {

constexpr int kGridLines = 33;
constexpr int kSamplesPerLine = 65;
constexpr double kPanel = 400.0;
constexpr double kMargin = 24.0;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", std::abs(x) < 5e-4 ? 0.0 : x);
  return buf;
}

/// Uniform fit of a point set into a panel, y axis pointing up.
struct Viewport {
  double x0 = 0.0, y0 = 0.0, scale = 1.0, offset = 0.0;

  Viewport(const std::vector<std::vector<Vec2>>& sets, double panel_offset) : offset(panel_offset) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : sets) {
      for (const auto& p : s) {
        xmin = std::min(xmin, p.x()), xmax = std::max(xmax, p.x());
        ymin = std::min(ymin, p.y()), ymax = std::max(ymax, p.y());
      }
    }
    if (xmin > xmax) xmin = -1, xmax = 1, ymin = -1, ymax = 1;
    const double w = std::max(xmax - xmin, 1e-9), h = std::max(ymax - ymin, 1e-9);
    scale = (kPanel - 2.0 * kMargin) / std::max(w, h);
    x0 = 0.5 * (xmin + xmax);
    y0 = 0.5 * (ymin + ymax);
  }

  Vec2 map(const Vec2& p) const {
    return {offset + 0.5 * kPanel + scale * (p.x() - x0), 0.5 * kPanel + 30.0 - scale * (p.y() - y0)};
  }
};

std::string path(const Viewport& vp, const std::vector<Vec2>& pts, const char* cls) {
  std::ostringstream os;
  os << "<path class=\"" << cls << "\" d=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec2 s = vp.map(pts[i]);
    os << (i == 0 ? "M" : " L") << num(s.x()) << ' ' << num(s.y());
  }
  os << "\"/>\n";
  return os.str();
}

Vec2 oblique(const Vec3& c) {
  // Cabinet-style view of adapted coordinates (x, y, z): y recedes up-right.
  const double k = 0.5;
  return {c.x() + k * c.y() * std::cos(M_PI / 6.0), c.z() + k * c.y() * std::sin(M_PI / 6.0)};
}

}  // namespace

std::string render_figure(const ViewMap& vm, const std::vector<PlaneCurvePoint>& contour,
                          const ContourFeatures& features, const std::string& title) {
  const Domain& d = vm.domain();
  const bool surface = vm.patch().has_value() && vm.setup().has_value();

  std::vector<std::vector<Vec2>> left_lines, right_lines;
  for (int dir = 0; dir < 2; ++dir) {
    for (int i = 0; i < kGridLines; ++i) {
      std::vector<Vec2> l, r;
      for (int k = 0; k < kSamplesPerLine; ++k) {
        const double a = static_cast<double>(i) / (kGridLines - 1);
        const double b = static_cast<double>(k) / (kSamplesPerLine - 1);
        const Vec2 q = dir == 0 ? Vec2(d.lo.x() + a * (d.hi.x() - d.lo.x()), d.lo.y() + b * (d.hi.y() - d.lo.y()))
                                : Vec2(d.lo.x() + b * (d.hi.x() - d.lo.x()), d.lo.y() + a * (d.hi.y() - d.lo.y()));
        r.push_back(vm.image(q));
        if (surface) l.push_back(oblique(vm.setup()->frame.coordinates(*vm.patch(), q)));
        else l.push_back(q);
      }
      left_lines.push_back(std::move(l));
      right_lines.push_back(std::move(r));
    }
  }
  std::vector<Vec2> generator, image;
  for (const auto& pt : contour) {
    image.push_back(pt.position);
    generator.push_back(surface ? oblique(vm.setup()->frame.coordinates(*vm.patch(), pt.param)) : pt.param);
  }

  const Viewport left(left_lines, 0.0);
  const Viewport right(right_lines, kPanel);

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * kPanel << "\" height=\"" << kPanel + 30
     << "\" viewBox=\"0 0 " << 2 * kPanel << ' ' << kPanel + 30 << "\">\n";
  os << "<style>path{fill:none}.grid{stroke:#9aa;stroke-width:0.5}.contour,.generator{stroke:#c22;stroke-width:2}"
        ".cusp{fill:none;stroke:#06c;stroke-width:2}.degenerate{fill:#06c;stroke:#06c}"
        "text{font-family:sans-serif;font-size:14px}</style>\n";
  os << "<title>" << title << "</title>\n";
  os << "<text x=\"" << num(kMargin) << "\" y=\"20\">" << title << ": patch</text>\n";
  os << "<text x=\"" << num(kPanel + kMargin) << "\" y=\"20\">" << title << ": projection to the view plane</text>\n";

  os << "<g class=\"panel-surface\">\n";
  for (const auto& l : left_lines) os << path(left, l, "grid");
  if (generator.size() > 1) os << path(left, generator, "generator");
  os << "</g>\n<g class=\"panel-projection\">\n";
  for (const auto& l : right_lines) os << path(right, l, "grid");
  if (image.size() > 1) os << path(right, image, "contour");
  for (const auto& c : features.cusps) {
    const Vec2 s = right.map(c.location);
    os << "<circle class=\"cusp\" cx=\"" << num(s.x()) << "\" cy=\"" << num(s.y()) << "\" r=\"7\"/>\n";
  }
  for (const auto& p : features.degenerate_images) {
    const Vec2 s = right.map(p);
    os << "<circle class=\"degenerate\" cx=\"" << num(s.x()) << "\" cy=\"" << num(s.y()) << "\" r=\"5\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace cgeom::cli
