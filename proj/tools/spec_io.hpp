#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cgeom/surface.hpp"

namespace cgeom::cli {

/// Parse failure with a 1-based position in the input text (0 when the
/// problem is structural rather than lexical).
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct SurfaceSpec {
  std::string kind;  // monge_poly | parametric_poly | catalog
  std::string name;
  std::vector<Monomial> height;                    // monge_poly
  std::array<std::vector<Monomial>, 3> components;  // parametric_poly
  Domain domain;
  std::optional<Vec2> point;
};

SurfaceSpec parse_spec(const std::string& text);
SurfaceSpec load_spec(const std::string& path);
nlohmann::ordered_json spec_to_json(const SurfaceSpec& spec);
SurfacePatch build_patch(const SurfaceSpec& spec);

}  // namespace cgeom::cli
