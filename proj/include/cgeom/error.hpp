#pragma once

#include <stdexcept>
#include <string>

namespace cgeom {

/// Failure categories raised by the geometry pipeline.
enum class ErrorKind {
  domain,             // non-smooth primitive or point outside the field's domain
  contract,           // violated precondition (base mismatch, zero direction, ...)
  rank,               // singular linear part
  degenerate_patch,   // f_u x f_v = 0
  not_applicable,     // the formula does not apply at this configuration
  division,           // division by a vanishing invariant
  parabolic,          // K ~ 0 where K < 0 is required
  higher_degeneracy,  // cusp test fails because Gamma'' ~ 0
  torsion_undefined,  // space curve has an inflection
  outside_domain,     // query point outside the patch rectangle
};

const char* to_string(ErrorKind kind) noexcept;

class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cgeom
