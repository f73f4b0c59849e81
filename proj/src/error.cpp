#include "cgeom/error.hpp"

namespace cgeom {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::contract: return "contract";
    case ErrorKind::rank: return "rank";
    case ErrorKind::degenerate_patch: return "degenerate_patch";
    case ErrorKind::not_applicable: return "not_applicable";
    case ErrorKind::division: return "division";
    case ErrorKind::parabolic: return "parabolic";
    case ErrorKind::higher_degeneracy: return "higher_degeneracy";
    case ErrorKind::torsion_undefined: return "torsion_undefined";
    case ErrorKind::outside_domain: return "outside_domain";
  }
  return "unknown";
}

}  // namespace cgeom
