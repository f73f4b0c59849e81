#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cgeom/asymptotic.hpp"
#include "cgeom/projection.hpp"

namespace cgeom {

enum class Pipeline { closed_form, traced };

const char* to_string(Pipeline p);

struct IdentityRecord {
  std::string name;
  Pipeline pipeline = Pipeline::closed_form;
  double left = 0.0;
  double right = 0.0;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  bool applicable = true;
  /// Why the identity was skipped, or the detail of a verdict.
  std::string reason;
  /// Module that produced each operand, e.g. "K: surface".
  std::vector<std::string> provenance;
  double threshold = 0.0;
  bool passed = true;
};

struct IdentityReport {
  std::vector<IdentityRecord> records;

  bool all_passed() const;
  void append(const IdentityReport& other);
};

struct IdentityOptions {
  double closed_tol = 1e-10;
  double traced_tol = 1e-6;
  double tol_sing = kDefaultTolSing;
  /// Contour tracing step; <= 0 selects 1e-2 times the domain diameter.
  double contour_step = 0.0;
};

/// Everything the asymptotic-direction identities consume, from both pipelines.
struct AsymptoticEvidence {
  double K = 0.0;
  AsymptoticInvariants closed;
  /// sign(h_xy) 2 |h_xy|^{3/2} / |h_yyy|^{1/2}; empty when h_yyy = 0.
  std::optional<double> omega_closed;

  std::optional<double> alpha_traced;
  double beta_traced = 0.0;
  std::optional<double> delta_traced;
  double rho_traced = 0.0;
  std::optional<double> omega_traced;

  SingularityTag classification = SingularityTag::regular;
  std::vector<std::string> diagnostics;
};

/// Throws contract when dir is not asymptotic, parabolic when h_xy(o) = 0.
AsymptoticEvidence collect_evidence(const SurfacePatch& patch, const TangentDirection& dir,
                                    const IdentityOptions& opts = {});

/// Closed-form cuspidal curvature of the contour at an asymptotic frame.
std::optional<double> cuspidal_curvature_closed_form(const AdaptedFrame& frame);

/// |K| = |mu kappa|, K = mu kappa (mu from the traced contour) and
/// |mu| = 1 / R. Inapplicable entries for asymptotic directions.
IdentityReport check_mdk(const SurfacePatch& patch, const TangentDirection& dir, const IdentityOptions& opts = {});

/// |alpha| = 2 beta / 3, 2 beta |delta| = |rho|, |delta| = sqrt(-K),
/// K = -rho^2 / (9 alpha^2), K = -rho^2 / (4 beta^2), on both pipelines.
IdentityReport check_asymptotic_identities(const SurfacePatch& patch, const TangentDirection& dir,
                                           const IdentityOptions& opts = {});
IdentityReport check_asymptotic_identities(const AsymptoticEvidence& ev, const IdentityOptions& opts = {});

/// K^3 = -rho^2 omega^4 / 16 and K = -(3/4) |alpha| omega^2 on both pipelines.
IdentityReport check_cusp_formulas(const SurfacePatch& patch, const TangentDirection& dir,
                                   const IdentityOptions& opts = {});
IdentityReport check_cusp_formulas(const AsymptoticEvidence& ev, const IdentityOptions& opts = {});

enum class Verdict { yes, no, indeterminate };

struct TheoremConditions {
  Verdict alpha_nonzero = Verdict::indeterminate;
  Verdict rho_nonzero = Verdict::indeterminate;
  Verdict contour_cusp = Verdict::indeterminate;
  Verdict whitney_cusp = Verdict::indeterminate;
};

/// alpha != 0, rho != 0, traced cusp, Whitney-cusp classification. Each
/// quantity is normalized by the matching power of |K|; below 1e-8 counts
/// as zero, above 1e-4 as nonzero, in between as indeterminate.
TheoremConditions theorem_conditions(const AsymptoticEvidence& ev);
IdentityReport check_theorem_equivalences(const SurfacePatch& patch, const TangentDirection& dir,
                                          const IdentityOptions& opts = {});
IdentityReport check_theorem_equivalences(const AsymptoticEvidence& ev);

/// All applicable checks for (patch, dir).
IdentityReport verify_identities(const SurfacePatch& patch, const TangentDirection& dir,
                                 const IdentityOptions& opts = {});

enum class CuspQuantity { K, alpha, omega, rho };

/// K (negative) and the magnitudes |alpha|, |omega|, |rho|.
struct CuspQuadruple {
  double K = 0.0;
  double alpha = 0.0;
  double omega = 0.0;
  double rho = 0.0;
};

/// The other two of {K, alpha, omega, rho} from any two, by the cusp
/// relations. Signs are not recoverable; magnitudes are returned.
CuspQuadruple reconstruct(CuspQuantity a, double value_a, CuspQuantity b, double value_b);

/// Record with residuals filled in; passed when |left - right| <= tol max(1, |left|, |right|).
IdentityRecord make_record(std::string name, Pipeline pipeline, double left, double right, double tol,
                           std::vector<std::string> provenance);
IdentityRecord inapplicable_record(std::string name, Pipeline pipeline, std::string reason);

}  // namespace cgeom
