#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cgeom/jet.hpp"

namespace cgeom::cli {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kReportSchemaVersion = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 1,         // unreadable or malformed input, bad flags, unwritable output
  kExitInapplicable = 2,  // configuration outside an operation's preconditions
  kExitFailed = 3,        // tracing failure or failed identity check
};

struct GlobalOptions {
  double tol_sing = 1e-8;
  double tol_identity = 1e-10;
  std::uint64_t seed = 7;
};

struct AnalyzeArgs {
  std::string spec_path;
  std::optional<Vec2> point;
  std::optional<Vec2> direction;
  std::optional<int> asymptotic;
};

struct ContourArgs {
  std::string spec_path;
  std::optional<Vec2> point;
  std::optional<Vec2> direction;
  std::optional<double> budget;
  std::optional<double> step;
  std::string svg_path;
  std::string csv_path;
};

struct VerifyArgs {
  std::optional<std::string> spec_path;
  std::optional<int> random;
  std::optional<std::string> json_path;
};

int cmd_analyze(const AnalyzeArgs& args, const GlobalOptions& g, std::ostream& out, std::ostream& err);
int cmd_contour(const ContourArgs& args, const GlobalOptions& g, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& args, const GlobalOptions& g, std::ostream& out, std::ostream& err);
int cmd_figures(const std::string& out_dir, const GlobalOptions& g, std::ostream& out, std::ostream& err);

/// Full command line (argv[0] included) to exit code.
int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace cgeom::cli
