#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pdem/core_model.hpp"

namespace pdem::cli {

enum class Command { Spectrum, Eigenfunctions, Polynomials, Verify, CompareOrdering };
enum class OutputFormat { Csv, Json, Both };

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerifyFailed = 3;

struct RunConfig {
  Command command = Command::Spectrum;
  ProfileKind kind = ProfileKind::Constant;
  double alpha = 1.0;
  double lambda = 0.0;
  /// Unset: min(9, bound count - 1), or 5 for polynomials.
  std::optional<std::size_t> n_max;
  std::size_t grid_n = 4000;
  double tail_tolerance = 1e-12;
  /// Empty: results go to the output stream.
  std::string output_dir;
  OutputFormat format = OutputFormat::Csv;
  unsigned workers = 1;
  bool symbolic = false;
  bool rodrigues = false;
  bool analytic = false;
  std::vector<VonRoosOrdering> orderings;
};

/// args excludes the program name. Exit codes: 0 ok, 1 computation error,
/// 2 usage error, 3 verification failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdem::cli
