#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "altosc/model.hpp"

namespace altosc::cli {

enum class Command { Spectrum, Wavefn, Verify, Contract, BoundCount };
enum class Format { Csv, Json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitAccuracy = 3;

struct RunConfig {
  Command command = Command::Spectrum;
  ModelParams params;
  int n_r = 0;
  int L = 0;
  std::optional<int> n_max;
  int grid_points = 0;  // 0: command default
  double coord_max = 0.0;  // 0: command default
  Format format = Format::Csv;
  std::string output;  // empty: standard output

  /// Throws DomainError / UsageError before any computation.
  void validate() const;
};

/// Rendered document plus the exit status it implies.
struct RunResult {
  std::string document;
  int status = kExitOk;
};

/// Executes a validated config and renders the document; does not write it anywhere.
RunResult execute(const RunConfig& config);

/// Validates, executes and writes to config.output (or `out`). Diagnostics go to `err` as
/// one line. Returns the exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (program name first) and calls run().
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace altosc::cli
