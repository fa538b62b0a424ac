// SPDX-License-Identifier: Apache-2.0
//
// Configuration-driven runs behind the hcsplit command line tool.
//
// Exit statuses: 0 every certified inequality holds, 1 some inequality
// failed, 2 usage error (nothing written), 3 numerical failure (a
// diagnostics.txt is written).
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hcsplit/geometry.hpp"

namespace hcsplit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInequalityFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

struct ExperimentConfig {
  double p = 1.5;
  int n = 3;
  /// Unset means s*(p).
  std::optional<double> s;
  /// Unset means the TriangleDomain defaults relative to s.
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> t;
  std::vector<double> epsilons{1e-1, 1e-2, 1e-3, 1e-4};
  int nodes_per_edge = 64;
  std::uint64_t seed = 20240611;
  std::string output_dir = "results";
  std::vector<int> n_range{2, 3, 4, 5, 6, 7, 8};
  /// Epsilon used by the dimension sweep.
  double sweep_epsilon = 1e-2;
  /// "first-level" or "walsh:m1,m2,..." (subset bitmasks).
  std::string subspace = "first-level";
  /// Random restarts of the ascent for T0, T1 and residuals, and for the
  /// per-node norms.
  int restarts = 32;
  int node_restarts = 2;
  /// Atom indicator starts for the per-node norms.
  int node_indicator_starts = 1;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;

  double resolved_s() const;
  TriangleDomain domain() const;
  /// Throws UsageError naming the violated invariant.
  void validate() const;
  /// key = value lines in a fixed order.
  void write(std::ostream& out) const;
};

/// Applies one "key=value" assignment. Throws UsageError for unknown keys or
/// malformed values.
void apply_setting(ExperimentConfig& config, const std::string& assignment);

/// Reads a flat key = value file ('#' starts a comment). Throws UsageError.
ExperimentConfig load_config(const std::string& path);

/// Parses "2..8" or "2,3,5" (also mixed, e.g. "1,3..5").
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

/// Epsilon as used in certificate file names (shortest %g form).
std::string epsilon_label(double epsilon);

struct RunResult {
  int exit_code = kExitOk;
  std::vector<std::string> files;
  std::string message;
};

/// results.csv, certificate_<epsilon>.txt, nodes.txt.
RunResult run_split_experiment(const ExperimentConfig& config);
/// dimsweep.csv and dimsweep_summary.txt.
RunResult run_dimension_sweep(const ExperimentConfig& config);
/// corollary.csv and corollary_summary.txt.
RunResult run_corollary_demo(const ExperimentConfig& config);
/// checks.txt with one PASS/FAIL line per invariant.
RunResult run_checks(const ExperimentConfig& config);

}  // namespace hcsplit
