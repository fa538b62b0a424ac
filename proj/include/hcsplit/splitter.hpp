// SPDX-License-Identifier: Apache-2.0
//
// The split T(t) = (1 - theta) T0 + theta T1 built from the boundary
// quadrature of the harmonic measure, with measured constants and the two
// norm bounds.
#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hcsplit/geometry.hpp"
#include "hcsplit/opnorm.hpp"
#include "hcsplit/semigroup.hpp"

namespace hcsplit {

/// Norms used by the split: `v0` is the norm of B(L) (||.||_{p->p} for the
/// plain split), `v1` the ideal norm (||.||_{p->2}). The reconstruction error
/// is measured in `v0`.
struct SplitNorms {
  std::string v0_name;
  std::string v1_name;
  std::function<double(const OperatorMatrix&)> v0;
  std::function<double(const OperatorMatrix&)> v1;
};

/// ||.||_{p->p} and ||.||_{p->2} through opnorm_lower.
SplitNorms lp_split_norms(double p, const AscentOptions& options = {});

/// Per-node operator norms: ||T(z)|| in `v0` for V0 nodes and in `v1` for V1
/// nodes, in node order. Independent of epsilon, so one table serves a sweep.
struct NodeNormTable {
  std::vector<double> values;
  double C0 = 0.0;
  double C1 = 0.0;
};

struct SplitOptions {
  /// Ascent used for T0, T1 and the reconstruction residual.
  AscentOptions operator_ascent{};
  /// Ascent used for the per-node norms behind C0 and C1.
  AscentOptions node_ascent{8, 0x2545f4914f6cdd1dULL, 500, 1e-12, 8};
  /// Cross-check the T0/T1 norms with opnorm_oracle when the space has at
  /// most 6 atoms.
  bool oracle_cross_check = true;
  /// Worker threads for node-wise work; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

NodeNormTable node_norms(const Semigroup& semigroup, const HarmonicMeasure& measure, const SplitNorms& norms,
                         unsigned threads = 0);

struct SplitCertificate {
  double p = 0.0;
  double epsilon = 1.0;
  double theta = 0.0;
  std::string v0_norm_name;
  std::string v1_norm_name;
  std::optional<OperatorMatrix> T0;
  std::optional<OperatorMatrix> T1;
  double C0_measured = 0.0;
  double C1_measured = 0.0;
  double norm_T0_pp = 0.0;
  double norm_T1_p2 = 0.0;
  /// ||T(t) - (1 - theta) T0 - theta T1|| in the v0 norm.
  double recon_error_pp = 0.0;
  double exponent = 0.0;
  bool bound_T0_ok = false;
  bool bound_T1_ok = false;
  /// ||T(t) - theta T1|| = ||(1 - theta) T0|| and ||T(t) - T1||, both in the
  /// v0 norm.
  double distance_theta_T1 = 0.0;
  double distance_T1 = 0.0;
  /// Largest relative excess of opnorm_oracle over opnorm_lower on T0 and T1
  /// (negative or zero when the estimator is at least as large).
  std::optional<double> oracle_gap;
  std::size_t nodes_v0 = 0;
  std::size_t nodes_v1 = 0;
};

/// Throws IllConditionedSplitError when theta < 1e-6 or theta > 1 - 1e-6,
/// DomainError unless 1 < p < 2 and 0 < epsilon <= 1, and NumericalError when
/// epsilon^{(theta-1)/theta} exceeds 1e300.
SplitCertificate split(const Semigroup& semigroup, const HarmonicMeasure& measure, double p, double epsilon,
                       const SplitOptions& options = {});

/// Same construction with caller-supplied norms and a precomputed node table.
SplitCertificate split_with(const Semigroup& semigroup, const HarmonicMeasure& measure, double epsilon,
                            const SplitNorms& norms, const NodeNormTable& table, const SplitOptions& options = {},
                            double p = 0.0);

struct Approximant {
  OperatorMatrix T_prime;
  /// ||T(t) - theta T1||_{p->p}
  double approx_error = 0.0;
  /// ||theta T1||_{p->2}
  double gamma2_norm = 0.0;
  /// ||T(t) - T1||_{p->p}, logged next to approx_error.
  double distance_T1 = 0.0;
  SplitCertificate certificate;
};

/// T' = theta T1.
Approximant approximant(const Semigroup& semigroup, const HarmonicMeasure& measure, double p, double epsilon,
                        const SplitOptions& options = {});

struct DimensionRow {
  int n = 0;
  double theta = 0.0;
  double C0_measured = 0.0;
  double C1_measured = 0.0;
  double norm_T0_pp = 0.0;
  double norm_T1_p2 = 0.0;
};

/// Runs split on the cube for every n with the same measure and epsilon.
/// Throws CostGuardError when some n > 10 and DomainError when some n < 1.
std::vector<DimensionRow> dimension_sweep(const HarmonicMeasure& measure, double p, double epsilon,
                                          const std::vector<int>& n_range, const SplitOptions& options = {});

/// max / min of a positive series (1 for a single value).
double variation_factor(const std::vector<double>& values);

/// Least-squares slope of ys against xs. Throws DomainError with fewer than
/// two distinct xs.
double slope_fit(const std::vector<double>& xs, const std::vector<double>& ys);

/// Key = value document; matrices are written only when asked.
void write_certificate(std::ostream& out, const SplitCertificate& certificate, bool include_matrices = false);

}  // namespace hcsplit
