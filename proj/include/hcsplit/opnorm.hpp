// SPDX-License-Identifier: Apache-2.0
//
// Lower-bound estimation of ||A : L_p -> L_q|| on finite probability spaces.
// Every reported value is the ratio ||A f||_q / ||f||_p of a stored witness f,
// so it is a certified lower bound. Upper-side control comes from agreement
// with the independent search in opnorm_oracle and from the padding factor
// applied by callers.
#pragma once

#include <cstddef>
#include <cstdint>

#include "hcsplit/semigroup.hpp"
#include "hcsplit/space.hpp"

namespace hcsplit {

/// Relative slack applied to estimated norms in every certified inequality.
inline constexpr double kNormPadding = 1e-3;

enum class NormMethod { MultistartAscent, BruteGrid };

const char* to_string(NormMethod method);

struct NormEstimate {
  double value = 0.0;
  FunctionVector witness;
  NormMethod method = NormMethod::MultistartAscent;
  int restarts_used = 0;
};

struct AscentOptions {
  int restarts = 32;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  int max_iterations = 500;
  /// Stop a run once the ratio improves by less than this (relative).
  double tolerance = 1e-12;
  /// Atom indicators used as canonical starts; the first
  /// min(size, max_indicator_starts) atoms are tried.
  std::size_t max_indicator_starts = 64;
};

/// Multistart dual fixed-point ascent on f -> ||A f||_q / ||f||_p.
///
/// Each run iterates f <- J_{p'}(A^* J_q(A f)) where J_r(v) = |v|^{r-2} v is
/// the duality map and A^* is the adjoint for the weighted pairings. Starts:
/// the constant function, atom indicators, the top weighted singular vector
/// and `restarts` seeded random functions. For p = 1 the maximum over atom
/// indicators is exact and is returned directly.
///
/// Throws InvalidExponentError unless 1 <= p, q < infinity.
NormEstimate opnorm_lower(const OperatorMatrix& a, double p, double q, const AscentOptions& options = {});
NormEstimate opnorm_lower(const OperatorMatrix& a, double p, double q, int restarts);

/// Independent brute-force search over the L_p unit sphere, polished by a
/// derivative-free compass search. Angular grid over moduli and phases for
/// input dimension <= 3, 1e5 random directions for 4..6. Throws
/// CostGuardError above dimension 6.
double opnorm_oracle(const OperatorMatrix& a, double p, double q, std::uint64_t seed = 17);

/// s* = -ln(p-1)/2, the Bonami-Beckner time at which the cube semigroup
/// becomes a contraction L_p -> L_2. Throws DomainError unless 1 < p < 2.
double hypercontractive_threshold(double p);

struct HypercontractivityReport {
  double s_star = 0.0;
  double norm_at_threshold = 0.0;    // ||T(s*)||_{p->2}
  double norm_below_threshold = 0.0; // ||T(0.9 s*)||_{p->2}
  bool contractive_at_threshold = false;
  bool expansive_below_threshold = false;
  /// The strict growth below s* is only asserted for n >= 2; on a single
  /// variable the gain can sit under the padding.
  bool below_threshold_required = false;

  bool ok() const {
    return contractive_at_threshold && (!below_threshold_required || expansive_below_threshold);
  }
};

HypercontractivityReport hypercontractive_time(double p, const CubeNoiseSemigroup& cube,
                                               const AscentOptions& options = {});

}  // namespace hcsplit
