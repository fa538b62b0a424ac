// SPDX-License-Identifier: Apache-2.0
//
// Left-ideal norms gamma with gamma(T o x) <= C ||x|| gamma(T), and the split
// construction run with an arbitrary (gamma, ||.||) pair.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hcsplit/opnorm.hpp"
#include "hcsplit/splitter.hpp"

namespace hcsplit {

using NormFunction = std::function<double(const OperatorMatrix&)>;

struct IdealNorm {
  std::string name;
  NormFunction gamma;
  /// Declared compatibility constant.
  double C = 1.0;
  /// Exponent p when gamma is ||.||_{p->2}; 0 otherwise. Enables the oracle
  /// cross-check in generic_split.
  double p = 0.0;
};

/// gamma(A) = ||A||_{p->2} through opnorm_lower. Throws DomainError unless
/// 1 < p < 2.
IdealNorm make_gamma2(double p, const AscentOptions& options = {});

enum class SchattenKind { TraceNorm, HilbertSchmidt };

/// Sum of singular values or Frobenius norm of the matrix (unweighted). Both
/// throw ShapeError on operators whose domain and codomain sizes differ.
IdealNorm make_schatten_like(SchattenKind kind);

/// Largest singular value of the matrix: the operator norm of l_2^N, which is
/// L_2 -> L_2 on a uniform space.
double spectral_norm(const OperatorMatrix& a);

/// ||.||_{p->p} through opnorm_lower.
NormFunction lp_operator_norm(double p, const AscentOptions& options = {});

struct CompatibilityReport {
  std::string name;
  double declared_C = 1.0;
  /// max over pairs of gamma(T o x) / (||x|| gamma(T)).
  double measured_C = 0.0;
  std::size_t pairs = 0;
  std::size_t violations = 0;
  bool ok() const { return violations == 0; }
};

/// Checks gamma(T o x) <= C ||x|| gamma(T) (1 + kNormPadding) on each (T, x).
CompatibilityReport compatibility_check(const IdealNorm& ideal, const NormFunction& op_norm,
                                        const std::vector<std::pair<OperatorMatrix, OperatorMatrix>>& pairs);

/// Seeded random complex Gaussian pairs (T, x) on `space`.
std::vector<std::pair<OperatorMatrix, OperatorMatrix>> random_operator_pairs(const SpacePtr& space, std::size_t count,
                                                                             std::uint64_t seed);

/// Node norms with op_norm on V0 and gamma on V1.
NodeNormTable ideal_node_norms(const Semigroup& semigroup, const HarmonicMeasure& measure, const IdealNorm& ideal,
                               const NormFunction& op_norm, unsigned threads = 0);

/// The split with ||.||_{p->2} replaced by gamma and ||.||_{p->p} by op_norm.
/// Certificate fields norm_T0_pp and norm_T1_p2 hold op_norm(T0) and
/// gamma(T1).
SplitCertificate generic_split(const Semigroup& semigroup, const HarmonicMeasure& measure, const IdealNorm& ideal,
                               const NormFunction& op_norm, double epsilon, const SplitOptions& options = {});
SplitCertificate generic_split(const Semigroup& semigroup, const HarmonicMeasure& measure, const IdealNorm& ideal,
                               const NormFunction& op_norm, double epsilon, const NodeNormTable& table,
                               const SplitOptions& options = {});

}  // namespace hcsplit
