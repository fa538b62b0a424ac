// SPDX-License-Identifier: Apache-2.0
//
// Subspaces X of L_p on which an operator T is an isomorphism, and the
// projection (T|_X)^{-1} Q T onto X, Q the L_2 orthogonal projection onto
// T(X).
#pragma once

#include <cstdint>
#include <vector>

#include "hcsplit/space.hpp"

namespace hcsplit {

class Subspace {
 public:
  /// Throws ShapeError for an empty basis or mixed spaces and
  /// ConditioningError when the L_2 Gram matrix has condition number above
  /// 1e12 (linearly dependent basis).
  explicit Subspace(std::vector<FunctionVector> basis);

  /// span{x_1, ..., x_n}: the first-level Walsh characters on {-1,1}^n.
  static Subspace first_level(int n);
  /// span{w_S : S in masks} on {-1,1}^n.
  static Subspace walsh_span(int n, const std::vector<unsigned>& masks);

  const std::vector<FunctionVector>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  const SpacePtr& space() const { return basis_.front().space(); }
  /// Columns are the basis functions.
  const MatrixXc& matrix() const { return matrix_; }
  /// G_ij = E[conj(b_i) b_j].
  const MatrixXc& gram() const { return gram_; }
  double gram_condition() const { return condition_; }

 private:
  std::vector<FunctionVector> basis_;
  MatrixXc matrix_;
  MatrixXc gram_;
  double condition_ = 1.0;
};

/// Hermitian positive matrix condition number (ratio of extreme eigenvalues).
double hermitian_condition(const MatrixXc& gram);

struct IsomorphismBounds {
  /// Estimated inf and sup of ||T f||_p / ||f||_p over nonzero f in X.
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  bool is_isomorphism() const { return lower_bound > 0.0; }
};

struct IsomorphismOptions {
  int restarts = 16;
  std::uint64_t seed = 7;
};

/// Multistart compass search over the coefficient sphere of X for both
/// extremes; p = 2 is solved exactly by a generalized eigenproblem.
IsomorphismBounds restricted_isomorphism_check(const OperatorMatrix& t, const Subspace& x, double p,
                                               const IsomorphismOptions& options = {});

struct Projection {
  OperatorMatrix P;
  double norm_pp = 0.0;
  /// max entry of |P o P - P|.
  double idempotence_residual = 0.0;
  /// max over basis vectors f of ||P f - f||_p.
  double fix_residual = 0.0;
  /// Condition number of the Gram matrix of T applied to the basis.
  double image_gram_condition = 1.0;
  IsomorphismBounds bounds;
};

/// P = B (TB)^+ T with the pseudo-inverse taken in weighted L_2, i.e.
/// (T|_X)^{-1} Q T. Throws ConditioningError when the restricted lower bound
/// is <= 1e-8 or the image Gram matrix is numerically singular.
Projection build_projection(const OperatorMatrix& t, const Subspace& x, double p,
                            const IsomorphismOptions& options = {});

}  // namespace hcsplit
