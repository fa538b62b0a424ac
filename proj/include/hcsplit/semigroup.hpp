// SPDX-License-Identifier: Apache-2.0
//
// Holomorphic semigroups T(z) = exp(-z G) with diagonalizable generator G,
// evaluated exactly at complex time.
#pragma once

#include <cstddef>
#include <vector>

#include "hcsplit/space.hpp"

namespace hcsplit {

/// A point of the closed right half-plane, in units of semigroup time.
struct ComplexTime {
  Complex z;

  ComplexTime() = default;
  ComplexTime(Complex value) : z(value) {}  // NOLINT(google-explicit-constructor)
  ComplexTime(double value) : z(value, 0.0) {}  // NOLINT(google-explicit-constructor)
};

class Semigroup {
 public:
  virtual ~Semigroup() = default;

  virtual const SpacePtr& space() const = 0;

  /// Matrix of T(z). Throws DomainError when Re z < 0.
  virtual OperatorMatrix evaluate(ComplexTime time) const = 0;

  /// Matrix of dT/dz at z, i.e. -G T(z).
  virtual OperatorMatrix derivative(ComplexTime time) const = 0;
};

/// Noise semigroup on {-1,1}^n: multiplier exp(-z|S|) on the Walsh character
/// w_S. Atom index bit i set means x_i = -1; subset S is the bitmask of its
/// members, so |S| = popcount(S).
class CubeNoiseSemigroup final : public Semigroup {
 public:
  explicit CubeNoiseSemigroup(int n);

  int dimension() const { return n_; }
  const SpacePtr& space() const override { return space_; }

  /// exp(-z|S|) indexed by subset bitmask.
  VectorXc multipliers(ComplexTime time) const;

  OperatorMatrix evaluate(ComplexTime time) const override;
  OperatorMatrix derivative(ComplexTime time) const override;

 private:
  OperatorMatrix from_multipliers(const VectorXc& m) const;

  int n_;
  SpacePtr space_;
};

/// T(z) = V diag(exp(-z lambda_k)) V^{-1} for an explicit invertible
/// eigenbasis V and nonnegative spectrum.
class DiagonalMultiplierSemigroup final : public Semigroup {
 public:
  DiagonalMultiplierSemigroup(SpacePtr space, MatrixXc eigenbasis, std::vector<double> spectrum);

  const SpacePtr& space() const override { return space_; }
  const MatrixXc& eigenbasis() const { return basis_; }
  const std::vector<double>& spectrum() const { return spectrum_; }
  /// 2-norm condition number of the eigenbasis.
  double condition_number() const { return condition_; }

  OperatorMatrix evaluate(ComplexTime time) const override;
  OperatorMatrix derivative(ComplexTime time) const override;

 private:
  SpacePtr space_;
  MatrixXc basis_;
  MatrixXc inverse_;
  std::vector<double> spectrum_;
  double condition_;
};

/// In-place unnormalized fast Walsh-Hadamard transform (butterflies of +/-).
/// Length must be a power of two.
void fwht_in_place(VectorXc& v);

/// Walsh-Fourier coefficients fhat(S) = E_x[f(x) w_S(x)] on a uniform cube.
FunctionVector walsh_transform(const FunctionVector& f);

/// Inverse of walsh_transform: f(x) = sum_S fhat(S) w_S(x).
FunctionVector inverse_walsh_transform(const FunctionVector& coefficients);

/// max |T(z1+z2) - T(z1) T(z2)| entrywise.
double semigroup_property_check(const Semigroup& semigroup, ComplexTime z1, ComplexTime z2);

/// Number of Boolean variables n with 2^n == size; throws ShapeError otherwise.
int cube_dimension_for(std::size_t size);

}  // namespace hcsplit
