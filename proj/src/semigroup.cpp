// SPDX-License-Identifier: Apache-2.0
#include "hcsplit/semigroup.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "hcsplit/errors.hpp"

namespace hcsplit {

namespace {

void require_right_half_plane(ComplexTime time) {
  if (!(time.z.real() >= 0.0)) {
    throw DomainError("semigroup evaluated at Re z < 0 (z = " + std::to_string(time.z.real()) + " + " +
                      std::to_string(time.z.imag()) + "i)");
  }
}

constexpr int kMaxCubeDimension = 20;

}  // namespace

int cube_dimension_for(std::size_t size) {
  if (size == 0 || !std::has_single_bit(size)) {
    throw ShapeError("Walsh transform needs a power-of-two length (got " + std::to_string(size) + ")");
  }
  return std::countr_zero(size);
}

void fwht_in_place(VectorXc& v) {
  const auto n = static_cast<std::size_t>(v.size());
  cube_dimension_for(n);
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const Complex a = v[static_cast<Eigen::Index>(j)];
        const Complex b = v[static_cast<Eigen::Index>(j + h)];
        v[static_cast<Eigen::Index>(j)] = a + b;
        v[static_cast<Eigen::Index>(j + h)] = a - b;
      }
    }
  }
}

FunctionVector walsh_transform(const FunctionVector& f) {
  VectorXc v = f.values();
  fwht_in_place(v);
  v /= static_cast<double>(v.size());
  return {f.space(), std::move(v)};
}

FunctionVector inverse_walsh_transform(const FunctionVector& coefficients) {
  VectorXc v = coefficients.values();
  fwht_in_place(v);
  return {coefficients.space(), std::move(v)};
}

CubeNoiseSemigroup::CubeNoiseSemigroup(int n) : n_(n) {
  if (n < 0 || n > kMaxCubeDimension) {
    throw CostGuardError("cube dimension must lie in [0, " + std::to_string(kMaxCubeDimension) + "]");
  }
  space_ = FiniteProbabilitySpace::uniform(std::size_t{1} << n);
}

VectorXc CubeNoiseSemigroup::multipliers(ComplexTime time) const {
  require_right_half_plane(time);
  const auto size = static_cast<Eigen::Index>(space_->size());
  // exp(-z k) for every level k, then spread by popcount.
  std::vector<Complex> level(static_cast<std::size_t>(n_) + 1);
  for (int k = 0; k <= n_; ++k) level[static_cast<std::size_t>(k)] = std::exp(-time.z * static_cast<double>(k));
  VectorXc m(size);
  for (Eigen::Index s = 0; s < size; ++s) {
    m[s] = level[static_cast<std::size_t>(std::popcount(static_cast<unsigned long>(s)))];
  }
  return m;
}

OperatorMatrix CubeNoiseSemigroup::from_multipliers(const VectorXc& m) const {
  // The operator is translation invariant: T_{xy} = k(x xor y) where the
  // kernel k is the inverse Walsh transform of the multiplier sequence.
  VectorXc kernel = m;
  fwht_in_place(kernel);
  kernel /= static_cast<double>(kernel.size());
  const auto size = kernel.size();
  MatrixXc t(size, size);
  for (Eigen::Index x = 0; x < size; ++x) {
    for (Eigen::Index y = 0; y < size; ++y) t(x, y) = kernel[x ^ y];
  }
  return {space_, space_, std::move(t)};
}

OperatorMatrix CubeNoiseSemigroup::evaluate(ComplexTime time) const {
  return from_multipliers(multipliers(time));
}

OperatorMatrix CubeNoiseSemigroup::derivative(ComplexTime time) const {
  VectorXc m = multipliers(time);
  for (Eigen::Index s = 0; s < m.size(); ++s) {
    m[s] *= -static_cast<double>(std::popcount(static_cast<unsigned long>(s)));
  }
  return from_multipliers(m);
}

DiagonalMultiplierSemigroup::DiagonalMultiplierSemigroup(SpacePtr space, MatrixXc eigenbasis,
                                                         std::vector<double> spectrum)
    : space_(std::move(space)), basis_(std::move(eigenbasis)), spectrum_(std::move(spectrum)) {
  const auto n = static_cast<Eigen::Index>(space_->size());
  if (basis_.rows() != n || basis_.cols() != n) throw ShapeError("eigenbasis must be square of the space size");
  if (static_cast<Eigen::Index>(spectrum_.size()) != n) throw ShapeError("spectrum length must equal the space size");
  for (double lambda : spectrum_) {
    if (!(lambda >= 0.0)) throw DomainError("spectrum must be nonnegative");
  }
  Eigen::JacobiSVD<MatrixXc> svd(basis_);
  const auto& sv = svd.singularValues();
  const double smallest = sv[sv.size() - 1];
  if (!(smallest > 0.0)) throw ConditioningError("eigenbasis is singular");
  condition_ = sv[0] / smallest;
  if (!std::isfinite(condition_) || condition_ > 1e12) {
    throw ConditioningError("eigenbasis condition number too large: " + std::to_string(condition_));
  }
  inverse_ = basis_.fullPivLu().inverse();
}

OperatorMatrix DiagonalMultiplierSemigroup::evaluate(ComplexTime time) const {
  require_right_half_plane(time);
  VectorXc d(static_cast<Eigen::Index>(spectrum_.size()));
  for (std::size_t k = 0; k < spectrum_.size(); ++k) d[static_cast<Eigen::Index>(k)] = std::exp(-time.z * spectrum_[k]);
  return {space_, space_, basis_ * d.asDiagonal() * inverse_};
}

OperatorMatrix DiagonalMultiplierSemigroup::derivative(ComplexTime time) const {
  require_right_half_plane(time);
  VectorXc d(static_cast<Eigen::Index>(spectrum_.size()));
  for (std::size_t k = 0; k < spectrum_.size(); ++k) {
    d[static_cast<Eigen::Index>(k)] = -spectrum_[k] * std::exp(-time.z * spectrum_[k]);
  }
  return {space_, space_, basis_ * d.asDiagonal() * inverse_};
}

double semigroup_property_check(const Semigroup& semigroup, ComplexTime z1, ComplexTime z2) {
  const OperatorMatrix joint = semigroup.evaluate(ComplexTime{z1.z + z2.z});
  const OperatorMatrix product = compose(semigroup.evaluate(z1), semigroup.evaluate(z2));
  return max_entry_deviation(joint, product);
}

}  // namespace hcsplit
