// SPDX-License-Identifier: Apache-2.0
//
// Finite probability spaces, functions on them and dense operators between
// them. Everything is complex double precision; real data is embedded.
#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace hcsplit {

using Complex = std::complex<double>;
using VectorXc = Eigen::VectorXcd;
using MatrixXc = Eigen::MatrixXcd;

/// Atoms with strictly positive probabilities summing to one.
class FiniteProbabilitySpace {
 public:
  explicit FiniteProbabilitySpace(std::vector<double> weights);

  /// Uniform measure on `size` atoms.
  static std::shared_ptr<const FiniteProbabilitySpace> uniform(std::size_t size);

  std::size_t size() const { return weights_.size(); }
  std::span<const double> weights() const { return weights_; }
  double weight(std::size_t k) const { return weights_[k]; }

 private:
  std::vector<double> weights_;
};

using SpacePtr = std::shared_ptr<const FiniteProbabilitySpace>;

SpacePtr make_space(std::vector<double> weights);

/// An element of L_p over a finite probability space.
class FunctionVector {
 public:
  FunctionVector(SpacePtr space, VectorXc values);

  static FunctionVector constant(SpacePtr space, Complex value);
  static FunctionVector indicator(SpacePtr space, std::size_t atom);

  const SpacePtr& space() const { return space_; }
  const VectorXc& values() const { return values_; }
  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
  Complex operator[](std::size_t k) const { return values_[static_cast<Eigen::Index>(k)]; }

  FunctionVector scaled(Complex c) const;

 private:
  SpacePtr space_;
  VectorXc values_;
};

/// Dense matrix in atom coordinates mapping functions on `domain` to
/// functions on `codomain`.
class OperatorMatrix {
 public:
  OperatorMatrix(SpacePtr domain, SpacePtr codomain, MatrixXc entries);

  static OperatorMatrix identity(const SpacePtr& space);
  static OperatorMatrix zero(const SpacePtr& domain, const SpacePtr& codomain);

  const SpacePtr& domain() const { return domain_; }
  const SpacePtr& codomain() const { return codomain_; }
  const MatrixXc& entries() const { return entries_; }
  Eigen::Index rows() const { return entries_.rows(); }
  Eigen::Index cols() const { return entries_.cols(); }

  OperatorMatrix scaled(Complex c) const;

  OperatorMatrix& operator+=(const OperatorMatrix& other);
  OperatorMatrix& operator-=(const OperatorMatrix& other);

 private:
  SpacePtr domain_;
  SpacePtr codomain_;
  MatrixXc entries_;
};

OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b);
OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b);
OperatorMatrix operator*(Complex c, const OperatorMatrix& a);

/// (sum_k w_k |v_k|^p)^(1/p), or max_k |v_k| when p is infinite.
/// Throws InvalidExponentError for p < 1 (or NaN).
double lp_norm(const VectorXc& values, std::span<const double> weights, double p);
double lp_norm(const FunctionVector& f, double p);

FunctionVector apply(const OperatorMatrix& a, const FunctionVector& f);

/// a after b: (a o b) f = a(b f).
OperatorMatrix compose(const OperatorMatrix& a, const OperatorMatrix& b);

/// Largest entrywise modulus of a - b.
double max_entry_deviation(const OperatorMatrix& a, const OperatorMatrix& b);

void require_exponent(double p);

}  // namespace hcsplit
