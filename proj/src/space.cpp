// SPDX-License-Identifier: Apache-2.0
#include "hcsplit/space.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hcsplit/errors.hpp"

namespace hcsplit {

namespace {

void require_same_size(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    throw ShapeError(std::string(what) + ": expected dimension " + std::to_string(expected) +
                     ", got " + std::to_string(actual));
  }
}

}  // namespace

FiniteProbabilitySpace::FiniteProbabilitySpace(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) throw DomainError("probability space needs at least one atom");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0)) throw DomainError("atom weights must be strictly positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError("atom weights must sum to 1 (got " + std::to_string(total) + ")");
  }
}

std::shared_ptr<const FiniteProbabilitySpace> FiniteProbabilitySpace::uniform(std::size_t size) {
  if (size == 0) throw DomainError("probability space needs at least one atom");
  return std::make_shared<const FiniteProbabilitySpace>(
      std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

SpacePtr make_space(std::vector<double> weights) {
  return std::make_shared<const FiniteProbabilitySpace>(std::move(weights));
}

FunctionVector::FunctionVector(SpacePtr space, VectorXc values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) throw DomainError("function needs a space");
  require_same_size(space_->size(), static_cast<std::size_t>(values_.size()), "function values");
}

FunctionVector FunctionVector::constant(SpacePtr space, Complex value) {
  const auto n = static_cast<Eigen::Index>(space->size());
  return {std::move(space), VectorXc::Constant(n, value)};
}

FunctionVector FunctionVector::indicator(SpacePtr space, std::size_t atom) {
  if (atom >= space->size()) throw ShapeError("indicator atom out of range");
  VectorXc v = VectorXc::Zero(static_cast<Eigen::Index>(space->size()));
  v[static_cast<Eigen::Index>(atom)] = 1.0;
  return {std::move(space), std::move(v)};
}

FunctionVector FunctionVector::scaled(Complex c) const { return {space_, c * values_}; }

OperatorMatrix::OperatorMatrix(SpacePtr domain, SpacePtr codomain, MatrixXc entries)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), entries_(std::move(entries)) {
  if (!domain_ || !codomain_) throw DomainError("operator needs domain and codomain spaces");
  require_same_size(domain_->size(), static_cast<std::size_t>(entries_.cols()), "operator columns");
  require_same_size(codomain_->size(), static_cast<std::size_t>(entries_.rows()), "operator rows");
}

OperatorMatrix OperatorMatrix::identity(const SpacePtr& space) {
  const auto n = static_cast<Eigen::Index>(space->size());
  return {space, space, MatrixXc::Identity(n, n)};
}

OperatorMatrix OperatorMatrix::zero(const SpacePtr& domain, const SpacePtr& codomain) {
  return {domain, codomain,
          MatrixXc::Zero(static_cast<Eigen::Index>(codomain->size()),
                         static_cast<Eigen::Index>(domain->size()))};
}

OperatorMatrix OperatorMatrix::scaled(Complex c) const { return {domain_, codomain_, c * entries_}; }

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& other) {
  require_same_size(static_cast<std::size_t>(rows()), static_cast<std::size_t>(other.rows()), "operator sum rows");
  require_same_size(static_cast<std::size_t>(cols()), static_cast<std::size_t>(other.cols()), "operator sum columns");
  entries_ += other.entries_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& other) {
  require_same_size(static_cast<std::size_t>(rows()), static_cast<std::size_t>(other.rows()), "operator difference rows");
  require_same_size(static_cast<std::size_t>(cols()), static_cast<std::size_t>(other.cols()), "operator difference columns");
  entries_ -= other.entries_;
  return *this;
}

OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) { return a += b; }
OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) { return a -= b; }
OperatorMatrix operator*(Complex c, const OperatorMatrix& a) { return a.scaled(c); }

void require_exponent(double p) {
  if (!(p >= 1.0)) {
    throw InvalidExponentError("L_p exponent must satisfy p >= 1 (got " + std::to_string(p) + ")");
  }
}

double lp_norm(const VectorXc& values, std::span<const double> weights, double p) {
  require_exponent(p);
  require_same_size(weights.size(), static_cast<std::size_t>(values.size()), "lp_norm");
  if (std::isinf(p)) {
    double m = 0.0;
    for (Eigen::Index k = 0; k < values.size(); ++k) m = std::max(m, std::abs(values[k]));
    return m;
  }
  // Scale by the largest modulus so |v|^p cannot overflow or underflow.
  double scale = 0.0;
  for (Eigen::Index k = 0; k < values.size(); ++k) scale = std::max(scale, std::abs(values[k]));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double acc = 0.0;
  if (p == 2.0) {
    for (Eigen::Index k = 0; k < values.size(); ++k) {
      acc += weights[static_cast<std::size_t>(k)] * std::norm(values[k] / scale);
    }
    return scale * std::sqrt(acc);
  }
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    acc += weights[static_cast<std::size_t>(k)] * std::pow(std::abs(values[k]) / scale, p);
  }
  return scale * std::pow(acc, 1.0 / p);
}

double lp_norm(const FunctionVector& f, double p) {
  return lp_norm(f.values(), f.space()->weights(), p);
}

FunctionVector apply(const OperatorMatrix& a, const FunctionVector& f) {
  require_same_size(static_cast<std::size_t>(a.cols()), f.size(), "apply");
  return {a.codomain(), a.entries() * f.values()};
}

OperatorMatrix compose(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_size(static_cast<std::size_t>(a.cols()), static_cast<std::size_t>(b.rows()), "compose");
  return {b.domain(), a.codomain(), a.entries() * b.entries()};
}

double max_entry_deviation(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_size(static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(b.rows()), "deviation rows");
  require_same_size(static_cast<std::size_t>(a.cols()), static_cast<std::size_t>(b.cols()), "deviation columns");
  return (a.entries() - b.entries()).cwiseAbs().maxCoeff();
}

}  // namespace hcsplit
