// SPDX-License-Identifier: Apache-2.0
#include "hcsplit/subspace.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

#include "hcsplit/errors.hpp"
#include "hcsplit/opnorm.hpp"

namespace hcsplit {

namespace {

constexpr double kMaxCondition = 1e12;

MatrixXc weighted_gram(const MatrixXc& b, std::span<const double> weights) {
  MatrixXc wb = b;
  for (Eigen::Index k = 0; k < wb.rows(); ++k) wb.row(k) *= weights[static_cast<std::size_t>(k)];
  return b.adjoint() * wb;
}

FunctionVector walsh_character(const SpacePtr& space, unsigned mask) {
  VectorXc v(static_cast<Eigen::Index>(space->size()));
  for (Eigen::Index x = 0; x < v.size(); ++x) {
    v[x] = std::popcount(static_cast<unsigned>(x) & mask) % 2 == 0 ? 1.0 : -1.0;
  }
  return {space, std::move(v)};
}

// Compass search on the 2d real coordinates of the coefficient vector;
// sign = +1 maximizes, -1 minimizes.
template <class Objective>
double compass(const Objective& objective, VectorXc c, double sign) {
  double value = sign * objective(c);
  double step = 0.5;
  int evaluations = 0;
  while (step > 1e-9 && evaluations < 100000) {
    bool improved = false;
    for (Eigen::Index k = 0; k < c.size(); ++k) {
      for (const Complex dir : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
        VectorXc trial = c;
        trial[k] += step * dir;
        const double r = sign * objective(trial);
        ++evaluations;
        if (r > value) {
          value = r;
          c = trial / trial.norm();
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return sign * value;
}

}  // namespace

double hermitian_condition(const MatrixXc& gram) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> solver(gram, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  const double lo = ev.minCoeff();
  const double hi = ev.maxCoeff();
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

Subspace::Subspace(std::vector<FunctionVector> basis) : basis_(std::move(basis)) {
  if (basis_.empty()) throw ShapeError("subspace needs at least one basis vector");
  const SpacePtr& space = basis_.front().space();
  matrix_ = MatrixXc(static_cast<Eigen::Index>(space->size()), static_cast<Eigen::Index>(basis_.size()));
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    if (basis_[j].space()->size() != space->size()) {
      throw ShapeError("subspace basis vectors live on different spaces");
    }
    matrix_.col(static_cast<Eigen::Index>(j)) = basis_[j].values();
  }
  gram_ = weighted_gram(matrix_, space->weights());
  condition_ = hermitian_condition(gram_);
  if (!(condition_ <= kMaxCondition)) {
    throw ConditioningError("subspace basis is degenerate (Gram condition number " + std::to_string(condition_) + ")");
  }
}

Subspace Subspace::first_level(int n) {
  std::vector<unsigned> masks;
  for (int i = 0; i < n; ++i) masks.push_back(1u << i);
  return walsh_span(n, masks);
}

Subspace Subspace::walsh_span(int n, const std::vector<unsigned>& masks) {
  if (n < 1 || n > 20) throw DomainError("Walsh subspace needs 1 <= n <= 20");
  const auto space = FiniteProbabilitySpace::uniform(std::size_t{1} << n);
  std::vector<FunctionVector> basis;
  for (unsigned mask : masks) {
    if (mask >= (1u << n)) throw DomainError("Walsh mask " + std::to_string(mask) + " exceeds 2^n");
    basis.push_back(walsh_character(space, mask));
  }
  return Subspace(std::move(basis));
}

IsomorphismBounds restricted_isomorphism_check(const OperatorMatrix& t, const Subspace& x, double p,
                                               const IsomorphismOptions& options) {
  require_exponent(p);
  if (t.cols() != x.matrix().rows()) throw ShapeError("operator and subspace sizes differ");
  const MatrixXc image = t.entries() * x.matrix();
  const auto in_w = x.space()->weights();
  const auto out_w = t.codomain()->weights();

  if (p == 2.0) {
    // Extreme values of c^H (TB)^H W (TB) c / c^H G c.
    Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXc> solver(weighted_gram(image, out_w), x.gram(),
                                                              Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {std::sqrt(std::max(0.0, ev.minCoeff())), std::sqrt(std::max(0.0, ev.maxCoeff()))};
  }

  auto ratio = [&](const VectorXc& c) {
    const double den = lp_norm(x.matrix() * c, in_w, p);
    if (!(den > 0.0)) return 0.0;
    return lp_norm(image * c, out_w, p) / den;
  };
  const auto d = static_cast<Eigen::Index>(x.dim());
  std::vector<VectorXc> starts;
  for (Eigen::Index k = 0; k < d; ++k) starts.push_back(VectorXc::Unit(d, k));
  starts.push_back(VectorXc::Ones(d) / std::sqrt(static_cast<double>(d)));
  std::mt19937_64 engine(options.seed);
  std::normal_distribution<double> normal;
  for (int r = 0; r < options.restarts; ++r) {
    VectorXc c(d);
    for (Eigen::Index k = 0; k < d; ++k) c[k] = Complex(normal(engine), normal(engine));
    starts.push_back(c / c.norm());
  }
  IsomorphismBounds bounds{std::numeric_limits<double>::infinity(), 0.0};
  for (const auto& c : starts) {
    bounds.upper_bound = std::max(bounds.upper_bound, compass(ratio, c, 1.0));
    bounds.lower_bound = std::min(bounds.lower_bound, compass(ratio, c, -1.0));
  }
  return bounds;
}

Projection build_projection(const OperatorMatrix& t, const Subspace& x, double p, const IsomorphismOptions& options) {
  const IsomorphismBounds bounds = restricted_isomorphism_check(t, x, p, options);
  if (!(bounds.lower_bound > 1e-8)) {
    throw ConditioningError("T restricted to X is not an isomorphism (lower bound " +
                            std::to_string(bounds.lower_bound) + ")");
  }
  const MatrixXc image = t.entries() * x.matrix();
  const auto out_w = t.codomain()->weights();
  const MatrixXc image_gram = weighted_gram(image, out_w);
  const double condition = hermitian_condition(image_gram);
  if (!(condition <= kMaxCondition)) {
    throw ConditioningError("T(X) Gram matrix is numerically singular (condition " + std::to_string(condition) + ")");
  }
  MatrixXc weighted_image_adjoint = image.adjoint();
  for (Eigen::Index k = 0; k < weighted_image_adjoint.cols(); ++k) {
    weighted_image_adjoint.col(k) *= out_w[static_cast<std::size_t>(k)];
  }
  // Coefficients of Q T f in the basis TB, then mapped back through B.
  const MatrixXc coefficients = image_gram.ldlt().solve(weighted_image_adjoint * t.entries());
  OperatorMatrix proj(t.domain(), t.domain(), x.matrix() * coefficients);

  Projection out{proj, 0.0, 0.0, 0.0, condition, bounds};
  out.idempotence_residual = max_entry_deviation(compose(proj, proj), proj);
  for (const auto& f : x.basis()) {
    const VectorXc diff = proj.entries() * f.values() - f.values();
    out.fix_residual = std::max(out.fix_residual, lp_norm(diff, x.space()->weights(), p));
  }
  out.norm_pp = opnorm_lower(proj, p, p).value;
  return out;
}

}  // namespace hcsplit
