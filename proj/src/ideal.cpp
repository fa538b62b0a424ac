// SPDX-License-Identifier: Apache-2.0
#include "hcsplit/ideal.hpp"

#include <cstdio>
#include <random>

#include "hcsplit/errors.hpp"

namespace hcsplit {

namespace {

void require_square(const OperatorMatrix& a, const char* name) {
  if (a.domain()->size() != a.codomain()->size()) {
    throw ShapeError(std::string(name) + " needs an operator on a single space (got " +
                     std::to_string(a.codomain()->size()) + "x" + std::to_string(a.domain()->size()) + ")");
  }
}

SplitNorms to_split_norms(const IdealNorm& ideal, const NormFunction& op_norm) {
  return {"op", ideal.name, op_norm, ideal.gamma};
}

}  // namespace

IdealNorm make_gamma2(double p, const AscentOptions& options) {
  if (!(p > 1.0 && p < 2.0)) throw DomainError("gamma_2 instance needs 1 < p < 2 (got " + std::to_string(p) + ")");
  char name[48];
  std::snprintf(name, sizeof name, "gamma2(p=%g)", p);
  return {name, [p, options](const OperatorMatrix& a) { return opnorm_lower(a, p, 2.0, options).value; }, 1.0, p};
}

IdealNorm make_schatten_like(SchattenKind kind) {
  if (kind == SchattenKind::HilbertSchmidt) {
    return {"hilbert-schmidt",
            [](const OperatorMatrix& a) {
              require_square(a, "hilbert-schmidt norm");
              return a.entries().norm();
            },
            1.0, 0.0};
  }
  return {"trace-norm",
          [](const OperatorMatrix& a) {
            require_square(a, "trace norm");
            return Eigen::JacobiSVD<MatrixXc>(a.entries()).singularValues().sum();
          },
          1.0, 0.0};
}

double spectral_norm(const OperatorMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  return Eigen::JacobiSVD<MatrixXc>(a.entries()).singularValues()(0);
}

NormFunction lp_operator_norm(double p, const AscentOptions& options) {
  return [p, options](const OperatorMatrix& a) { return opnorm_lower(a, p, p, options).value; };
}

CompatibilityReport compatibility_check(const IdealNorm& ideal, const NormFunction& op_norm,
                                        const std::vector<std::pair<OperatorMatrix, OperatorMatrix>>& pairs) {
  CompatibilityReport report{ideal.name, ideal.C, 0.0, pairs.size(), 0};
  for (const auto& [t, x] : pairs) {
    const double lhs = ideal.gamma(compose(t, x));
    const double rhs = ideal.gamma(t) * op_norm(x);
    if (rhs > 0.0) report.measured_C = std::max(report.measured_C, lhs / rhs);
    if (lhs > ideal.C * rhs * (1.0 + kNormPadding)) ++report.violations;
  }
  return report;
}

std::vector<std::pair<OperatorMatrix, OperatorMatrix>> random_operator_pairs(const SpacePtr& space, std::size_t count,
                                                                             std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal;
  const auto n = static_cast<Eigen::Index>(space->size());
  auto draw = [&] {
    MatrixXc m(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) m(i, j) = Complex(normal(engine), normal(engine));
    }
    return OperatorMatrix(space, space, std::move(m));
  };
  std::vector<std::pair<OperatorMatrix, OperatorMatrix>> pairs;
  pairs.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    OperatorMatrix t = draw();
    OperatorMatrix x = draw();
    pairs.emplace_back(std::move(t), std::move(x));
  }
  return pairs;
}

NodeNormTable ideal_node_norms(const Semigroup& semigroup, const HarmonicMeasure& measure, const IdealNorm& ideal,
                               const NormFunction& op_norm, unsigned threads) {
  return node_norms(semigroup, measure, to_split_norms(ideal, op_norm), threads);
}

SplitCertificate generic_split(const Semigroup& semigroup, const HarmonicMeasure& measure, const IdealNorm& ideal,
                               const NormFunction& op_norm, double epsilon, const SplitOptions& options) {
  const NodeNormTable table = ideal_node_norms(semigroup, measure, ideal, op_norm, options.threads);
  return generic_split(semigroup, measure, ideal, op_norm, epsilon, table, options);
}

SplitCertificate generic_split(const Semigroup& semigroup, const HarmonicMeasure& measure, const IdealNorm& ideal,
                               const NormFunction& op_norm, double epsilon, const NodeNormTable& table,
                               const SplitOptions& options) {
  return split_with(semigroup, measure, epsilon, to_split_norms(ideal, op_norm), table, options, ideal.p);
}

}  // namespace hcsplit
