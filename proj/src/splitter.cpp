// SPDX-License-Identifier: Apache-2.0
#include "hcsplit/splitter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include "hcsplit/errors.hpp"
#include "parallel.hpp"

namespace hcsplit {

namespace {

void require_split_inputs(double p, double epsilon) {
  if (!(p > 1.0 && p < 2.0)) throw DomainError("split needs 1 < p < 2 (got p = " + std::to_string(p) + ")");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw DomainError("split needs 0 < epsilon <= 1 (got epsilon = " + std::to_string(epsilon) + ")");
  }
}

void require_theta(double theta) {
  if (!(theta >= 1e-6 && theta <= 1.0 - 1e-6)) {
    throw IllConditionedSplitError("theta = " + std::to_string(theta) +
                                   " is too close to 0 or 1; T0 or T1 would carry a huge 1/theta factor");
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SplitNorms lp_split_norms(double p, const AscentOptions& options) {
  return {"L" + format_double(p) + "->L" + format_double(p), "L" + format_double(p) + "->L2",
          [p, options](const OperatorMatrix& a) { return opnorm_lower(a, p, p, options).value; },
          [p, options](const OperatorMatrix& a) { return opnorm_lower(a, p, 2.0, options).value; }};
}

NodeNormTable node_norms(const Semigroup& semigroup, const HarmonicMeasure& measure, const SplitNorms& norms,
                         unsigned threads) {
  const auto& nodes = measure.nodes();
  NodeNormTable table;
  table.values.assign(nodes.size(), 0.0);
  detail::parallel_for(nodes.size(), threads, [&](std::size_t i) {
    const OperatorMatrix tz = semigroup.evaluate(nodes[i].point.z);
    table.values[i] = nodes[i].point.part == BoundaryPart::V0 ? norms.v0(tz) : norms.v1(tz);
  });
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    double& c = nodes[i].point.part == BoundaryPart::V0 ? table.C0 : table.C1;
    c = std::max(c, table.values[i]);
  }
  return table;
}

SplitCertificate split_with(const Semigroup& semigroup, const HarmonicMeasure& measure, double epsilon,
                            const SplitNorms& norms, const NodeNormTable& table, const SplitOptions& options,
                            double p) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw DomainError("split needs 0 < epsilon <= 1 (got epsilon = " + std::to_string(epsilon) + ")");
  }
  const double theta = measure.theta();
  require_theta(theta);
  const auto& nodes = measure.nodes();
  if (table.values.size() != nodes.size()) throw ShapeError("node norm table does not match the quadrature nodes");
  const double v1_log10 = (theta - 1.0) / theta * std::log10(epsilon);
  if (v1_log10 > 300.0) {
    throw NumericalError("|psi| on V1 is 10^" + std::to_string(v1_log10) + " at theta = " + std::to_string(theta) +
                         ", epsilon = " + format_double(epsilon) + "; outside double range");
  }

  // Node operators are formed concurrently and summed in node order.
  std::vector<MatrixXc> terms(nodes.size());
  detail::parallel_for(nodes.size(), options.threads, [&](std::size_t i) {
    const auto& node = nodes[i];
    const double mass = node.point.part == BoundaryPart::V0 ? 1.0 - theta : theta;
    terms[i] = (node.weight / mass * psi(measure, epsilon, node)) * semigroup.evaluate(node.point.z).entries();
  });
  const auto& space = semigroup.space();
  OperatorMatrix t0 = OperatorMatrix::zero(space, space);
  OperatorMatrix t1 = OperatorMatrix::zero(space, space);
  MatrixXc sum0 = MatrixXc::Zero(t0.rows(), t0.cols());
  MatrixXc sum1 = MatrixXc::Zero(t1.rows(), t1.cols());
  SplitCertificate cert;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].point.part == BoundaryPart::V0) {
      sum0 += terms[i];
      ++cert.nodes_v0;
    } else {
      sum1 += terms[i];
      ++cert.nodes_v1;
    }
  }
  if (!sum0.allFinite() || !sum1.allFinite()) throw NumericalError("T0 or T1 has non-finite entries");
  t0 = OperatorMatrix(space, space, std::move(sum0));
  t1 = OperatorMatrix(space, space, std::move(sum1));

  const OperatorMatrix target = semigroup.evaluate(measure.domain().t());
  cert.p = p;
  cert.epsilon = epsilon;
  cert.theta = theta;
  cert.v0_norm_name = norms.v0_name;
  cert.v1_norm_name = norms.v1_name;
  cert.C0_measured = table.C0;
  cert.C1_measured = table.C1;
  cert.norm_T0_pp = norms.v0(t0);
  cert.norm_T1_p2 = norms.v1(t1);
  cert.exponent = (theta - 1.0) / theta;

  if (options.oracle_cross_check && p > 1.0 && space->size() <= 6) {
    const double o0 = opnorm_oracle(t0, p, p);
    const double o1 = opnorm_oracle(t1, p, 2.0);
    auto gap = [](double oracle, double estimate) { return estimate > 0.0 ? (oracle - estimate) / estimate : 0.0; };
    cert.oracle_gap = std::max(gap(o0, cert.norm_T0_pp), gap(o1, cert.norm_T1_p2));
    // Both are witnessed ratios, so the larger one is still a lower bound.
    cert.norm_T0_pp = std::max(cert.norm_T0_pp, o0);
    cert.norm_T1_p2 = std::max(cert.norm_T1_p2, o1);
  }

  cert.recon_error_pp = norms.v0(target - (1.0 - theta) * t0 - theta * t1);
  cert.distance_theta_T1 = norms.v0(target - theta * t1);
  cert.distance_T1 = norms.v0(target - t1);
  cert.bound_T0_ok = cert.norm_T0_pp <= cert.C0_measured * epsilon * (1.0 + kNormPadding);
  cert.bound_T1_ok = cert.norm_T1_p2 <= cert.C1_measured * std::pow(epsilon, cert.exponent) * (1.0 + kNormPadding);
  cert.T0 = std::move(t0);
  cert.T1 = std::move(t1);
  return cert;
}

SplitCertificate split(const Semigroup& semigroup, const HarmonicMeasure& measure, double p, double epsilon,
                       const SplitOptions& options) {
  require_split_inputs(p, epsilon);
  require_theta(measure.theta());
  const NodeNormTable table = node_norms(semigroup, measure, lp_split_norms(p, options.node_ascent), options.threads);
  return split_with(semigroup, measure, epsilon, lp_split_norms(p, options.operator_ascent), table, options, p);
}

Approximant approximant(const Semigroup& semigroup, const HarmonicMeasure& measure, double p, double epsilon,
                        const SplitOptions& options) {
  SplitCertificate cert = split(semigroup, measure, p, epsilon, options);
  OperatorMatrix t_prime = cert.theta * *cert.T1;
  const double gamma2 = opnorm_lower(t_prime, p, 2.0, options.operator_ascent).value;
  const double error = cert.distance_theta_T1;
  const double distance = cert.distance_T1;
  return {std::move(t_prime), error, gamma2, distance, std::move(cert)};
}

std::vector<DimensionRow> dimension_sweep(const HarmonicMeasure& measure, double p, double epsilon,
                                          const std::vector<int>& n_range, const SplitOptions& options) {
  for (int n : n_range) {
    if (n > 10) throw CostGuardError("dimension sweep is limited to n <= 10 (got n = " + std::to_string(n) + ")");
    if (n < 1) throw DomainError("dimension sweep needs n >= 1 (got n = " + std::to_string(n) + ")");
  }
  std::vector<DimensionRow> rows;
  rows.reserve(n_range.size());
  for (int n : n_range) {
    const CubeNoiseSemigroup cube(n);
    const SplitCertificate cert = split(cube, measure, p, epsilon, options);
    rows.push_back({n, cert.theta, cert.C0_measured, cert.C1_measured, cert.norm_T0_pp, cert.norm_T1_p2});
  }
  return rows;
}

double variation_factor(const std::vector<double>& values) {
  if (values.empty()) return 1.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (!(*lo > 0.0)) return std::numeric_limits<double>::infinity();
  return *hi / *lo;
}

double slope_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw ShapeError("slope fit needs equally many x and y values");
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (xs.size() < 2 || !(sxx > 0.0)) throw DomainError("slope fit needs at least two distinct x values");
  return sxy / sxx;
}

void write_certificate(std::ostream& out, const SplitCertificate& c, bool include_matrices) {
  auto line = [&](const char* key, const std::string& value) { out << key << " = " << value << '\n'; };
  auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
  line("epsilon", format_double(c.epsilon));
  if (c.p > 0.0) line("p", format_double(c.p));
  line("theta", format_double(c.theta));
  line("exponent", format_double(c.exponent));
  line("v0_norm", c.v0_norm_name);
  line("v1_norm", c.v1_norm_name);
  line("nodes_v0", std::to_string(c.nodes_v0));
  line("nodes_v1", std::to_string(c.nodes_v1));
  line("C0_measured", format_double(c.C0_measured));
  line("C1_measured", format_double(c.C1_measured));
  line("norm_T0_pp", format_double(c.norm_T0_pp));
  line("norm_T1_p2", format_double(c.norm_T1_p2));
  line("bound_T0", format_double(c.C0_measured * c.epsilon * (1.0 + kNormPadding)));
  line("bound_T1", format_double(c.C1_measured * std::pow(c.epsilon, c.exponent) * (1.0 + kNormPadding)));
  line("bound_T0_ok", flag(c.bound_T0_ok));
  line("bound_T1_ok", flag(c.bound_T1_ok));
  line("recon_error_pp", format_double(c.recon_error_pp));
  line("distance_T_minus_theta_T1", format_double(c.distance_theta_T1));
  line("distance_T_minus_T1", format_double(c.distance_T1));
  line("oracle_gap", c.oracle_gap ? format_double(*c.oracle_gap) : std::string("not-run"));
  if (!include_matrices) return;
  auto matrix = [&](const char* name, const std::optional<OperatorMatrix>& m) {
    if (!m) return;
    out << "[" << name << "]\n";
    char buf[96];
    for (Eigen::Index r = 0; r < m->rows(); ++r) {
      for (Eigen::Index k = 0; k < m->cols(); ++k) {
        const Complex v = m->entries()(r, k);
        std::snprintf(buf, sizeof buf, "%s%.17g%+.17gi", k == 0 ? "" : " ", v.real(), v.imag());
        out << buf;
      }
      out << '\n';
    }
  };
  matrix("T0", c.T0);
  matrix("T1", c.T1);
}

}  // namespace hcsplit
