// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace hcsplit {

/// Nodes and weights on the unit interval [0, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  /// 1 - nodes[i], computed without cancellation.
  std::vector<double> complements;

  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule mapped to [0, 1]. Nodes are ascending.
QuadratureRule gauss_legendre(int n);

/// Gauss-Legendre in u composed with x = u^q / (u^q + (1-u)^q). Integrands
/// behaving like x^beta (1-x)^gamma pick up a factor u^{q-1} at each end, so
/// the rule keeps converging fast for corner-type singularities.
QuadratureRule graded_gauss_legendre(int n, double grading);

using ComplexIntegrand = std::function<std::complex<double>(double)>;

/// Adaptive bisection on [a, b] with a 16-point Gauss-Legendre panel rule.
/// Stops refining a panel when its value agrees with the sum of its halves to
/// `tolerance` (absolute). Returns the accumulated integral.
std::complex<double> integrate_adaptive(const ComplexIntegrand& f, double a, double b, double tolerance,
                                        int max_depth = 40);

}  // namespace hcsplit
