// SPDX-License-Identifier: Apache-2.0
#include "hcsplit/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hcsplit/errors.hpp"

namespace hcsplit {

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("Gauss-Legendre rule needs at least one node");
  if (n == 1) return {{0.5}, {1.0}, {0.5}};
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  rule.complements.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double derivative = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      derivative = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / derivative;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      // Recompute the derivative at the converged node.
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      derivative = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    // Map [-1, 1] to [0, 1]; x is descending in i.
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = 0.5 * (1.0 - x);
    rule.nodes[hi] = 0.5 * (1.0 + x);
    rule.complements[lo] = rule.nodes[hi];
    rule.complements[hi] = rule.nodes[lo];
    rule.weights[lo] = 0.5 * w;
    rule.weights[hi] = 0.5 * w;
  }
  return rule;
}

QuadratureRule graded_gauss_legendre(int n, double grading) {
  if (!(grading >= 1.0)) throw DomainError("grading exponent must be >= 1");
  const QuadratureRule base = gauss_legendre(n);
  QuadratureRule rule;
  rule.nodes.reserve(base.size());
  rule.weights.reserve(base.size());
  rule.complements.reserve(base.size());
  const double q = grading;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const double u = base.nodes[i];
    const double v = base.complements[i];
    const double a = std::pow(u, q);
    const double b = std::pow(v, q);
    const double den = a + b;
    rule.nodes.push_back(a / den);
    rule.complements.push_back(b / den);
    const double jac = q * std::pow(u, q - 1.0) * std::pow(v, q - 1.0) / (den * den);
    rule.weights.push_back(base.weights[i] * jac);
  }
  return rule;
}

namespace {

const QuadratureRule& panel_rule() {
  static const QuadratureRule rule = gauss_legendre(16);
  return rule;
}

std::complex<double> panel(const ComplexIntegrand& f, double a, double b) {
  const auto& rule = panel_rule();
  std::complex<double> acc = 0.0;
  const double h = b - a;
  for (std::size_t i = 0; i < rule.size(); ++i) acc += rule.weights[i] * f(a + h * rule.nodes[i]);
  return h * acc;
}

std::complex<double> refine(const ComplexIntegrand& f, double a, double b, std::complex<double> whole,
                            double tolerance, int depth) {
  const double mid = 0.5 * (a + b);
  const std::complex<double> left = panel(f, a, mid);
  const std::complex<double> right = panel(f, mid, b);
  const std::complex<double> split = left + right;
  if (std::abs(split - whole) <= tolerance || depth <= 0) return split;
  return refine(f, a, mid, left, 0.5 * tolerance, depth - 1) +
         refine(f, mid, b, right, 0.5 * tolerance, depth - 1);
}

}  // namespace

std::complex<double> integrate_adaptive(const ComplexIntegrand& f, double a, double b, double tolerance,
                                        int max_depth) {
  return refine(f, a, b, panel(f, a, b), tolerance, max_depth);
}

}  // namespace hcsplit
