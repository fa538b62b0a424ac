// SPDX-License-Identifier: Apache-2.0
//
// Independent reference computations used only by the tests.
#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;

/// Noise kernel on {-1,1}^n from the product formula:
/// T_xy = ((1 + w)/2)^{n-d} ((1 - w)/2)^d with w = e^{-z}, d = Hamming distance.
inline Eigen::MatrixXcd cube_kernel(int n, Complex z) {
  const std::size_t size = std::size_t{1} << n;
  const Complex w = std::exp(-z);
  const Complex same = 0.5 * (1.0 + w);
  const Complex flip = 0.5 * (1.0 - w);
  Eigen::MatrixXcd m(size, size);
  for (std::size_t x = 0; x < size; ++x) {
    for (std::size_t y = 0; y < size; ++y) {
      const int d = std::popcount(static_cast<unsigned>(x ^ y));
      m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = std::pow(same, n - d) * std::pow(flip, d);
    }
  }
  return m;
}

/// fhat(S) = 2^{-n} sum_x f(x) (-1)^{|x & S|} by direct summation.
inline Eigen::VectorXcd walsh_direct(const Eigen::VectorXcd& f) {
  const auto size = f.size();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(size);
  for (Eigen::Index s = 0; s < size; ++s) {
    for (Eigen::Index x = 0; x < size; ++x) {
      const double sign = std::popcount(static_cast<unsigned>(x & s)) % 2 == 0 ? 1.0 : -1.0;
      out[s] += sign * f[x];
    }
    out[s] /= static_cast<double>(size);
  }
  return out;
}

inline double segment_distance(Complex z, Complex p, Complex q, double* parameter = nullptr) {
  const Complex d = q - p;
  double u = ((z - p) * std::conj(d)).real() / std::norm(d);
  u = std::clamp(u, 0.0, 1.0);
  if (parameter) *parameter = u;
  return std::abs(z - (p + u * d));
}

struct ExitFraction {
  double fraction = 0.0;
  double standard_error = 0.0;
};

/// Walk on spheres for planar Brownian motion in the triangle `v` started at
/// `start`. A walker stops once within `shell` of the boundary and is
/// attributed to the nearest edge (edge k joins v[k] and v[k+1]). Returns the
/// fraction of walkers that stopped on an edge with hits[edge] true.
inline ExitFraction brownian_exit(const std::array<Complex, 3>& v, Complex start, const std::array<bool, 3>& hits,
                                  int walkers, std::uint64_t seed, double shell) {
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  int count = 0;
  for (int k = 0; k < walkers; ++k) {
    Complex z = start;
    for (;;) {
      double best = 1e300;
      int edge = 0;
      for (int e = 0; e < 3; ++e) {
        const double d = segment_distance(z, v[static_cast<std::size_t>(e)], v[static_cast<std::size_t>((e + 1) % 3)]);
        if (d < best) {
          best = d;
          edge = e;
        }
      }
      if (best < shell) {
        if (hits[static_cast<std::size_t>(edge)]) ++count;
        break;
      }
      z += std::polar(best, angle(engine));
    }
  }
  const double f = static_cast<double>(count) / walkers;
  return {f, std::sqrt(std::max(f * (1.0 - f), 1.0 / walkers) / walkers)};
}

/// Harmonic measure of the arc from e^{i alpha} counterclockwise to
/// e^{i beta} seen from zeta in the open unit disk.
inline double disk_arc_measure(Complex zeta, double alpha, double beta) {
  const Complex a = std::polar(1.0, alpha);
  const Complex b = std::polar(1.0, beta);
  double subtended = std::arg((b - zeta) / (a - zeta));
  if (subtended < 0.0) subtended += 2.0 * std::numbers::pi;
  double arc = beta - alpha;
  while (arc < 0.0) arc += 2.0 * std::numbers::pi;
  return subtended / std::numbers::pi - arc / (2.0 * std::numbers::pi);
}

/// Weighted l_p norm by the textbook formula.
inline double lp(const Eigen::VectorXcd& v, const std::vector<double>& w, double p) {
  double acc = 0.0;
  for (Eigen::Index k = 0; k < v.size(); ++k) acc += w[static_cast<std::size_t>(k)] * std::pow(std::abs(v[k]), p);
  return std::pow(acc, 1.0 / p);
}

}  // namespace oracle
