#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hcsplit/quadrature.hpp"

using namespace hcsplit;

TEST_CASE("gauss-legendre is exact to degree 2n-1") {
  for (int n : {1, 2, 5, 16}) {
    const auto rule = gauss_legendre(n);
    REQUIRE(rule.size() == static_cast<std::size_t>(n));
    for (int d = 0; d <= 2 * n - 1; ++d) {
      double acc = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) acc += rule.weights[i] * std::pow(rule.nodes[i], d);
      CHECK(acc == doctest::Approx(1.0 / (d + 1)).epsilon(1e-13));
    }
    for (std::size_t i = 0; i < rule.size(); ++i) CHECK(rule.nodes[i] + rule.complements[i] == doctest::Approx(1.0));
    for (std::size_t i = 1; i < rule.size(); ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
  }
}

TEST_CASE("graded rule resolves endpoint singularities") {
  const auto rule = graded_gauss_legendre(32, 4.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    acc += rule.weights[i] / std::sqrt(rule.nodes[i] * rule.complements[i]);
  }
  CHECK(acc == doctest::Approx(std::numbers::pi).epsilon(1e-9));
  double mass = 0.0;
  for (double w : rule.weights) mass += w;
  CHECK(std::abs(mass - 1.0) < 1e-9);
}

TEST_CASE("graded complements stay accurate near the right end") {
  const auto rule = graded_gauss_legendre(64, 6.0);
  CHECK(rule.complements.back() > 0.0);
  CHECK(rule.complements.back() < 1e-15);
}

TEST_CASE("adaptive integration") {
  const auto v = integrate_adaptive([](double x) { return std::exp(std::complex<double>(0.0, x)); }, 0.0, 2.0, 1e-14);
  const auto expected = (std::exp(std::complex<double>(0.0, 2.0)) - 1.0) / std::complex<double>(0.0, 1.0);
  CHECK(std::abs(v - expected) < 1e-13);
  const auto s = integrate_adaptive([](double x) { return std::complex<double>(std::sqrt(x)); }, 0.0, 1.0, 1e-12);
  CHECK(s.real() == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}
