#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hcsplit/errors.hpp"
#include "hcsplit/geometry.hpp"
#include "hcsplit/opnorm.hpp"
#include "oracles.hpp"

using namespace hcsplit;

namespace {

const double kS = hypercontractive_threshold(1.5);

const HarmonicMeasure& default_measure() {
  static const HarmonicMeasure m = harmonic_measure(TriangleDomain::with_defaults(kS), 64);
  return m;
}

}  // namespace

TEST_CASE("triangle validation and defaults") {
  CHECK_THROWS_AS(TriangleDomain(0.0, 1.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(TriangleDomain(1.0, -1.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(TriangleDomain(1.0, 0.5, 1.0, 1.5), DomainError);
  CHECK_THROWS_AS(TriangleDomain(1.0, 0.5, 1.0, 0.0), DomainError);
  const auto d = TriangleDomain::with_defaults(1.0);
  CHECK(d.a() == doctest::Approx(0.125));
  CHECK(d.b() == doctest::Approx(0.75));
  CHECK(d.t() == doctest::Approx(0.95));
  CHECK(d.contains_shifted_k());
  double sum = 0.0;
  for (double angle : d.interior_angles()) sum += angle;
  CHECK(sum == doctest::Approx(std::numbers::pi));
  CHECK(d.contains(Complex(0.5, 0.0)));
  CHECK_FALSE(d.contains(Complex(1.2, 0.0)));
  CHECK(d.boundary_point(1, 0.5).part == BoundaryPart::V1);
  CHECK(d.boundary_point(2, 0.5).part == BoundaryPart::V0);
}

TEST_CASE("conformal map normalization and round trip") {
  const auto domain = TriangleDomain::with_defaults(kS);
  const ConformalMap map(domain);
  CHECK(std::abs(map.to_disk(domain.t())) < 1e-12);
  CHECK(map.closure_error() < 1e-10);
  for (const auto& v : domain.vertices()) CHECK(std::abs(std::abs(map.to_disk(v)) - 1.0) < 1e-9);
  for (Complex z : {Complex(0.1, 0.01), Complex(0.3, 0.2), Complex(0.38, -0.25), Complex(0.2, 0.0)}) {
    CHECK(std::abs(map.from_disk(map.to_disk(z)) - z) < 1e-10);
  }
  const Complex derivative = map.derivative(domain.t());
  CHECK(derivative.real() > 0.0);
  CHECK(std::abs(derivative.imag()) < 1e-10);
  CHECK_THROWS_AS(map.to_disk(Complex(1.0, 0.0)), DomainError);
}

TEST_CASE("harmonic measure reproduces analytic functions at t") {
  const auto& mu = default_measure();
  const double t = mu.domain().t();
  CHECK(std::abs(mu.total_mass() - 1.0) < 1e-8);
  CHECK(std::abs(mu.integrate([](Complex z) { return z; }) - t) < 1e-7);
  CHECK(std::abs(mu.integrate([](Complex z) { return z * z * z; }) - t * t * t) < 1e-7);
  CHECK(std::abs(mu.integrate([](Complex z) { return std::exp(Complex(0.0, 3.0) * z); }) -
                 std::exp(Complex(0.0, 3.0) * t)) < 1e-7);
  CHECK(mu.mass(BoundaryPart::V1) == doctest::Approx(mu.theta()).epsilon(1e-8));
  CHECK_THROWS_AS(harmonic_measure(mu.domain(), 3), DomainError);
}

TEST_CASE("theta agrees with Brownian exit") {
  const auto& mu = default_measure();
  const auto est = oracle::brownian_exit(mu.domain().vertices(), mu.domain().t(), {false, true, false}, 20000, 99,
                                         1e-6);
  CHECK(std::abs(mu.theta() - est.fraction) <= 3.0 * est.standard_error);
}

TEST_CASE("theta agrees with Brownian exit on a triangle with a small V1 share") {
  const TriangleDomain domain(0.3466, 0.3466, 0.1733, 0.1733);
  const auto mu = harmonic_measure(domain, 64);
  CHECK(std::abs(mu.total_mass() - 1.0) < 1e-8);
  const auto est = oracle::brownian_exit(domain.vertices(), domain.t(), {false, true, false}, 100000, 4, 1e-7);
  CHECK(std::abs(mu.theta() - est.fraction) <= 3.0 * est.standard_error);
  MESSAGE("theta = " << mu.theta() << ", Brownian " << est.fraction << " +- " << est.standard_error);
}

TEST_CASE("Re w is the V1 harmonic measure at interior points") {
  const auto& mu = default_measure();
  const auto& domain = mu.domain();
  int k = 0;
  for (Complex z : {Complex(0.1, 0.02), Complex(0.3, -0.1), Complex(0.37, 0.2)}) {
    const double re_w = strip_coordinate(domain, mu, z).w.real();
    const auto est = oracle::brownian_exit(domain.vertices(), z, {false, true, false}, 20000, 500 + k++, 1e-6);
    CHECK(std::abs(re_w - est.fraction) <= 3.0 * est.standard_error);
  }
  CHECK(std::abs(strip_coordinate(domain, mu, domain.t()).w - Complex(mu.theta(), 0.0)) < 1e-10);
}

TEST_CASE("node strip coordinates match the disk route away from the corners") {
  const auto& mu = default_measure();
  const auto& domain = mu.domain();
  int compared = 0;
  for (const auto& node : mu.nodes()) {
    const double u = node.point.edge_parameter;
    if (u < 0.05 || u > 0.95) continue;
    const Complex direct = strip_coordinate(mu, node).w;
    const Complex routed = strip_coordinate(domain, mu, node.point.z).w;
    CHECK(std::abs(direct - routed) < 1e-7);
    CHECK(direct.real() == (node.point.part == BoundaryPart::V1 ? 1.0 : 0.0));
    ++compared;
  }
  CHECK(compared > 50);
}

TEST_CASE("chi_theta maps the strip onto the disk") {
  const double theta = 0.3;
  CHECK(std::abs(chi_theta(theta, theta)) < 1e-15);
  for (Complex w : {Complex(0.2, 0.5), Complex(0.9, -1.0), Complex(0.5, 3.0)}) {
    const Complex zeta = chi_theta(theta, w);
    CHECK(std::abs(zeta) < 1.0);
    CHECK(std::abs(chi_theta_inverse(theta, zeta) - w) < 1e-12);
  }
  CHECK(std::abs(std::abs(chi_theta(theta, Complex(1.0, 0.7))) - 1.0) < 1e-14);
  CHECK(std::abs(std::abs(chi_theta(theta, Complex(0.0, -0.7))) - 1.0) < 1e-14);
  CHECK_THROWS_AS(chi_theta_inverse(theta, 1.0), DomainError);
}

TEST_CASE("strip harmonic measure in closed form") {
  // The line Re w = 1 goes to the arc from 1 counterclockwise to e^{2 pi i theta}.
  for (double theta : {0.2, 0.68}) {
    for (Complex w : {Complex(0.3, 0.0), Complex(0.75, 1.2), Complex(0.1, -0.4)}) {
      const double measure = oracle::disk_arc_measure(chi_theta(theta, w), 0.0, 2.0 * std::numbers::pi * theta);
      CHECK(std::abs(measure - w.real()) < 1e-8);
    }
  }
}

TEST_CASE("damping function moduli") {
  const auto& mu = default_measure();
  const double theta = mu.theta();
  for (double eps : {1.0, 1e-2, 1e-4}) {
    CHECK(std::abs(psi(mu.domain(), mu, eps, mu.domain().t()) - 1.0) < 1e-10);
    const double v1 = std::pow(eps, (theta - 1.0) / theta);
    for (const auto& node : mu.nodes()) {
      const double m = std::abs(psi(mu, eps, node));
      if (node.point.part == BoundaryPart::V0) {
        CHECK(std::abs(m - eps) < 1e-7);
      } else {
        CHECK(std::abs(m - v1) < 1e-6 * v1);
      }
    }
  }
  CHECK_THROWS_AS(xi(0.5, 0.0, 0.2), DomainError);
  CHECK(std::abs(xi(0.5, 1e-2, 0.5) - 1.0) < 1e-15);
}
