#include <cmath>
#include <sstream>

#include "doctest.h"
#include "hcsplit/errors.hpp"
#include "hcsplit/splitter.hpp"

using namespace hcsplit;

namespace {

const double kP = 1.5;
const double kS = hypercontractive_threshold(kP);

const HarmonicMeasure& default_measure() {
  static const HarmonicMeasure m = harmonic_measure(TriangleDomain::with_defaults(kS), 64);
  return m;
}

}  // namespace

TEST_CASE("split reconstructs T(t) and certifies both bounds") {
  const auto& mu = default_measure();
  for (int n : {1, 2}) {
    const CubeNoiseSemigroup cube(n);
    for (double eps : {1.0, 1e-2}) {
      const auto cert = split(cube, mu, kP, eps);
      CHECK(cert.recon_error_pp <= 1e-6);
      CHECK(cert.bound_T0_ok);
      CHECK(cert.bound_T1_ok);
      CHECK(cert.theta == doctest::Approx(mu.theta()));
      CHECK(cert.exponent == doctest::Approx((cert.theta - 1.0) / cert.theta));
      CHECK(cert.nodes_v0 == 128);
      CHECK(cert.nodes_v1 == 64);
      REQUIRE(cert.oracle_gap.has_value());
      CHECK(*cert.oracle_gap <= 1e-3);
    }
  }
}

TEST_CASE("at epsilon = 1 both halves are averages of T over their parts") {
  // psi has modulus one on the boundary, so |T0| and |T1| are at most 1.
  const auto cert = split(CubeNoiseSemigroup(2), default_measure(), kP, 1.0);
  CHECK(cert.norm_T0_pp <= 1.0 + 1e-9);
  CHECK(cert.norm_T1_p2 <= 1.0 + 1e-9);
}

TEST_CASE("node norms are bounded through the semigroup factorization") {
  // V0: z = u (s + a +- i b) = u s + u (a +- i b), so T(z) = T(us) T(zeta)
  // with zeta on the boundary of K. V1: T(z) = T(s) T(z - s) with
  // Re(z - s) = a.
  const auto& mu = default_measure();
  const auto& d = mu.domain();
  const CubeNoiseSemigroup cube(2);
  const auto norms = lp_split_norms(kP);
  for (const auto& node : mu.nodes()) {
    const Complex z = node.point.z;
    if (node.point.part == BoundaryPart::V0) {
      const double u = z.real() / d.apex();
      const Complex zeta = z - u * d.s();
      CHECK(std::abs(std::abs(zeta.imag()) - std::abs(zeta.real()) * d.b() / d.a()) < 1e-12);
      const auto product = compose(cube.evaluate(u * d.s()), cube.evaluate(zeta));
      CHECK(max_entry_deviation(product, cube.evaluate(z)) < 1e-14);
    } else {
      CHECK(z.real() - d.s() == doctest::Approx(d.a()));
      const auto product = compose(cube.evaluate(d.s()), cube.evaluate(z - d.s()));
      CHECK(max_entry_deviation(product, cube.evaluate(z)) < 1e-14);
    }
  }
  const auto table = node_norms(cube, mu, norms);
  CHECK(table.C0 <= 1.0 + 1e-9);
  CHECK(table.C1 <= 1.0 + 1e-9);
  CHECK(table.C1 >= 1.0 - 1e-6);
}

TEST_CASE("a precomputed node table gives the same certificate") {
  const auto& mu = default_measure();
  const CubeNoiseSemigroup cube(2);
  SplitOptions options;
  const auto table = node_norms(cube, mu, lp_split_norms(kP, options.node_ascent));
  const auto a = split(cube, mu, kP, 1e-3, options);
  const auto b = split_with(cube, mu, 1e-3, lp_split_norms(kP, options.operator_ascent), table, options, kP);
  CHECK(a.norm_T0_pp == b.norm_T0_pp);
  CHECK(a.norm_T1_p2 == b.norm_T1_p2);
  CHECK(max_entry_deviation(*a.T1, *b.T1) == 0.0);
  SUBCASE("mismatched table") {
    NodeNormTable short_table = table;
    short_table.values.pop_back();
    CHECK_THROWS_AS(split_with(cube, mu, 1e-3, lp_split_norms(kP), short_table), ShapeError);
  }
}

TEST_CASE("split input validation") {
  const auto& mu = default_measure();
  const CubeNoiseSemigroup cube(1);
  CHECK_THROWS_AS(split(cube, mu, 2.0, 0.1), DomainError);
  CHECK_THROWS_AS(split(cube, mu, 1.0, 0.1), DomainError);
  CHECK_THROWS_AS(split(cube, mu, kP, 0.0), DomainError);
  CHECK_THROWS_AS(split(cube, mu, kP, 1.5), DomainError);
  const auto hugging = harmonic_measure(TriangleDomain(1.0, 1.0, 1.0, 2.0 - 1e-8), 16);
  REQUIRE(hugging.theta() > 1.0 - 1e-6);
  CHECK_THROWS_AS(split(cube, hugging, kP, 0.1), IllConditionedSplitError);
  // theta ~ 1.7e-4: |psi| on V1 is eps^{-6000}.
  const auto flat = harmonic_measure(TriangleDomain(kS, kS, kS / 2.0, kS / 2.0), 16);
  CHECK_NOTHROW(split(cube, flat, kP, 1.0));
  CHECK_THROWS_AS(split(cube, flat, kP, 0.1), NumericalError);
}

TEST_CASE("approximant is theta T1") {
  const auto& mu = default_measure();
  const auto approx = approximant(CubeNoiseSemigroup(2), mu, kP, 1e-2);
  const auto& cert = approx.certificate;
  CHECK(max_entry_deviation(approx.T_prime, cert.theta * *cert.T1) < 1e-15);
  CHECK(approx.approx_error == doctest::Approx((1.0 - cert.theta) * cert.norm_T0_pp).epsilon(1e-4));
  CHECK(approx.approx_error <= (1.0 - cert.theta) * cert.C0_measured * 1e-2 * (1.0 + kNormPadding) + 1e-9);
  CHECK(approx.gamma2_norm == doctest::Approx(cert.theta * cert.norm_T1_p2).epsilon(1e-4));
}

TEST_CASE("dimension sweep guards and constancy of theta") {
  const auto& mu = default_measure();
  CHECK_THROWS_AS(dimension_sweep(mu, kP, 1e-2, {2, 11}), CostGuardError);
  CHECK_THROWS_AS(dimension_sweep(mu, kP, 1e-2, {0}), DomainError);
  const auto rows = dimension_sweep(mu, kP, 1e-2, {1, 2, 3});
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) CHECK(r.theta == rows.front().theta);
}

TEST_CASE("slope fit and variation factor") {
  CHECK(slope_fit({0.0, 1.0, 2.0, 3.0}, {1.0, -1.0, -3.0, -5.0}) == doctest::Approx(-2.0));
  CHECK_THROWS_AS(slope_fit({1.0}, {1.0}), DomainError);
  CHECK_THROWS_AS(slope_fit({1.0, 1.0}, {0.0, 2.0}), DomainError);
  CHECK_THROWS_AS(slope_fit({1.0, 2.0}, {0.0}), ShapeError);
  CHECK(variation_factor({2.0, 3.0, 4.0}) == doctest::Approx(2.0));
  CHECK(variation_factor({5.0}) == 1.0);
}

TEST_CASE("certificate document") {
  const auto cert = split(CubeNoiseSemigroup(1), default_measure(), kP, 1e-2);
  std::ostringstream plain;
  write_certificate(plain, cert);
  const std::string text = plain.str();
  for (const char* key : {"epsilon = 0.01", "theta = ", "C0_measured = ", "C1_measured = ", "bound_T0_ok = true",
                          "bound_T1_ok = true", "recon_error_pp = "}) {
    CHECK(text.find(key) != std::string::npos);
  }
  CHECK(text.find("[T0]") == std::string::npos);
  std::ostringstream full;
  write_certificate(full, cert, true);
  CHECK(full.str().find("[T1]") != std::string::npos);
}
