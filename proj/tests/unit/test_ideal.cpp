#include <cmath>

#include "doctest.h"
#include "hcsplit/errors.hpp"
#include "hcsplit/ideal.hpp"

using namespace hcsplit;

namespace {

const double kP = 1.5;

const HarmonicMeasure& default_measure() {
  static const HarmonicMeasure m = harmonic_measure(TriangleDomain::with_defaults(hypercontractive_threshold(kP)), 64);
  return m;
}

}  // namespace

TEST_CASE("ideal norm constructors") {
  CHECK_THROWS_AS(make_gamma2(2.0), DomainError);
  CHECK_THROWS_AS(make_gamma2(1.0), DomainError);
  const auto g = make_gamma2(kP);
  CHECK(g.p == kP);
  CHECK(make_schatten_like(SchattenKind::HilbertSchmidt).p == 0.0);
  const auto space = FiniteProbabilitySpace::uniform(3);
  const auto other = FiniteProbabilitySpace::uniform(2);
  const OperatorMatrix rect(space, other, MatrixXc::Ones(2, 3));
  CHECK_THROWS_AS(make_schatten_like(SchattenKind::TraceNorm).gamma(rect), ShapeError);
}

TEST_CASE("schatten norms from singular values") {
  const auto space = FiniteProbabilitySpace::uniform(2);
  MatrixXc m(2, 2);
  m << 3.0, 0.0, 0.0, Complex(0.0, -4.0);
  const OperatorMatrix a(space, space, m);
  CHECK(make_schatten_like(SchattenKind::TraceNorm).gamma(a) == doctest::Approx(7.0));
  CHECK(make_schatten_like(SchattenKind::HilbertSchmidt).gamma(a) == doctest::Approx(5.0));
  CHECK(spectral_norm(a) == doctest::Approx(4.0));
}

TEST_CASE("composition inequality for the three instances") {
  const auto space = FiniteProbabilitySpace::uniform(4);
  const auto pairs = random_operator_pairs(space, 40, 123);
  REQUIRE(pairs.size() == 40);
  const auto g2 = compatibility_check(make_gamma2(kP), lp_operator_norm(kP), pairs);
  const auto hs = compatibility_check(make_schatten_like(SchattenKind::HilbertSchmidt), spectral_norm, pairs);
  const auto tr = compatibility_check(make_schatten_like(SchattenKind::TraceNorm), spectral_norm, pairs);
  for (const auto* r : {&g2, &hs, &tr}) {
    CHECK(r->ok());
    CHECK(r->pairs == 40);
    CHECK(r->measured_C <= 1.0 + kNormPadding);
    CHECK(r->measured_C > 0.0);
  }
}

TEST_CASE("an incompatible norm is caught") {
  // gamma = entry (0,0) modulus is not a left-ideal norm.
  const IdealNorm corner{"corner", [](const OperatorMatrix& a) { return std::abs(a.entries()(0, 0)) + 1e-3; }, 1.0, 0.0};
  const auto pairs = random_operator_pairs(FiniteProbabilitySpace::uniform(3), 30, 5);
  CHECK_FALSE(compatibility_check(corner, spectral_norm, pairs).ok());
}

TEST_CASE("generic split with the Hilbert-Schmidt norm") {
  const auto& mu = default_measure();
  const CubeNoiseSemigroup cube(2);
  const auto hs = make_schatten_like(SchattenKind::HilbertSchmidt);
  for (double eps : {1.0, 1e-2}) {
    const auto cert = generic_split(cube, mu, hs, spectral_norm, eps);
    CHECK(cert.recon_error_pp <= 1e-6);
    CHECK(cert.bound_T0_ok);
    CHECK(cert.bound_T1_ok);
    CHECK(cert.v1_norm_name == hs.name);
    CHECK_FALSE(cert.oracle_gap.has_value());
  }
}

TEST_CASE("generic split with gamma2 matches the plain split") {
  const auto& mu = default_measure();
  const CubeNoiseSemigroup cube(1);
  const auto plain = split(cube, mu, kP, 1e-2);
  const auto generic = generic_split(cube, mu, make_gamma2(kP), lp_operator_norm(kP), 1e-2);
  CHECK(generic.norm_T1_p2 == doctest::Approx(plain.norm_T1_p2).epsilon(1e-6));
  CHECK(generic.norm_T0_pp == doctest::Approx(plain.norm_T0_pp).epsilon(1e-6));
}
