#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "freecsk/errors.hpp"
#include "freecsk/measure.hpp"
#include "freecsk/quadrature.hpp"
#include "oracles.hpp"

namespace {

using namespace freecsk;

TEST(AtomicMeasure, SortsAndValidates) {
  const AtomicMeasure a({3.0, -1.0}, {0.25, 0.75});
  ASSERT_EQ(a.atoms().size(), 2u);
  EXPECT_EQ(a.atoms()[0].location, -1.0);
  EXPECT_EQ(a.atoms()[1].weight, 0.25);
  EXPECT_THROW(AtomicMeasure({0.0, 1.0}, {0.5, 0.6}), DomainError);
  EXPECT_THROW(AtomicMeasure({1.0, 1.0}, {0.5, 0.5}), DomainError);
  EXPECT_THROW(AtomicMeasure({0.0, 1.0}, {1.5, -0.5}), DomainError);
  EXPECT_THROW(AtomicMeasure(std::vector<Atom>{}), DomainError);
}

TEST(NamedDensity, ParameterChecks) {
  EXPECT_THROW(NamedDensity::marchenko_pastur_centered(0.0), DomainError);
  EXPECT_THROW(NamedDensity::marchenko_pastur_centered(1.5), DomainError);
  EXPECT_NO_THROW(NamedDensity::marchenko_pastur_centered(-1.0));
  EXPECT_THROW(NamedDensity::semicircle(0.0, 0.0), DomainError);
}

TEST(NamedDensity, SupportAndDensity) {
  const NamedDensity fp = NamedDensity::free_poisson();
  EXPECT_EQ(fp.support_lo(), 0.0);
  EXPECT_EQ(fp.support_hi(), 4.0);
  EXPECT_NEAR(fp.density(1.0), std::sqrt(3.0) / (2 * std::numbers::pi), 1e-15);
  EXPECT_EQ(fp.density(5.0), 0.0);
  EXPECT_TRUE(fp.singular_at_lo());
  EXPECT_FALSE(fp.singular_at_hi());
  const NamedDensity sc = NamedDensity::semicircle(1.0, 4.0);
  EXPECT_EQ(sc.support_lo(), -3.0);
  EXPECT_EQ(sc.support_hi(), 5.0);
  EXPECT_NEAR(sc.density(1.0), 4.0 / (8 * std::numbers::pi), 1e-15);
  // The angle substitution reproduces the density: weight = density * dx/dphi.
  const NamedDensity mp = NamedDensity::marchenko_pastur_centered(0.5);
  for (double phi : {0.3, 1.0, 2.5}) {
    const double x = mp.location(phi);
    EXPECT_NEAR(mp.angle_of(x), phi, 1e-12);
    EXPECT_NEAR(mp.angular_weight(phi), mp.density(x) * 2.0 * std::sin(phi), 1e-12);
  }
}

TEST(Measure, PositivityAndBounds) {
  EXPECT_TRUE(Measure::free_poisson().positive());
  EXPECT_TRUE(Measure(AtomicMeasure({0.0, 2.0}, {0.5, 0.5})).positive());
  EXPECT_FALSE(Measure(AtomicMeasure({-1.0, 2.0}, {0.5, 0.5})).positive());
  EXPECT_FALSE(Measure::semicircle(0.0, 1.0).positive());
  EXPECT_EQ(Measure(AtomicMeasure({0.0, 2.0}, {0.25, 0.75})).mass_at_zero(), 0.25);
  EXPECT_EQ(Measure::free_poisson().mass_at_zero(), 0.0);
  const Measure mp = Measure::marchenko_pastur_centered(1.0);
  EXPECT_EQ(mp.support_inf(), -1.0);
  EXPECT_EQ(mp.support_sup(), 3.0);
  EXPECT_EQ(mp.upper_bound(), 3.0);
  EXPECT_EQ(mp.lower_bound(), -1.0);
  EXPECT_EQ(Measure::dirac(2.0).lower_bound(), 0.0);
  const Measure seq = MomentSeq({1, 2}, true);
  EXPECT_EQ(seq.support_inf(), 0.0);
  EXPECT_TRUE(std::isinf(seq.support_sup()));
  EXPECT_FALSE(seq.integrable());
}

TEST(Moments, Dirac) {
  const MomentSeq m = moments(Measure::dirac(3.0), 3);
  EXPECT_EQ(m.values(), (std::vector<double>{3.0, 9.0, 27.0}));
  EXPECT_EQ(m.moment(0), 1.0);
}

TEST(Moments, FreePoissonMatchesNoncrossingOracle) {
  const std::vector<double> oracle_m = oracle::moments_from_free_cumulants({1, 1, 1, 1, 1, 1});
  const MomentSeq m = moments(Measure::free_poisson(), 6);
  for (int n = 1; n <= 6; ++n) EXPECT_NEAR(m.moment(n), oracle_m[n - 1], 1e-10 * oracle_m[n - 1]);
  EXPECT_NEAR(m.moment(4), 14.0, 1e-9);
  EXPECT_TRUE(m.positive());
}

TEST(Moments, Semicircle) {
  const MomentSeq m = moments(Measure::semicircle(0.0, 1.0), 4);
  const std::vector<double> expected{0, 1, 0, 2};
  for (int n = 1; n <= 4; ++n) EXPECT_NEAR(m.moment(n), expected[n - 1], 1e-12);
  const MomentSeq shifted = moments(Measure::semicircle(0.0, 2.5), 8);
  const std::vector<double> oracle_m = oracle::semicircle_moments(2.5, 8);
  for (int n = 1; n <= 8; ++n) EXPECT_NEAR(shifted.moment(n), oracle_m[n - 1], 1e-10 * std::max(1.0, oracle_m[n - 1]));
}

TEST(Moments, AtomicExactPowerSums) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const oracle::RandomAtomic a = oracle::random_atomic(rng, 4, -2.0, 2.0);
    const MomentSeq m = moments(Measure(AtomicMeasure(a.x, a.w)), 10);
    const std::vector<double> expected = oracle::atomic_moments(a.x, a.w, 10);
    for (int n = 1; n <= 10; ++n) EXPECT_NEAR(m.moment(n), expected[n - 1], 1e-14 * std::max(1.0, std::abs(expected[n - 1])));
  }
}

TEST(Moments, SequencePassthroughAndShortage) {
  const Measure seq = MomentSeq({1, 2, 5, 14});
  EXPECT_EQ(moments(seq, 3).values(), (std::vector<double>{1, 2, 5}));
  EXPECT_THROW(moments(seq, 5), InsufficientDataError);
  EXPECT_THROW(MomentSeq({1, 2}).moment(3), InsufficientDataError);
  EXPECT_DOUBLE_EQ(MomentSeq({1, 2}).variance(), 1.0);
}

TEST(Quadrature, Examples) {
  EXPECT_DOUBLE_EQ(quadrature_integrate(Measure::dirac(2.0), [](double x) { return x * x; }), 4.0);
  EXPECT_NEAR(quadrature_integrate(Measure::free_poisson(), [](double) { return 1.0; }), 1.0, 1e-10);
  EXPECT_NEAR(quadrature_integrate(Measure::free_poisson(), [](double x) { return x; }), 1.0, 1e-10);
  EXPECT_THROW(quadrature_integrate(MomentSeq({1.0}), [](double) { return 1.0; }), UnsupportedError);
}

TEST(Quadrature, NormalizationOfEveryNamedDensity) {
  for (const Measure& nu : {Measure::free_poisson(), Measure::semicircle(-1.0, 0.3),
                            Measure::marchenko_pastur_centered(0.3), Measure::marchenko_pastur_centered(1.0),
                            Measure::marchenko_pastur_centered(-1.0)}) {
    EXPECT_NEAR(quadrature_integrate(nu, [](double) { return 1.0; }), 1.0, 1e-10) << nu.describe();
  }
}

TEST(Quadrature, SupportPointDistances) {
  const Measure fp = Measure::free_poisson();
  double worst = 0.0;
  quadrature_integrate(fp, [&](const SupportPoint& p) {
    worst = std::max({worst, std::abs(p.from_lo - p.x), std::abs(p.from_hi - (4.0 - p.x))});
    return 1.0;
  });
  EXPECT_LT(worst, 1e-14);
}

TEST(Quadrature, ComplexIntegrand) {
  const std::complex<double> z(2.0, 0.5);
  const std::complex<double> g =
      quadrature_integrate_complex(Measure::free_poisson(), [&](double x) { return 1.0 / (z - x); });
  EXPECT_LT(std::abs(g - oracle::free_poisson_G(z)), 1e-10);
}

TEST(MeasureSpec, ParsesTheThreeTypes) {
  const Measure a = parse_measure_spec(R"({"type":"atomic","atoms":[0,2],"weights":[0.5,0.5]})");
  ASSERT_NE(a.atomic(), nullptr);
  EXPECT_EQ(a.atomic()->atoms().size(), 2u);
  const Measure fp = parse_measure_spec(R"({"type":"named","name":"free_poisson"})");
  ASSERT_NE(fp.density(), nullptr);
  EXPECT_EQ(fp.density()->kind(), DensityKind::free_poisson);
  const Measure sc = parse_measure_spec(R"({"type":"named","name":"semicircle","params":{"center":1,"variance":2}})");
  EXPECT_EQ(sc.density()->center(), 1.0);
  EXPECT_EQ(sc.density()->variance(), 2.0);
  const Measure mp = parse_measure_spec(R"({"type":"named","name":"marchenko_pastur_centered","params":{"a":0.5}})");
  EXPECT_EQ(mp.density()->a(), 0.5);
  const Measure m = parse_measure_spec(R"({"type":"moments","values":[1,2,5,14],"positive":true})");
  ASSERT_NE(m.moment_seq(), nullptr);
  EXPECT_EQ(m.moment_seq()->values(), (std::vector<double>{1, 2, 5, 14}));
  EXPECT_TRUE(m.moment_seq()->positive());
}

TEST(MeasureSpec, ErrorsCarryLocations) {
  auto location_of = [](std::string_view text) {
    try {
      parse_measure_spec(text);
    } catch (const ParseError& e) {
      return e.location();
    }
    return std::string("no error");
  };
  EXPECT_EQ(location_of(R"({"type":"atomic","atoms":[0,1],"weights":[0.5,"x"]})"), "/weights/1");
  EXPECT_EQ(location_of(R"({"type":"atomic","atoms":[0,1],"weights":[0.5,0.6]})"), "/weights");
  EXPECT_EQ(location_of(R"({"type":"named","name":"cauchy"})"), "/name");
  EXPECT_EQ(location_of(R"({"type":"named","name":"marchenko_pastur_centered","params":{"a":2}})"), "/params");
  EXPECT_EQ(location_of(R"({"type":"moments","values":[1],"extra":1})"), "/extra");
  EXPECT_EQ(location_of(R"({"type":"lattice"})"), "/type");
  EXPECT_EQ(location_of(R"([1,2])"), "/");
  EXPECT_EQ(location_of(R"({"type": )").rfind("byte ", 0), 0u);
}

TEST(MeasureSpec, LoadsFiles) {
  const Measure fp = load_measure_spec(std::string(FREECSK_SPEC_DIR) + "/free_poisson.json");
  EXPECT_TRUE(fp.positive());
  EXPECT_THROW(load_measure_spec(std::string(FREECSK_SPEC_DIR) + "/missing.json"), ParseError);
}

}  // namespace
