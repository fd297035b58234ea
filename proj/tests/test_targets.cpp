#include "errors.hpp"
#include "targets.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

using namespace hypershift;

namespace {

long double norm_of(const std::vector<ComplexLD>& v) {
  long double s = 0;
  for (auto c : v) s += std::norm(c);
  return std::sqrt(s);
}

long double dist(const std::vector<ComplexLD>& a, const std::vector<std::complex<double>>& b) {
  std::size_t n = std::max(a.size(), b.size());
  long double s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ComplexLD x = i < a.size() ? a[i] : ComplexLD(0);
    ComplexLD y = i < b.size() ? ComplexLD(b[i].real(), b[i].imag()) : ComplexLD(0);
    s += std::norm(x - y);
  }
  return std::sqrt(s);
}

}  // namespace

TEST(Targets, FirstTwoHaveUnitNorm) {
  TargetVector v1 = enumerate(1);
  ASSERT_EQ(v1.coords.size(), 1u);
  EXPECT_EQ(v1.values()[0], ComplexLD(1, 0));
  EXPECT_EQ(v1.log_norm, 0.0L);
  TargetVector v2 = enumerate(2);
  EXPECT_EQ(v2.log_norm, 0.0L);
  EXPECT_NEAR(static_cast<double>(norm_of(v2.values())), 1.0, 1e-18);
  EXPECT_FALSE(v1.coords == v2.coords);
}

TEST(Targets, ThirdVectorIsStableAndChained) {
  TargetVector v3 = enumerate(3);
  EXPECT_EQ(v3.values(), std::vector<ComplexLD>{ComplexLD(2, 0)});
  EXPECT_LE(std::fabs(v3.log_norm - enumerate(2).log_norm), 1.0L);
}

TEST(Targets, InvariantsOnPrefix) {
  long double prev = 0;
  for (std::uint64_t l = 1; l <= 20000; ++l) {
    TargetVector t = enumerate(l);
    ASSERT_FALSE(t.coords.empty());
    auto vals = t.values();
    long double n = norm_of(vals);
    ASSERT_GT(n, 0) << l;
    ASSERT_NEAR(static_cast<double>(t.log_norm), static_cast<double>(std::log(n)), 1e-15) << l;
    ASSERT_LT(t.cone_radius, n) << l;
    ASSERT_LE(t.cone_radius, 1.0L / l * (1 + 1e-18L)) << l;
    ASSERT_GT(t.cone_radius, 0) << l;
    if (l > 1) ASSERT_LE(std::fabs(t.log_norm - prev), 1.0L + 1e-18L) << l;
    prev = t.log_norm;
    ASSERT_TRUE(t.support() >= 1 && t.support() <= t.coords.size());
  }
}

TEST(Targets, ChainConditionAtHugeIndices) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    BigNat l = BigNat(rng()) * BigNat(rng()) + 1;
    TargetVector a = enumerate(l);
    TargetVector b = enumerate(BigNat(l + 1));
    ASSERT_LE(std::fabs(a.log_norm - b.log_norm), 1.0L + 1e-18L);
    ASSERT_LT(a.cone_radius, std::exp(a.log_norm));
    ASSERT_TRUE(a.coords == enumerate(l).coords);
  }
}

TEST(Targets, FirstLevelContainsEveryNonzeroHalfIntegerScalar) {
  // Level 1: single coordinates a/2 + i b/2 with |a|, |b| <= 2, each wrapped
  // in a ramp of period 9; raw vectors sit at l = 7 + 9 r.
  std::set<std::pair<long double, long double>> seen;
  for (int r = 0; r < 24; ++r) {
    TargetVector t = enumerate(static_cast<std::uint64_t>(7 + 9 * r));
    ASSERT_EQ(t.coords.size(), 1u);
    ComplexLD c = t.values()[0];
    seen.insert({c.real(), c.imag()});
  }
  std::set<std::pair<long double, long double>> expect;
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      if (a || b) expect.insert({a / 2.0L, b / 2.0L});
  EXPECT_EQ(seen, expect);
}

TEST(Targets, RampsAreScaledFirstBasisVectors) {
  for (std::uint64_t l = 3; l < 7 + 9 * 24; ++l) {
    if ((l - 7) % 9 == 0) continue;
    TargetVector t = enumerate(l);
    ASSERT_EQ(t.coords.size(), 1u) << l;
    ComplexLD c = t.values()[0];
    ASSERT_EQ(c.imag(), 0.0L);
    long double lg = std::log2(std::fabs(c.real()));
    ASSERT_EQ(lg, std::round(lg)) << l;
  }
}

TEST(ConeDistance, ClosedFormCases) {
  for (std::uint64_t l : {1ull, 7ull, 50ull, 4000ull}) {
    TargetVector t = enumerate(l);
    auto v = t.values();
    EXPECT_NEAR(static_cast<double>(cone_distance(v, t)), 0.0, 1e-15);
    std::vector<ComplexLD> twice, neg;
    for (auto c : v) {
      twice.push_back(2.0L * c);
      neg.push_back(-c);
    }
    EXPECT_NEAR(static_cast<double>(cone_distance(twice, t)), 0.0, 1e-15);
    EXPECT_NEAR(static_cast<double>(cone_distance(neg, t)), static_cast<double>(std::exp(t.log_norm)),
                1e-15);
  }
  EXPECT_THROW(cone_distance({ComplexLD(0)}, enumerate(1)), Error);
}

TEST(ConeDistance, PositiveScaleInvariance) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  for (int i = 0; i < 200; ++i) {
    TargetVector t = enumerate(static_cast<std::uint64_t>(1 + rng() % 5000));
    std::vector<ComplexLD> v(1 + rng() % 5);
    for (auto& c : v) c = ComplexLD(u(rng), u(rng));
    long double c = scale(rng);
    std::vector<ComplexLD> w;
    for (auto x : v) w.push_back(c * x);
    long double a = cone_distance(v, t), b = cone_distance(w, t);
    ASSERT_NEAR(static_cast<double>(a), static_cast<double>(b), 1e-12 * (1 + static_cast<double>(a)));
  }
}

TEST(DensityWitness, Examples) {
  auto v5 = enumerate(5).values();
  std::vector<std::complex<double>> t5;
  for (auto c : v5) t5.emplace_back(static_cast<double>(c.real()), static_cast<double>(c.imag()));
  BigNat l = density_witness(t5, 0.01);
  EXPECT_LE(l, BigNat(5));
  EXPECT_LT(dist(enumerate(l).values(), t5), 0.01L);

  std::vector<std::complex<double>> half{{0.5, 0}};
  l = density_witness(half, 0.25);
  EXPECT_LT(dist(enumerate(l).values(), half), 0.25L);

  std::vector<std::complex<double>> quarter(4, {0.5, 0});
  l = density_witness(quarter, 0.1);
  EXPECT_LT(dist(enumerate(l).values(), quarter), 0.1L);
}

TEST(DensityWitness, RandomShortVectors) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 100; ++i) {
    std::vector<std::complex<double>> t(1 + rng() % 6);
    for (auto& c : t) c = {u(rng), u(rng)};
    BigNat l = density_witness(t, 0.05);
    ASSERT_LT(dist(enumerate(l).values(), t), 0.05L) << i;
  }
}

TEST(Targets, CsvRow) {
  EXPECT_EQ(target_csv_row(enumerate(1)), "1,1+0i,0,0.5");
  EXPECT_EQ(target_csv_row(enumerate(7)).substr(0, 8), "7,-1-1i,");
}
