#include "errors.hpp"
#include "slowfn.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace hypershift;
using Ref = boost::multiprecision::cpp_bin_float_50;

namespace {

Index ref_breakpoint_lnln(Index n) {
  Ref x(n);
  return static_cast<Index>(floor(x * log(log(x))));
}

Index ref_breakpoint_lnlnln(Index n) {
  Ref x(n);
  return static_cast<Index>(floor(x * log(log(log(x)))));
}

}  // namespace

TEST(Breakpoint, SmallLnLnValues) {
  Density g = Density::lnln();
  EXPECT_EQ(g.breakpoint(16), 16u);
  EXPECT_EQ(g.breakpoint(19), 20u);
  EXPECT_EQ(g.breakpoint(20), 21u);
  EXPECT_EQ(g.breakpoint(21), 23u);
  EXPECT_EQ(g.breakpoint(22), 24u);
}

TEST(Breakpoint, MatchesIndependentFiftyDigitEvaluation) {
  Density g = Density::lnln();
  for (Index n = 16; n <= 5000; ++n) ASSERT_EQ(g.breakpoint(n), ref_breakpoint_lnln(n)) << n;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Index> big(5000, Index{1} << 50);
  for (int i = 0; i < 2000; ++i) {
    Index n = big(rng);
    ASSERT_EQ(g.breakpoint(n), ref_breakpoint_lnln(n)) << n;
  }
  Density h = Density::lnlnln();
  for (Index n = h.n_min(); n < h.n_min() + 2000; ++n) {
    ASSERT_EQ(h.breakpoint(n), ref_breakpoint_lnlnln(n)) << n;
  }
}

TEST(Breakpoint, ConstantDensityIsExact) {
  Density g = Density::constant(7, 3);
  for (Index n = g.n_min(); n < 1000; ++n) EXPECT_EQ(g.breakpoint(n), n * 7 / 3);
}

TEST(Scheduler, LnLnOracleValues) {
  CycleMap cm(Density::lnln());
  EXPECT_EQ(cm.k_start(), 20u);
  EXPECT_EQ(cm.j(20), 1u);
  EXPECT_EQ(cm.j(21), 1u);
  EXPECT_EQ(cm.j(22), 2u);
  EXPECT_EQ(cm.j(23), 1u);
  EXPECT_EQ(cm.next_cycle_start(20), 21u);
  EXPECT_EQ(cm.next_cycle_start(21), 23u);
  EXPECT_EQ(cm.next_cycle_start(23), 24u);
}

TEST(Scheduler, JBound) {
  CycleMap cm(Density::lnln());
  EXPECT_TRUE(check_j_bound(cm, 20, 20));
  EXPECT_TRUE(check_j_bound(cm, 1618, 1620));
  EXPECT_TRUE(check_j_bound(cm, 20, 1000000));
}

TEST(Scheduler, LnLnLnStartsAtFirstBreakpoint) {
  Density g = Density::lnlnln();
  EXPECT_EQ(g.n_min(), 3814280u);
  EXPECT_GE(g.eval(static_cast<long double>(g.n_min())), 1.0L);
  EXPECT_LT(g.eval(static_cast<long double>(g.n_min() - 1)), 1.0L);
  CycleMap cm(g);
  EXPECT_EQ(cm.k_start(), g.breakpoint(g.n_min()));
  EXPECT_EQ(cm.j(cm.k_start()), 1u);
}

TEST(Density, ParseAndReject) {
  EXPECT_EQ(Density::parse("lnln").name(), "lnln");
  EXPECT_EQ(Density::parse("lnlnln").name(), "lnlnln");
  EXPECT_EQ(Density::parse("ln").name(), "ln");
  EXPECT_EQ(Density::parse("const:2.5").breakpoint(10), 25u);
  EXPECT_THROW(Density::parse("const:0.5"), Error);
  EXPECT_THROW(Density::parse("sqrt"), Error);
}

TEST(Density, FloorSumMatchesDirectSum) {
  for (const char* name : {"lnln", "ln", "const:1.5"}) {
    Density g = Density::parse(name);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<Index> start(20, 3000000);
    for (int i = 0; i < 50; ++i) {
      Index a = start(rng);
      Index b = a + rng() % 5000;
      std::uint64_t direct = 0;
      for (Index t = a; t < b; ++t) direct += g.floor_at(t);
      EXPECT_EQ(g.floor_sum(a, b), BigNat(direct)) << name << " " << a;
    }
  }
}

TEST(Density, FloorAtMatchesEvaluation) {
  Density g = Density::lnln();
  for (Index k : {20ull, 1618ull, 1619ull, 1000000ull, 528491312ull, 528491313ull}) {
    Ref x(k);
    EXPECT_EQ(g.floor_at(k), static_cast<std::uint64_t>(floor(log(log(x))))) << k;
  }
}

// Property suites over random windows, for every density kind.
class SchedulerProperties : public ::testing::TestWithParam<const char*> {};

TEST_P(SchedulerProperties, PartitionUnitStepAndNextStart) {
  Density g = Density::parse(GetParam());
  CycleMap cm(g);
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<Index> pick(cm.k_start(), cm.k_start() + 50000000);
  for (int trial = 0; trial < 200; ++trial) {
    Index k0 = pick(rng);
    Index n = cm.cycle_of(k0);
    ASSERT_LE(cm.breakpoint(n), k0);
    ASSERT_GT(cm.breakpoint(n + 1), k0);
    for (Index k = k0; k < k0 + 40; ++k) {
      Index m = cm.cycle_of(k);
      ASSERT_LE(cm.breakpoint(m), k);
      ASSERT_LT(k, cm.breakpoint(m + 1));
      ASSERT_EQ(cm.j(k), k + 1 - cm.breakpoint(m));
      ASSERT_GE(cm.j(k), 1u);
      if (k > k0 && cm.j(k) != 1) ASSERT_EQ(cm.j(k), cm.j(k - 1) + 1);
      Index nx = cm.next_cycle_start(k);
      ASSERT_GT(nx, k);
      ASSERT_EQ(cm.j(nx), 1u);
      for (Index t = k + 1; t < nx; ++t) ASSERT_NE(cm.j(t), 1u);
    }
  }
}

TEST_P(SchedulerProperties, BreakpointsNondecreasing) {
  Density g = Density::parse(GetParam());
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    Index n = g.n_min() + rng() % 100000000;
    for (Index t = n; t < n + 20; ++t) ASSERT_LE(g.breakpoint(t), g.breakpoint(t + 1));
  }
}

TEST_P(SchedulerProperties, CursorWalksBreakpoints) {
  CycleMap cm(Density::parse(GetParam()));
  CycleStartCursor cur(cm, cm.k_start());
  Index k = cm.k_start();
  for (int i = 0; i < 500; ++i) {
    ASSERT_EQ(cur.current(), cm.next_cycle_start(k));
    ASSERT_EQ(cm.breakpoint(cur.n()), cur.current());
    k = cur.current();
    cur.advance();
  }
}

INSTANTIATE_TEST_SUITE_P(Densities, SchedulerProperties,
                         ::testing::Values("lnln", "lnlnln", "ln", "const:1", "const:10"));

TEST(Scheduler, EveryTargetIndexRecurs) {
  CycleMap cm(Density::lnln());
  Index max_j = 0;
  for (Index k = 20; k <= 1000000; ++k) max_j = std::max(max_j, cm.j(k));
  std::vector<bool> seen(max_j + 1, false);
  for (Index k = 20; k <= 1000000; ++k) seen[cm.j(k)] = true;
  for (Index l = 1; l <= max_j; ++l) EXPECT_TRUE(seen[l]) << l;
  EXPECT_GE(max_j, 3u);
}
