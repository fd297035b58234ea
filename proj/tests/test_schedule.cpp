#include "errors.hpp"
#include "reference.hpp"
#include "schedule.hpp"
#include "targets.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace hypershift;

namespace {

long double to_ld(const Interval& v) { return v.mid(); }

reference::F ref_alpha(Index l) {
  reference::F s = 0;
  for (auto c : enumerate(l).coords) {
    reference::F re = reference::F(c.re.num) * pow(reference::F(2), c.re.shift);
    reference::F im = reference::F(c.im.num) * pow(reference::F(2), c.im.shift);
    s += re * re + im * im;
  }
  return log(s) / 2;
}

reference::F to_ref(const Interval& v) { return reference::F(v.str(40).substr(1, v.str(40).find(',') - 1)); }

}  // namespace

TEST(Schedule, OpeningEntries) {
  Schedule s(ScheduleConfig::faithful_real());
  ScheduleEntry e20 = s.entry(20);
  EXPECT_EQ(e20.M, BigNat(1));
  EXPECT_TRUE(e20.y().contains(1));
  EXPECT_TRUE(e20.x.contains(1));
  EXPECT_TRUE(e20.log_r.contains(-1));
  EXPECT_EQ(e20.q, 1u);
  ScheduleEntry e21 = s.entry(21);
  EXPECT_EQ(e21.M, BigNat(8));
  EXPECT_EQ(e21.j, 1u);
  EXPECT_TRUE(e21.y().contains(1));
  EXPECT_TRUE(e21.log_r.contains(-8));
  EXPECT_EQ(s.entry(22).M, BigNat(17));
  ScheduleEntry e23 = s.entry(23);
  EXPECT_EQ(e23.M, BigNat(26));
  Interval y23 = Interval(1L) + Interval::rational(1, 52);
  EXPECT_LT(std::fabs(to_ld(e23.y()) - to_ld(y23)), 1e-30L);
  EXPECT_LT(std::fabs(to_ld(e23.log_r) + 26.5L), 1e-25L);
}

TEST(Schedule, JumpRecurrence) {
  Schedule s(ScheduleConfig::accelerated(Density::constant(1, 1)));
  StepRecord r = s.step(1);
  EXPECT_EQ(r.end_index, 20u);
  // Jump into step 2 from M_20 = 1: M_21 = 2^2 (1 + 1), y_21 = 2/2.
  ScheduleEntry e = s.entry(21);
  EXPECT_EQ(e.M, BigNat(8));
  EXPECT_TRUE(e.y().contains(1));
}

TEST(Schedule, MatchesTermByTermReference) {
  const std::uint64_t count = 10000;
  auto ref = reference::lnln_prefix(count);
  Schedule s(ScheduleConfig::faithful_real());
  for (const auto& row : ref) {
    ScheduleEntry e = s.entry(row.k);
    ASSERT_EQ(e.M.str(), row.M.str()) << row.k;
    ASSERT_EQ(e.j, row.j) << row.k;
    ASSERT_EQ(e.q, row.q) << row.k;
    reference::F y = to_ref(e.y());
    ASSERT_LT(abs(y - row.y) / row.y, reference::F(1e-20)) << row.k;
    reference::F x_ref = row.y - ref_alpha(row.j) / reference::F(row.M);
    reference::F x = to_ref(e.x);
    ASSERT_LT(abs(x - x_ref) / abs(x_ref), reference::F(1e-20)) << row.k;
  }
}

TEST(Schedule, AccessOrderDoesNotMatter) {
  Schedule a(ScheduleConfig::faithful_real());
  std::vector<ScheduleEntry> stream;
  for (Index k = 20; k < 12000; ++k) stream.push_back(a.entry(k));
  Schedule b(ScheduleConfig::faithful_real());
  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    Index k = 20 + rng() % (12000 - 20);
    ScheduleEntry e = b.entry(k);
    const ScheduleEntry& f = stream[k - 20];
    ASSERT_EQ(e.M, f.M);
    ASSERT_EQ(e.Y, f.Y);
    ASSERT_EQ(e.log_r.str(), f.log_r.str());
  }
}

TEST(Schedule, MonotoneGrowthAndGapInsideStep) {
  for (auto cfg : {ScheduleConfig::faithful_real(),
                   ScheduleConfig::accelerated(Density::constant(10, 1)),
                   ScheduleConfig::accelerated(Density::ln())}) {
    Schedule s(cfg);
    ScheduleEntry prev = s.entry(s.k_start());
    for (Index k = s.k_start() + 1; k < s.k_start() + 20000; ++k) {
      ScheduleEntry e = s.entry(k);
      ASSERT_GT(e.M, prev.M);
      Interval mx_prev = -prev.log_r;
      Interval mx = -e.log_r;
      ASSERT_TRUE(mx.certainly_gt(mx_prev)) << k;
      if (e.q == prev.q) {
        ASSERT_GE(e.M - prev.M, BigNat(e.q) * e.q);
        ASSERT_TRUE((mx - mx_prev).certainly_gt(Interval(static_cast<long>(2 * e.q - 3)))) << k;
      }
      prev = e;
    }
  }
}

TEST(Schedule, ConstantDensityStepTwoEndsExactly) {
  Schedule s(ScheduleConfig::accelerated(Density::constant(1, 1)));
  StepRecord r = s.step(2);
  ASSERT_TRUE(r.complete);
  // Found by an independent scan of the same recurrences.
  EXPECT_EQ(r.end_index, 93037372u);
  EXPECT_EQ(r.cycle_starts, 93037351u);
  EXPECT_EQ(r.M_end, BigNat(837336167));
  ScheduleEntry end = s.entry(r.end_index);
  EXPECT_TRUE(end.y().certainly_gt(Interval(2L)));
  EXPECT_TRUE(end.y().certainly_lt(Interval(4L)));
  ScheduleEntry before = s.entry(r.end_index - 1);
  EXPECT_FALSE(before.y().certainly_gt(Interval(2L)));
  // Crossing into step 3 the gap is at least 2q.
  ScheduleEntry next = s.entry(r.end_index + 1);
  EXPECT_EQ(next.q, 3u);
  EXPECT_EQ(next.M, BigNat(9) * (r.M_end + 1));
  EXPECT_TRUE(((-next.log_r) - (-end.log_r)).certainly_gt(Interval(6L)));
  EXPECT_GE(next.M - end.M, BigNat(9));
}

TEST(Schedule, BracketEnclosesKnownEnd) {
  for (std::uint64_t budget : {1000ull, 100000ull, 10000000ull}) {
    auto cfg = ScheduleConfig::accelerated(Density::constant(1, 1));
    cfg.budget = budget;
    Schedule s(cfg);
    auto r = s.try_step(2);
    ASSERT_TRUE(r);
    ASSERT_FALSE(r->complete);
    ASSERT_TRUE(r->bracket);
    const TerminationBracket& b = *r->bracket;
    ASSERT_TRUE(b.lo && b.hi && b.hi_finite);
    EXPECT_LE(*b.lo, BigNat(93037372)) << budget;
    EXPECT_GE(*b.hi, BigNat(93037372)) << budget;
    EXPECT_EQ(b.scanned_cycle_starts, budget);
  }
}

TEST(Schedule, FaithfulBracketIsReproducible) {
  auto cfg = ScheduleConfig::faithful_real();
  cfg.budget = 200000;
  Schedule s(cfg);
  auto r = s.try_step(2);
  ASSERT_TRUE(r && r->bracket);
  const TerminationBracket& b = *r->bracket;
  EXPECT_TRUE(b.hi_finite);
  EXPECT_GT(b.ln_hi, b.ln_lo);
  EXPECT_GT(b.ln_lo, std::log(static_cast<long double>(b.last_cycle_start)));
  // Re-derive from the recorded scan state.
  ScheduleEntry last = s.entry(b.last_cycle_start);
  long double y = std::ldexp(static_cast<long double>(mpz_get_d(last.Y.backend().data())),
                             -static_cast<int>(last.frac_bits));
  TerminationBracket again =
      compute_bracket(Density::lnln(), 2, r->d, b.last_cycle_start,
                      s.cycles().cycle_of(b.last_cycle_start), last.M, b.y_progress,
                      b.y_progress + b.y_progress_err, b.scanned_cycle_starts);
  EXPECT_NEAR(static_cast<double>(y), static_cast<double>(b.y_progress), 1e-15);
  EXPECT_EQ(bracket_json(again), bracket_json(b));
  EXPECT_THROW(s.entry(b.last_cycle_start + 1000000000ULL), Error);
}

TEST(Schedule, ConvergentDensityIsFlagged) {
  auto cfg = ScheduleConfig::accelerated(Density::ln());
  cfg.budget = 2000;
  Schedule s(cfg);
  try {
    s.try_step(2);
    FAIL() << "expected DivergenceViolated";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivergenceViolated);
  }
}

TEST(Schedule, ThetaSweepsBeforeYAdvances) {
  auto cfg = ScheduleConfig::accelerated(Density::constant(1, 1), true);
  Schedule s(cfg);
  const BigNat one = BigNat(1) << s.frac_bits();
  auto check_step = [&](const Segment& a, const Segment& b) {
    BigNat h = one / (BigNat(2) * b.M);
    if (b.Theta == 0) {
      ASSERT_EQ(b.Y, a.Y + h);
      ASSERT_GE(a.Theta + h, one);
    } else {
      ASSERT_EQ(b.Theta, a.Theta + h);
      ASSERT_EQ(b.Y, a.Y);
    }
  };
  Segment seg = s.first_segment(2);
  const BigNat y0 = seg.Y;
  for (int i = 0; i < 100000; ++i) {
    auto nx = s.next_segment(seg);
    ASSERT_TRUE(nx);
    check_step(seg, *nx);
    seg = *nx;
  }
  // The first full sweep ends tens of millions of segments in.
  Segment last = s.segment_at_or_before_y(2, y0);
  EXPECT_EQ(last.Y, y0);
  EXPECT_GT(last.seg, 1000000u);
  auto reset = s.next_segment(last);
  ASSERT_TRUE(reset);
  EXPECT_EQ(reset->Theta, BigNat(0));
  check_step(last, *reset);
  for (int i = 0; i < 1000; ++i) {
    auto nx = s.next_segment(*reset);
    ASSERT_TRUE(nx);
    check_step(*reset, *nx);
    reset = nx;
  }
}

TEST(Schedule, ConfigValidation) {
  auto c = ScheduleConfig::faithful_real();
  c.precision_digits = 30;
  EXPECT_THROW(Schedule{c}, Error);
  c = ScheduleConfig::faithful_real();
  c.density = Density::constant(1, 1);
  EXPECT_THROW(Schedule{c}, Error);
  c = ScheduleConfig::accelerated(Density::constant(1, 1));
  c.budget = 0;
  EXPECT_THROW(Schedule{c}, Error);
  EXPECT_THROW(Schedule s(ScheduleConfig::faithful_real()); s.entry(5), Error);
}
