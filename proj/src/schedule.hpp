#pragma once

#include "bignum.hpp"
#include "interval.hpp"
#include "slowfn.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace hypershift {

struct ScheduleConfig {
  Density density = Density::lnln();
  /// First index (M = 1, y = 1 there); defaults to the density's k_start.
  std::optional<Index> k_start;
  bool complex = false;
  /// Faithful runs pin the density: lnln for real, lnlnln for complex.
  bool faithful = true;
  int precision_digits = 60;
  /// Cycle starts scanned per step before falling back to a bracket.
  std::uint64_t budget = 1000000000ULL;

  static ScheduleConfig faithful_real();
  static ScheduleConfig faithful_complex();
  static ScheduleConfig accelerated(Density g, bool complex = false);
  void validate() const;
  std::string mode_name() const;
};

/// One index of the construction. y and theta are dyadic: value = Y / 2^P.
struct ScheduleEntry {
  Index k = 0;
  unsigned q = 1;
  Index j = 1;
  BigNat M;
  BigNat Y;
  BigNat Theta;
  unsigned frac_bits = 0;
  bool has_theta = false;
  /// Truncated increments folded into y, theta since the step began.
  std::uint64_t rounding_terms = 0;
  Interval alpha;  // alpha_{j(k)}
  Interval x;      // y - alpha / M
  Interval log_r;  // -M x

  Interval y() const { return Interval::dyadic(Y, -static_cast<long>(frac_bits)); }
  Interval theta() const { return Interval::dyadic(Theta, -static_cast<long>(frac_bits)); }
  /// |y_ours - y_ideal| where y_ideal sums the exact rationals 1/(qM).
  long double y_error_bound() const;
};

/// Two-sided enclosure of a step's end index when the scan budget runs out.
struct TerminationBracket {
  Index scanned_cycle_starts = 0;
  Index last_cycle_start = 0;
  long double y_progress = 0;
  long double y_progress_err = 0;
  long double remaining = 0;  // q - y at the budget
  // Explicit constants: alpha * k <= M_k <= C * k * g(k) for k beyond the scan.
  long double slope_lower = 0;
  long double constant_upper = 0;
  long double tau = 0;
  long double ln_lo = 0;
  long double ln_hi = 0;
  bool hi_finite = false;
  std::optional<BigNat> lo;
  std::optional<BigNat> hi;
};

struct StepRecord {
  unsigned q = 1;
  Index N = 0;  // last index of step q-1
  BigNat M_N;
  BigNat d;
  bool complete = false;
  Index end_index = 0;     // N_m, valid when complete
  Index reach_end = 0;     // first index not computable (exclusive)
  std::uint64_t cycle_starts = 0;
  BigNat M_end;
  BigNat Y_end;
  std::uint64_t rounding_terms = 0;
  std::optional<TerminationBracket> bracket;
};

/// A stretch [start, end) of constant y and theta inside one step: the jump
/// segment beginning at N+1, then one per cycle start.
struct Segment {
  unsigned q = 0;
  std::uint64_t seg = 0;
  Index start = 0;
  Index end = 0;
  Index n = 0;  // breakpoint n with b(n) <= start < b(n+1)
  BigNat M;     // M at start
  BigNat Y;
  BigNat Theta;
  std::uint64_t terms = 0;
};

/// The lazily built sequences M_k, y_k (theta_k), x_k, log r_k.
///
/// Steps are constructed in order and checkpointed every few thousand cycle
/// starts; any entry is recomputed from the nearest checkpoint with the same
/// arithmetic, so values do not depend on access order. M is exact; y and
/// theta are exact dyadics at the configured precision.
class Schedule {
 public:
  explicit Schedule(ScheduleConfig cfg);
  Schedule(const Schedule&) = delete;
  Schedule& operator=(const Schedule&) = delete;

  const ScheduleConfig& config() const { return cfg_; }
  const CycleMap& cycles() const { return cycles_; }
  unsigned frac_bits() const { return frac_bits_; }
  Index k_start() const { return cycles_.k_start(); }

  ScheduleEntry entry(Index k);
  /// Entry for k inside a segment already in hand (no checkpoint walk).
  ScheduleEntry entry_at(const Segment& s, Index k);
  /// Builds steps up to q; BudgetExceeded if an earlier step never ended.
  StepRecord step(unsigned q);
  /// Step record if q is built or buildable, otherwise nullopt.
  std::optional<StepRecord> try_step(unsigned q);
  /// Like try_step, but step q itself is scanned only until its y exceeds Y.
  std::optional<StepRecord> scan_to_y(unsigned q, const BigNat& Y);
  unsigned steps_built();
  /// Segment containing index k (k must be reachable).
  Segment segment_at(Index k);
  /// First segment of step q (the jump segment; for q = 1 the single index).
  Segment first_segment(unsigned q);
  /// Next segment within the same step, or nullopt at the step's last one.
  std::optional<Segment> next_segment(const Segment& s);
  /// Last segment whose y is <= the given dyadic value (real or complex),
  /// located by bisection over checkpoints.
  Segment segment_at_or_before_y(unsigned q, const BigNat& Y);

  /// alpha_{l} = ln |v_l| as an interval (cached).
  Interval alpha(Index l);

  /// M_k within a segment.
  BigNat M_within(const Segment& s, Index k) const;

 private:
  struct Checkpoint {
    Segment seg;
  };
  struct StepData {
    StepRecord rec;
    std::vector<Checkpoint> checkpoints;
    Segment frontier;
    bool finished = false;
  };

  void start_next_step();
  void scan(StepData& st, Index k_limit, const BigNat* y_limit = nullptr);
  void advance_segment(Segment& s, const StepData& st) const;
  StepData& step_data_for(Index k);
  ScheduleEntry make_entry(const Segment& s, Index k);
  TerminationBracket bracket_for(const StepData& st, const Segment& last) const;

  ScheduleConfig cfg_;
  CycleMap cycles_;
  unsigned frac_bits_;
  BigNat one_;
  std::vector<std::unique_ptr<StepData>> steps_;
  std::map<Index, Interval> alpha_cache_;
  std::recursive_mutex mu_;
};

/// Termination bracket for a real-mode step from an explicit scan state; also
/// used on its own to re-derive the documented constants.
TerminationBracket compute_bracket(const Density& g, unsigned q, const BigNat& d,
                                   Index last_start, Index last_n, const BigNat& M_last,
                                   long double y_lo, long double y_hi, Index scanned);

std::string bracket_json(const TerminationBracket& b);

}  // namespace hypershift
