#pragma once

#include "bignum.hpp"
#include "interval.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hypershift {

using Index = std::uint64_t;

enum class DensityKind { LnLn, LnLnLn, Ln, Const };

/// Slowly varying density g used by the cycle scheduler: cycles of j(k) start
/// at the breakpoints floor(n * g(n)), and the per-index growth of M_k carries
/// a q * floor(g(k)) term.
///
/// Floors are certified: a fast long double evaluation is accepted only when
/// its error bound excludes every integer; otherwise MPFR intervals are used
/// at growing precision, and PrecisionUndecidable is raised if that fails too.
class Density {
 public:
  static Density lnln();
  static Density lnlnln();
  static Density ln();
  /// g = num/den exactly; requires num/den >= 1.
  static Density constant(std::int64_t num, std::int64_t den);
  /// "lnln", "lnlnln", "ln" or "const:C" with C a decimal literal >= 1.
  static Density parse(const std::string& text);

  DensityKind kind() const { return kind_; }
  std::string name() const;
  /// Smallest valid argument; g >= 1 from here on.
  Index n_min() const { return n_min_; }
  /// Default first schedule index (20 for lnln).
  Index default_k_start() const;

  long double eval(long double n) const;
  /// g(e^u), for analytic bounds far beyond 64-bit arguments.
  long double eval_log(long double u) const;
  Interval eval(const Interval& n) const;

  /// floor(n * g(n)), certified.
  Index breakpoint(Index n) const;
  /// floor(g(k)), certified through precomputed plateau thresholds.
  std::uint64_t floor_at(Index k) const;
  /// sum_{t=a}^{b-1} floor(g(t)).
  BigNat floor_sum(Index a, Index b) const;
  /// First index > k where floor(g) changes (UINT64_MAX if none reachable).
  Index next_plateau(Index k) const;

 private:
  Density(DensityKind kind, Index n_min) : kind_(kind), n_min_(n_min) {}
  void build_thresholds();

  DensityKind kind_;
  Index n_min_;
  std::int64_t num_ = 1;
  std::int64_t den_ = 1;
  // thresholds_[c-1] = smallest k with g(k) >= c.
  std::vector<Index> thresholds_;
};

/// The scheduler j(k) of a density, starting at k_start (a breakpoint).
class CycleMap {
 public:
  explicit CycleMap(Density g);
  CycleMap(Density g, Index k_start);

  const Density& density() const { return g_; }
  Index k_start() const { return k_start_; }

  Index breakpoint(Index n) const;
  /// Largest n >= n_min with breakpoint(n) <= k.
  Index cycle_of(Index k) const;
  Index j(Index k) const;
  /// min{ m > k : j(m) = 1 }, searched over n rather than k.
  Index next_cycle_start(Index k) const;

 private:
  Density g_;
  Index k_start_;
};

/// True iff j(k) < floor(ln ln k) + 3 for every k in [k_lo, k_hi] (lnln map).
bool check_j_bound(const CycleMap& cm, Index k_lo, Index k_hi);

/// Streams consecutive distinct breakpoints starting after a given index.
class CycleStartCursor {
 public:
  CycleStartCursor(const CycleMap& cm, Index after);
  /// Current cycle start (> the `after` given at construction).
  Index current() const { return current_; }
  /// n with breakpoint(n) == current().
  Index n() const { return n_; }
  void advance();

 private:
  const CycleMap* cm_;
  Index n_;
  Index current_;
};

}  // namespace hypershift
