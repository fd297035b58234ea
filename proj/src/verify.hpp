#pragma once

#include "hvector.hpp"
#include "schedule.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hypershift {

struct Witness {
  std::string z;
  Index l = 0;
  Index k = 0;
  unsigned q = 0;
  BigNat M;
  Interval log_dist;   // upper end certifies |(zB)^M f - v_l|
  Interval lemma_gap;  // |z|^M r_k - |v_l|, absolute value
  long double eps = 0;
  long double margin = 0;  // 3 eps - exp(log_dist.upper)
};

/// The indices k > K with j(k) = l, in increasing order.
class SubsequenceView {
 public:
  SubsequenceView(const CycleMap& cycles, Index l, Index K);
  Index next();

 private:
  const CycleMap& c_;
  Index l_;
  Index n_;
  Index K_;
};

struct SearchOptions {
  Index K = 0;
  /// Segments examined per step window before giving up.
  std::uint64_t segment_budget = 2000000;
  unsigned max_step = 64;
};

struct DivergenceReport {
  Index l = 0;
  Index horizon = 0;
  std::vector<std::pair<Index, long double>> orbit;     // (k, sum of 1/M up to k)
  std::vector<std::pair<Index, long double>> minorant;  // (s, partial sum)
};

struct DemoCell {
  std::string z;
  Index l = 0;
  std::string status;  // "ok" or an error code name
  std::optional<Witness> witness;
  std::string detail;
};

/// Sum over 16 <= s <= horizon of 1/(s lnln s lnln(s lnln s)).
long double minorant_partial_sum(Index horizon);

class Verifier {
 public:
  explicit Verifier(Schedule& s) : s_(s), h_(s) {}

  /// k > K with j(k) = l and ||lambda^{M_k} r_k - |v_l|| < eps.
  Index lemma_condition_1(const Multiplier& lambda, Index l, const Interval& eps,
                          const SearchOptions& opt = {});
  /// k > K with j(k) = l and |s - (x_k + alpha_l / M_k)| < delta / M_k.
  Index covering_check(Index l, const Interval& s, const Interval& delta,
                       const SearchOptions& opt = {});
  Witness hypercyclicity_check(const Multiplier& z, Index l, const SearchOptions& opt = {});
  /// Recompute a witness's conditions on another schedule (typically at a
  /// higher precision); true when both still certify.
  static bool reverify(Schedule& other, const Multiplier& z, const Witness& w);

  DivergenceReport divergence_report(Index l, Index horizon);
  std::vector<DemoCell> density_demo(const std::vector<Multiplier>& grid, Index l_max,
                                     const SearchOptions& opt = {});

  HyperVector& vector() { return h_; }

 private:
  template <class Accept>
  Index search(const Interval& s, Index l, const SearchOptions& opt, Accept&& accept);
  ScheduleEntry entry_after(const Segment& seg, Index k);

  Schedule& s_;
  HyperVector h_;
};

}  // namespace hypershift
