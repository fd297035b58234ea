#include "verify.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>

namespace hypershift {

namespace {

long double approx_dyadic(const BigNat& v, unsigned frac_bits) {
  return std::ldexp(static_cast<long double>(mpz_get_d(v.backend().data())),
                    -static_cast<int>(frac_bits));
}

long double approx_nat(const BigNat& v) {
  return static_cast<long double>(mpz_get_d(v.backend().data()));
}

long double lnln(long double x) { return std::log(std::log(x)); }

mpfr_prec_t check_bits(const Schedule& s, const BigNat& M) {
  return std::max<mpfr_prec_t>(256, s.frac_bits() + bit_length(M) + 96);
}

struct Approx {
  bool usable = false;
  long double M = 0;
  long double y = 0;
  long double theta = 0;
};

Approx approx_entry(const Schedule& s, const Segment& seg, Index k) {
  Approx a;
  BigNat M = s.M_within(seg, k);
  if (bit_length(M) > 40) return a;
  a.usable = true;
  a.M = approx_nat(M);
  a.y = approx_dyadic(seg.Y, s.frac_bits());
  a.theta = approx_dyadic(seg.Theta, s.frac_bits());
  return a;
}

long double approx_phase_distance(long double x) {
  long double f = x - std::floor(x);
  return std::min(f, 1 - f);
}

}  // namespace

SubsequenceView::SubsequenceView(const CycleMap& cycles, Index l, Index K)
    : c_(cycles), l_(l), n_(0), K_(K) {
  require(l >= 1, "target index starts at 1");
  Index from = std::max(K + 1, cycles.k_start());
  n_ = cycles.cycle_of(from);
}

Index SubsequenceView::next() {
  for (;;) {
    Index b = c_.breakpoint(n_);
    Index e = c_.breakpoint(n_ + 1);
    ++n_;
    Index k = b + l_ - 1;
    if (k < e && k > K_ && k >= c_.k_start()) return k;
  }
}

long double minorant_partial_sum(Index horizon) {
  long double sum = 0, comp = 0;
  for (Index s = 16; s <= horizon; ++s) {
    long double x = static_cast<long double>(s);
    long double a = lnln(x);
    long double term = 1.0L / (x * a * lnln(x * a));
    long double t = sum + term;
    comp += std::fabs(sum) >= std::fabs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

ScheduleEntry Verifier::entry_after(const Segment& seg, Index k) {
  if (k + 1 < seg.end) return s_.entry_at(seg, k + 1);
  auto nx = s_.next_segment(seg);
  if (nx) return s_.entry_at(*nx, k + 1);
  return s_.entry(k + 1);
}

template <class Accept>
Index Verifier::search(const Interval& s, Index l, const SearchOptions& opt, Accept&& accept) {
  require(l >= 1, "target index starts at 1");
  require(s.lower() > 0, "the searched value must be positive");
  const unsigned P = s_.frac_bits();
  const BigNat one = BigNat(1) << P;
  BigNat yt_lo, yt_hi;
  {
    PrecisionScope scope(P + 128);
    Interval scaled = s * Interval::dyadic(BigNat(1), P);
    yt_lo = scaled.floor_lower();
    yt_hi = scaled.floor_upper() + 1;
  }
  const Index K = std::max(opt.K, s_.k_start() - 1);
  const CycleMap& cycles = s_.cycles();
  bool budget_hit = false;

  for (unsigned q = 1; q <= opt.max_step; ++q) {
    auto rec = s_.scan_to_y(q, BigNat(0));
    if (!rec) {
      StepRecord prev = s_.step(q - 1);
      std::string msg = "the value needs step " + std::to_string(q) + " or later, but step " +
                        std::to_string(q - 1) + " did not end within the budget";
      if (prev.bracket) msg += "; step end bracket " + bracket_json(*prev.bracket);
      fail(ErrorCode::OutOfReach, msg);
    }
    Segment first = s_.first_segment(q);
    BigNat h_first = one / (BigNat(q) * first.M);
    if (yt_hi + 4 * h_first < first.Y) continue;
    rec = s_.scan_to_y(q, yt_hi);
    BigNat h_end = one / (BigNat(q) * rec->M_end);
    if (yt_lo > rec->Y_end + 4 * h_end) {
      if (!rec->complete) {
        std::string msg = "the value lies beyond the scanned part of step " + std::to_string(q);
        if (rec->bracket) msg += "; step end bracket " + bracket_json(*rec->bracket);
        fail(ErrorCode::OutOfReach, msg);
      }
      continue;
    }
    Segment mid = s_.segment_at_or_before_y(q, yt_lo);
    BigNat h = one / (BigNat(q) * mid.M);
    BigNat low_y = yt_lo > 4 * h ? BigNat(yt_lo - 4 * h) : BigNat(0);
    BigNat high_y = yt_hi + 4 * h;
    Segment seg = s_.segment_at_or_before_y(q, low_y);
    std::uint64_t count = 0;
    for (;;) {
      if (seg.Y > high_y) break;
      if (++count > opt.segment_budget) {
        budget_hit = true;
        break;
      }
      Index kc = cycles.breakpoint(seg.n) + l - 1;
      if (kc >= seg.start && kc < seg.end && kc > K && accept(seg, kc)) return kc;
      auto nx = s_.next_segment(seg);
      if (!nx) {
        if (!rec->complete) {
          std::string msg = "the search window runs past the scanned part of step " +
                            std::to_string(q);
          if (rec->bracket) msg += "; step end bracket " + bracket_json(*rec->bracket);
          fail(ErrorCode::OutOfReach, msg);
        }
        break;
      }
      seg = std::move(*nx);
    }
  }
  std::string msg = "no certified index for target " + std::to_string(l) + " up to step " +
                    std::to_string(opt.max_step);
  if (budget_hit) msg += " (segment budget exhausted in at least one window)";
  fail(s_.config().faithful ? ErrorCode::OutOfReach : ErrorCode::NoWitnessInBudget, msg);
}

Index Verifier::lemma_condition_1(const Multiplier& lambda, Index l, const Interval& eps,
                                  const SearchOptions& opt) {
  require(lambda.is_positive_real(), "lambda must be real and positive");
  Interval s = lambda.log_abs();
  require(s.lower() > 0, "lambda must exceed 1");
  require(eps.lower() > 0, "eps must be positive");
  return search(s, l, opt, [&](const Segment& seg, Index k) {
    Approx a = approx_entry(s_, seg, k);
    if (a.usable && std::fabs(a.M * (s.mid() - a.y)) > 3) return false;
    ScheduleEntry e = s_.entry_at(seg, k);
    PrecisionScope scope(check_bits(s_, e.M));
    Interval sv = lambda.log_abs();
    Interval gap = exp(e.alpha) * abs(expm1(Interval(e.M) * (sv - e.y())));
    return gap.certainly_lt(eps);
  });
}

Index Verifier::covering_check(Index l, const Interval& s, const Interval& delta,
                               const SearchOptions& opt) {
  require(delta.lower() > 0, "delta must be positive");
  return search(s, l, opt, [&](const Segment& seg, Index k) {
    Approx a = approx_entry(s_, seg, k);
    if (a.usable && std::fabs(a.M * (s.mid() - a.y)) > 2 * delta.mid() + 1e-6L) return false;
    ScheduleEntry e = s_.entry_at(seg, k);
    PrecisionScope scope(check_bits(s_, e.M));
    // x_k + alpha_l / M_k is y_k, so the condition reads M_k |s - y_k| < delta.
    Interval lhs = abs(s - (e.x + e.alpha / Interval(e.M))) * Interval(e.M);
    return lhs.certainly_lt(delta);
  });
}

namespace {

bool certify(HyperVector& h, const Multiplier& z, const ScheduleEntry& e, const ScheduleEntry& e1,
             Index l, Witness& w) {
  TargetVector t = enumerate(l);
  if (e1.M - e.M < BigNat(t.support())) return false;
  PrecisionScope scope(check_bits(h.schedule(), e1.M));
  Interval s = z.log_abs();
  Interval eps = t.cone_radius_interval();
  Interval lemma = exp(e.alpha) * abs(expm1(Interval(e.M) * (s - e.y())));
  if (!lemma.certainly_lt(eps)) return false;
  Interval ld = h.scaled_orbit_log_distance(z, e, e1, l);
  Interval bound = log(Interval(3L) * eps);
  if (!ld.certainly_lt(bound)) return false;
  w.z = z.describe();
  w.l = l;
  w.k = e.k;
  w.q = e.q;
  w.M = e.M;
  w.log_dist = ld;
  w.lemma_gap = lemma;
  w.eps = t.cone_radius;
  w.margin = 3 * t.cone_radius - std::exp(ld.upper());
  return true;
}

}  // namespace

Witness Verifier::hypercyclicity_check(const Multiplier& z, Index l, const SearchOptions& opt) {
  Interval s = z.log_abs();
  require(s.lower() > 0, "|z| must exceed 1");
  const bool cx = s_.config().complex;
  if (!cx) require(z.is_positive_real(), "a real schedule needs z real and positive");
  const long double turns = z.turns().mid();
  const long double sm = s.mid();
  const TargetVector t = enumerate(l);
  const long double a_l = std::exp(t.log_norm);
  const long double slack = 1.05L;
  Witness w;
  search(s, l, opt, [&](const Segment& seg, Index k) {
    Approx a = approx_entry(s_, seg, k);
    if (a.usable) {
      // Cheap necessary conditions; the tail term only adds to the distance.
      long double u = a.M * (sm - a.y);
      if (u > 40 || a_l * std::fabs(std::expm1(u)) > slack * t.cone_radius) return false;
      long double sn = cx ? std::sin(3.14159265358979323846L * approx_phase_distance(a.M * turns + a.theta)) : 0;
      long double d2 = std::expm1(u) * std::expm1(u) + 4 * std::exp(u) * sn * sn;
      if (a_l * std::sqrt(d2) > slack * 3 * t.cone_radius) return false;
    }
    ScheduleEntry e = s_.entry_at(seg, k);
    ScheduleEntry e1 = entry_after(seg, k);
    return certify(h_, z, e, e1, l, w);
  });
  return w;
}

bool Verifier::reverify(Schedule& other, const Multiplier& z, const Witness& w) {
  HyperVector h(other);
  ScheduleEntry e = other.entry(w.k);
  ScheduleEntry e1 = other.entry(w.k + 1);
  if (e.j != w.l) return false;
  Witness again;
  return certify(h, z, e, e1, w.l, again);
}

DivergenceReport Verifier::divergence_report(Index l, Index horizon) {
  require(l >= 1, "target index starts at 1");
  DivergenceReport r;
  r.l = l;
  r.horizon = horizon;
  const CycleMap& cycles = s_.cycles();
  if (horizon >= s_.k_start()) {
    Segment seg = s_.segment_at(s_.k_start());
    long double sum = 0;
    for (;;) {
      Index kc = cycles.breakpoint(seg.n) + l - 1;
      if (kc >= seg.start && kc < seg.end && kc <= horizon) {
        sum += 1.0L / approx_nat(s_.M_within(seg, kc));
        r.orbit.emplace_back(kc, sum);
      }
      if (seg.end > horizon) break;
      auto nx = s_.next_segment(seg);
      seg = nx ? std::move(*nx) : s_.segment_at(seg.end);
    }
  }
  long double sum = 0, comp = 0;
  Index mark = 1000;
  for (Index s = 16; s <= horizon; ++s) {
    long double x = static_cast<long double>(s);
    long double a = lnln(x);
    long double term = 1.0L / (x * a * lnln(x * a));
    long double t = sum + term;
    comp += std::fabs(sum) >= std::fabs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    if (s == mark || s == horizon) {
      r.minorant.emplace_back(s, sum + comp);
      if (s == mark) mark *= 10;
    }
  }
  return r;
}

std::vector<DemoCell> Verifier::density_demo(const std::vector<Multiplier>& grid, Index l_max,
                                             const SearchOptions& opt) {
  std::vector<DemoCell> out;
  for (const auto& z : grid) {
    for (Index l = 1; l <= l_max; ++l) {
      DemoCell c;
      c.z = z.describe();
      c.l = l;
      try {
        c.witness = hypercyclicity_check(z, l, opt);
        c.status = "ok";
      } catch (const Error& e) {
        c.status = error_code_name(e.code());
        c.detail = e.what();
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace hypershift
