#include "schedule.hpp"

#include "errors.hpp"
#include "targets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace hypershift {

namespace {

constexpr std::uint64_t kCheckpointStride = 4096;

std::uint64_t floor_sum_u64(const Density& g, Index a, Index b) {
  std::uint64_t sum = 0;
  Index t = a;
  while (t < b) {
    Index e = std::min(g.next_plateau(t), b);
    sum += g.floor_at(t) * (e - t);
    t = e;
  }
  return sum;
}

long double to_ld(const BigNat& v) { return mpz_get_d(v.backend().data()); }

}  // namespace

ScheduleConfig ScheduleConfig::faithful_real() { return ScheduleConfig{}; }

ScheduleConfig ScheduleConfig::faithful_complex() {
  ScheduleConfig c;
  c.density = Density::lnlnln();
  c.complex = true;
  return c;
}

ScheduleConfig ScheduleConfig::accelerated(Density g, bool complex) {
  ScheduleConfig c;
  c.density = std::move(g);
  c.complex = complex;
  c.faithful = false;
  c.precision_digits = 40;
  c.budget = 200000000ULL;
  return c;
}

void ScheduleConfig::validate() const {
  require(budget >= 1, "budget must be >= 1");
  require(precision_digits >= 20, "precision must be at least 20 digits");
  if (faithful) {
    require(precision_digits >= 50, "faithful mode needs precision >= 50 digits");
    if (complex) {
      require(density.kind() == DensityKind::LnLnLn, "faithful complex mode uses the lnlnln density");
    } else {
      require(density.kind() == DensityKind::LnLn, "faithful real mode uses the lnln density");
    }
  }
}

std::string ScheduleConfig::mode_name() const {
  if (faithful) return complex ? "faithful-complex" : "faithful-real";
  return complex ? "accelerated-complex" : "accelerated";
}

long double ScheduleEntry::y_error_bound() const {
  return std::ldexp(static_cast<long double>(rounding_terms), -static_cast<int>(frac_bits));
}

Schedule::Schedule(ScheduleConfig cfg)
    : cfg_(std::move(cfg)),
      cycles_(cfg_.density, cfg_.k_start.value_or(cfg_.density.default_k_start())),
      frac_bits_(static_cast<unsigned>(digits_to_bits(cfg_.precision_digits))) {
  cfg_.validate();
  one_ = 1;
  one_ <<= frac_bits_;
  auto first = std::make_unique<StepData>();
  StepRecord& r = first->rec;
  Index k0 = cycles_.k_start();
  r.q = 1;
  r.N = k0 - 1;
  r.M_N = 0;
  r.d = 0;
  r.complete = true;
  r.end_index = k0;
  r.reach_end = k0 + 1;
  r.M_end = 1;
  r.Y_end = one_;
  Segment s;
  s.q = 1;
  s.start = k0;
  s.end = k0 + 1;
  s.n = cycles_.cycle_of(k0);
  s.M = 1;
  s.Y = one_;
  s.Theta = 0;
  first->checkpoints.push_back({s});
  first->frontier = s;
  first->finished = true;
  steps_.push_back(std::move(first));
}

void Schedule::advance_segment(Segment& s, const StepData& st) const {
  const unsigned q = st.rec.q;
  Index next = s.end;
  Index delta = next - s.start;
  std::uint64_t fs = floor_sum_u64(cycles_.density(), s.start, next);
  mpz_ptr M = s.M.backend().data();
  mpz_addmul_ui(M, st.rec.d.backend().data(), delta);
  mpz_add_ui(M, M, static_cast<unsigned long>(q) * fs);
  s.n += 1;
  s.start = next;
  s.end = cycles_.breakpoint(s.n + 1);
  s.seg += 1;

  thread_local BigNat qm;
  thread_local BigNat h;
  mpz_mul_ui(qm.backend().data(), M, q);
  if (mpz_sizeinbase(qm.backend().data(), 2) + 40 > frac_bits_) {
    fail(ErrorCode::PrecisionUndecidable,
         "y increments 1/(qM) fall below the fixed-point resolution; raise the precision");
  }
  mpz_tdiv_q(h.backend().data(), one_.backend().data(), qm.backend().data());
  if (cfg_.complex) {
    mpz_ptr T = s.Theta.backend().data();
    mpz_add(T, T, h.backend().data());
    if (mpz_cmp(T, one_.backend().data()) >= 0) {
      mpz_set_ui(T, 0);
      mpz_add(s.Y.backend().data(), s.Y.backend().data(), h.backend().data());
    }
  } else {
    mpz_add(s.Y.backend().data(), s.Y.backend().data(), h.backend().data());
  }
  s.terms += 1;
}

void Schedule::start_next_step() {
  StepData& prev = *steps_.back();
  scan(prev, ~Index{0});
  if (!prev.rec.complete) {
    fail(ErrorCode::BudgetExceeded,
         "step " + std::to_string(prev.rec.q) + " did not end within the budget");
  }
  auto st = std::make_unique<StepData>();
  StepRecord& r = st->rec;
  const unsigned q = prev.rec.q + 1;
  r.q = q;
  r.N = prev.rec.end_index;
  r.M_N = prev.rec.M_end;
  BigNat m1 = BigNat(q) * q * (r.M_N + 1);
  r.d = m1 - r.M_N;

  Segment& s = st->frontier;
  s.q = q;
  s.start = r.N + 1;
  s.n = cycles_.cycle_of(s.start);
  s.end = cycles_.breakpoint(s.n + 1);
  s.M = m1;
  s.Y = (one_ * 2) / q;
  s.Theta = 0;
  s.terms = (q & (q - 1)) == 0 ? 0 : 1;
  st->checkpoints.push_back({s});
  r.complete = false;
  r.reach_end = s.end;
  r.M_end = s.M;
  r.Y_end = s.Y;
  r.rounding_terms = s.terms;
  steps_.push_back(std::move(st));
}

void Schedule::scan(StepData& st, Index k_limit, const BigNat* y_limit) {
  StepRecord& r = st.rec;
  Segment& s = st.frontier;
  const BigNat target = one_ * r.q;
  while (!st.finished && s.end <= k_limit && (!y_limit || s.Y <= *y_limit)) {
    if (r.cycle_starts >= cfg_.budget) {
      st.finished = true;
      r.bracket = bracket_for(st, s);
      break;
    }
    advance_segment(s, st);
    ++r.cycle_starts;
    r.reach_end = s.end;
    r.M_end = s.M;
    r.Y_end = s.Y;
    r.rounding_terms = s.terms;
    if (s.Y > target) {
      st.finished = true;
      r.complete = true;
      r.end_index = s.start;
      r.reach_end = s.start + 1;
      s.end = s.start + 1;
      st.checkpoints.push_back({s});
      break;
    }
    if (s.seg % kCheckpointStride == 0) st.checkpoints.push_back({s});
  }
}

TerminationBracket Schedule::bracket_for(const StepData& st, const Segment& last) const {
  const long double scale = std::ldexp(1.0L, -static_cast<int>(frac_bits_));
  long double y_lo = to_ld(last.Y) * scale;
  // Truncation makes our y a lower bound of the exact rational sum.
  long double y_hi = y_lo + static_cast<long double>(last.terms + 1) * scale + 1e-18L * y_lo;
  if (cfg_.complex) {
    TerminationBracket b;
    b.scanned_cycle_starts = st.rec.cycle_starts;
    b.last_cycle_start = last.start;
    b.y_progress = y_lo;
    b.y_progress_err = y_hi - y_lo;
    b.remaining = st.rec.q - y_lo;
    b.ln_lo = std::log(static_cast<long double>(last.end));
    b.lo = BigNat(last.end);
    b.hi_finite = false;
    return b;
  }
  TerminationBracket b = compute_bracket(cycles_.density(), st.rec.q, st.rec.d, last.start, last.n,
                                         last.M, y_lo, y_hi, st.rec.cycle_starts);
  return b;
}

Schedule::StepData& Schedule::step_data_for(Index k) {
  require(k >= cycles_.k_start(), "schedule index below k_start");
  for (std::size_t i = 0;; ++i) {
    if (i == steps_.size()) start_next_step();
    StepData& st = *steps_[i];
    scan(st, k);
    if (st.rec.complete) {
      if (k <= st.rec.end_index) return st;
      continue;
    }
    if (k < st.frontier.end) return st;
    std::string msg = "index " + std::to_string(k) + " lies beyond the scanned part of step " +
                      std::to_string(st.rec.q);
    if (st.rec.bracket) msg += "; step end bracket " + bracket_json(*st.rec.bracket);
    fail(ErrorCode::BudgetExceeded, msg);
  }
}

BigNat Schedule::M_within(const Segment& s, Index k) const {
  const StepRecord& r = const_cast<Schedule*>(this)->steps_[s.q - 1]->rec;
  BigNat M = s.M;
  if (k > s.start) {
    mpz_addmul_ui(M.backend().data(), r.d.backend().data(), k - s.start);
    BigNat fs = cycles_.density().floor_sum(s.start, k);
    M += fs * s.q;
  }
  return M;
}

Segment Schedule::segment_at(Index k) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  StepData& st = step_data_for(k);
  auto it = std::upper_bound(st.checkpoints.begin(), st.checkpoints.end(), k,
                             [](Index v, const Checkpoint& c) { return v < c.seg.start; });
  Segment s = std::prev(it)->seg;
  while (s.end <= k) advance_segment(s, st);
  if (st.rec.complete && s.start == st.rec.end_index) s.end = s.start + 1;
  return s;
}

Segment Schedule::first_segment(unsigned q) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  if (!scan_to_y(q, BigNat(0))) step(q);
  return steps_[q - 1]->checkpoints.front().seg;
}

std::optional<Segment> Schedule::next_segment(const Segment& s) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  if (s.q == 1) return std::nullopt;
  StepData& st = *steps_[s.q - 1];
  if (st.rec.complete && s.start >= st.rec.end_index) return std::nullopt;
  scan(st, s.end);
  if (!st.rec.complete && s.end >= st.frontier.end) return std::nullopt;
  Segment n = s;
  advance_segment(n, st);
  if (st.rec.complete && n.start == st.rec.end_index) n.end = n.start + 1;
  return n;
}

Segment Schedule::segment_at_or_before_y(unsigned q, const BigNat& Y) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  if (!scan_to_y(q, Y)) step(q);
  const StepData& st = *steps_[q - 1];
  auto it = std::upper_bound(st.checkpoints.begin(), st.checkpoints.end(), Y,
                             [](const BigNat& v, const Checkpoint& c) { return v < c.seg.Y; });
  if (it == st.checkpoints.begin()) return st.checkpoints.front().seg;
  Segment s = std::prev(it)->seg;
  for (;;) {
    auto n = next_segment(s);
    if (!n || n->Y > Y) break;
    s = *n;
  }
  return s;
}

StepRecord Schedule::step(unsigned q) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  require(q >= 1, "step numbers start at 1");
  for (unsigned i = 0; i < q; ++i) {
    if (i == steps_.size()) start_next_step();
    scan(*steps_[i], ~Index{0});
  }
  return steps_[q - 1]->rec;
}

std::optional<StepRecord> Schedule::try_step(unsigned q) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  require(q >= 1, "step numbers start at 1");
  for (unsigned i = 0; i < q; ++i) {
    if (i == steps_.size()) {
      if (!steps_.back()->rec.complete) return std::nullopt;
      start_next_step();
    }
    scan(*steps_[i], ~Index{0});
  }
  return steps_[q - 1]->rec;
}

std::optional<StepRecord> Schedule::scan_to_y(unsigned q, const BigNat& Y) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  require(q >= 1, "step numbers start at 1");
  for (unsigned i = 0; i < q; ++i) {
    if (i == steps_.size()) {
      if (!steps_.back()->rec.complete) return std::nullopt;
      start_next_step();
    }
    if (i + 1 < q) scan(*steps_[i], ~Index{0});
  }
  scan(*steps_[q - 1], ~Index{0}, &Y);
  return steps_[q - 1]->rec;
}

unsigned Schedule::steps_built() {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  return static_cast<unsigned>(steps_.size());
}

Interval Schedule::alpha(Index l) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = alpha_cache_.find(l);
  if (it != alpha_cache_.end()) return it->second;
  PrecisionScope scope(frac_bits_ + 64);
  Interval a = enumerate(l).log_norm_interval();
  alpha_cache_.emplace(l, a);
  return a;
}

ScheduleEntry Schedule::make_entry(const Segment& s, Index k) {
  ScheduleEntry e;
  e.k = k;
  e.q = s.q;
  e.j = cycles_.j(k);
  e.M = M_within(s, k);
  e.Y = s.Y;
  e.Theta = s.Theta;
  e.frac_bits = frac_bits_;
  e.has_theta = cfg_.complex;
  e.rounding_terms = s.terms;
  e.alpha = alpha(e.j);
  PrecisionScope scope(static_cast<mpfr_prec_t>(frac_bits_ + bit_length(e.M) + 64));
  Interval M(e.M);
  Interval y = e.y();
  e.log_r = e.alpha - M * y;
  e.x = y - e.alpha / M;
  return e;
}

ScheduleEntry Schedule::entry_at(const Segment& s, Index k) {
  require(k >= s.start && k < s.end, "index outside the segment");
  std::lock_guard<std::recursive_mutex> lock(mu_);
  return make_entry(s, k);
}

ScheduleEntry Schedule::entry(Index k) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  Segment s = segment_at(k);
  return make_entry(s, k);
}

TerminationBracket compute_bracket(const Density& g, unsigned q, const BigNat& d, Index last_start,
                                   Index last_n, const BigNat& M_last, long double y_lo,
                                   long double y_hi, Index scanned) {
  TerminationBracket b;
  b.scanned_cycle_starts = scanned;
  b.last_cycle_start = last_start;
  b.y_progress = y_lo;
  b.y_progress_err = y_hi - y_lo;
  b.remaining = q - y_lo;
  const long double K = static_cast<long double>(last_start);
  const long double dd = to_ld(d);
  const long double MK = to_ld(M_last);
  const long double gK = g.eval(K);
  const long double nB = static_cast<long double>(last_n);
  // M_k >= M_K + (k-K)(d + q floor g(K)) >= slope * k.
  b.slope_lower = std::min(MK / K, dd + q * static_cast<long double>(g.floor_at(last_start)));
  // M_k <= M_K + (k-K)(d + q g(k)) <= C k g(k).
  b.constant_upper = MK / (K * gK) + dd / gK + q;
  b.tau = 1.0L / (nB * g.eval(nB));
  const long double coef_up = 1.0L / (q * b.slope_lower * (1 - b.tau));
  const long double coef_lo = 1.0L / (q * b.constant_upper);
  const long double R_lo = q - y_hi;
  const long double R_hi = q - y_lo;
  auto step_of = [](long double u) { return std::max(1e-3L * u, 1e-3L); };
  auto f_up = [&](long double u) { return 1.0L / g.eval_log(u); };
  auto f_lo = [&](long double u) {
    long double gu = g.eval_log(u);
    return 1.0L / (gu * g.eval_log(u + std::log(gu)));
  };

  // lo: every n <= e^{u_prev} keeps the (over-estimated) sum below R.
  long double u = std::log(nB);
  long double u_prev = u;
  long double acc = 0;
  while (coef_up * acc * (1 + 1e-12L) < R_lo) {
    long double h = step_of(u);
    u_prev = u;
    acc += f_up(u) * h;
    u += h;
  }
  long double gl = g.eval_log(u_prev);
  b.ln_lo = u_prev + std::log(gl) + std::log1p(-std::exp(-(u_prev + std::log(gl)))) - 1e-12L;
  b.ln_lo = std::max(b.ln_lo, std::log(K + 1));

  // hi: the (under-estimated) sum has passed R by n + 1 = e^{u}.
  u = std::log(nB + 1);
  acc = 0;
  long double mark = u * 2;
  long double acc_at_mark = 0;
  long double last_gain = -1;
  int shrinking = 0;
  b.hi_finite = false;
  while (u < 1e30L) {
    long double h = step_of(u);
    acc += f_lo(u + h) * h;
    u += h;
    if (coef_lo * acc * (1 - 1e-12L) >= R_hi) {
      b.hi_finite = true;
      break;
    }
    if (u >= mark) {
      long double gain = acc - acc_at_mark;
      shrinking = (last_gain > 0 && gain < 0.6L * last_gain) ? shrinking + 1 : 0;
      last_gain = gain;
      acc_at_mark = acc;
      mark = u * 2;
      if (shrinking >= 8) {
        fail(ErrorCode::DivergenceViolated,
             "the cycle-start series of density " + g.name() +
                 " looks convergent; step termination cannot be certified");
      }
    }
  }
  if (b.hi_finite) {
    long double eu = std::exp(-u);
    b.ln_hi = u + std::log1p(eu) + std::log(g.eval_log(u + eu)) + 1e-12L;
  }

  auto decimal_of = [](long double ln_v, bool upper) -> std::optional<BigNat> {
    if (ln_v > 4000) return std::nullopt;
    PrecisionScope scope(static_cast<mpfr_prec_t>(ln_v * 1.4427L) + 96);
    Interval v = exp(Interval::exact_double(static_cast<double>(ln_v)).widened(1e-15));
    return upper ? BigNat(v.floor_upper() + 1) : v.floor_lower();
  };
  b.lo = decimal_of(b.ln_lo, false);
  if (b.hi_finite) b.hi = decimal_of(b.ln_hi, true);
  return b;
}

std::string bracket_json(const TerminationBracket& b) {
  std::ostringstream os;
  char buf[64];
  auto num = [&](long double v) {
    std::snprintf(buf, sizeof buf, "%.18Lg", v);
    return std::string(buf);
  };
  os << "{\"scanned_cycle_starts\":" << b.scanned_cycle_starts
     << ",\"last_cycle_start\":" << b.last_cycle_start << ",\"y_progress\":" << num(b.y_progress)
     << ",\"y_progress_err\":" << num(b.y_progress_err) << ",\"remaining\":" << num(b.remaining)
     << ",\"slope_lower\":" << num(b.slope_lower) << ",\"constant_upper\":" << num(b.constant_upper)
     << ",\"tau\":" << num(b.tau) << ",\"ln_lo\":" << num(b.ln_lo);
  os << ",\"lo\":" << (b.lo ? "\"" + b.lo->str() + "\"" : std::string("null"));
  if (b.hi_finite) {
    os << ",\"ln_hi\":" << num(b.ln_hi)
       << ",\"hi\":" << (b.hi ? "\"" + b.hi->str() + "\"" : std::string("null"));
  } else {
    os << ",\"ln_hi\":null,\"hi\":null";
  }
  os << "}";
  return os.str();
}

}  // namespace hypershift
