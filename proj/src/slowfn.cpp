#include "slowfn.hpp"

#include "errors.hpp"

#include <cfloat>
#include <cmath>
#include <limits>

namespace hypershift {

namespace {

constexpr Index kUnreachable = std::numeric_limits<Index>::max();

// floor(v) if the interval [v - err, v + err] contains no integer boundary.
bool certified_floor(long double v, long double err, Index& out) {
  long double lo = std::floor(v - err);
  long double hi = std::floor(v + err);
  if (lo != hi || lo < 0 || lo >= 1.8e19L) return false;
  out = static_cast<Index>(lo);
  return true;
}

Index floor_from_interval(const Interval& v, const char* what) {
  BigNat lo = v.floor_lower();
  BigNat hi = v.floor_upper();
  if (lo != hi || !fits_u64(lo)) {
    fail(ErrorCode::PrecisionUndecidable, std::string("cannot certify floor of ") + what);
  }
  return to_u64(lo);
}

}  // namespace

Density Density::lnln() {
  Density d(DensityKind::LnLn, 16);
  d.build_thresholds();
  return d;
}

Density Density::lnlnln() {
  // 3814280 = ceil(e^{e^e}): first n with ln ln ln n > 1.
  Density d(DensityKind::LnLnLn, 3814280);
  d.build_thresholds();
  return d;
}

Density Density::ln() {
  Density d(DensityKind::Ln, 3);
  d.build_thresholds();
  return d;
}

Density Density::constant(std::int64_t num, std::int64_t den) {
  require(den > 0 && num >= den, "constant density must be >= 1");
  Density d(DensityKind::Const, 1);
  d.num_ = num;
  d.den_ = den;
  return d;
}

Density Density::parse(const std::string& text) {
  if (text == "lnln") return lnln();
  if (text == "lnlnln") return lnlnln();
  if (text == "ln") return ln();
  if (text.rfind("const:", 0) == 0) {
    std::string c = text.substr(6);
    std::int64_t num = 0;
    std::int64_t den = 1;
    bool seen_dot = false;
    bool any = false;
    for (char ch : c) {
      if (ch == '.' && !seen_dot) {
        seen_dot = true;
        continue;
      }
      require(ch >= '0' && ch <= '9', "bad constant density '" + text + "'");
      require(num < 100000000000LL && den < 1000000000000LL, "constant density has too many digits");
      num = num * 10 + (ch - '0');
      if (seen_dot) den *= 10;
      any = true;
    }
    require(any, "bad constant density '" + text + "'");
    return constant(num, den);
  }
  fail(ErrorCode::InvalidArgument,
       "unknown density '" + text + "' (expected lnln, lnlnln, ln or const:C)");
}

std::string Density::name() const {
  switch (kind_) {
    case DensityKind::LnLn: return "lnln";
    case DensityKind::LnLnLn: return "lnlnln";
    case DensityKind::Ln: return "ln";
    case DensityKind::Const: {
      if (den_ == 1) return "const:" + std::to_string(num_);
      std::string digits = std::to_string(num_);
      std::size_t frac = std::to_string(den_).size() - 1;
      while (digits.size() <= frac) digits.insert(0, "0");
      return "const:" + digits.substr(0, digits.size() - frac) + "." + digits.substr(digits.size() - frac);
    }
  }
  return "?";
}

Index Density::default_k_start() const {
  if (kind_ == DensityKind::LnLn) return 20;
  if (kind_ == DensityKind::LnLnLn) return breakpoint(n_min_);
  // Smallest breakpoint >= 20, so short densities start at index 20 or just after.
  Index n = n_min_;
  while (breakpoint(n) < 20) ++n;
  return breakpoint(n);
}

long double Density::eval(long double n) const {
  switch (kind_) {
    case DensityKind::LnLn: return std::log(std::log(n));
    case DensityKind::LnLnLn: return std::log(std::log(std::log(n)));
    case DensityKind::Ln: return std::log(n);
    case DensityKind::Const: return static_cast<long double>(num_) / den_;
  }
  return 0;
}

long double Density::eval_log(long double u) const {
  switch (kind_) {
    case DensityKind::LnLn: return std::log(u);
    case DensityKind::LnLnLn: return std::log(std::log(u));
    case DensityKind::Ln: return u;
    case DensityKind::Const: return static_cast<long double>(num_) / den_;
  }
  return 0;
}

Interval Density::eval(const Interval& n) const {
  switch (kind_) {
    case DensityKind::LnLn: return log(log(n));
    case DensityKind::LnLnLn: return log(log(log(n)));
    case DensityKind::Ln: return log(n);
    case DensityKind::Const: return Interval(static_cast<long>(num_)) / Interval(static_cast<long>(den_));
  }
  return Interval();
}

Index Density::breakpoint(Index n) const {
  require(n >= n_min_, "breakpoint argument below the density's domain");
  if (kind_ == DensityKind::Const) {
    unsigned __int128 v = static_cast<unsigned __int128>(n) * static_cast<unsigned __int128>(num_);
    v /= static_cast<unsigned __int128>(den_);
    if (v > kUnreachable) fail(ErrorCode::InvalidArgument, "breakpoint exceeds 64-bit index range");
    return static_cast<Index>(v);
  }
  long double nn = static_cast<long double>(n);
  long double v = nn * eval(nn);
  long double err = 64 * LDBL_EPSILON * (std::fabs(v) + nn) + LDBL_MIN;
  Index out = 0;
  if (certified_floor(v, err, out)) return out;
  for (mpfr_prec_t bits : {160, 512, 2048}) {
    PrecisionScope scope(bits);
    Interval in{BigNat(n)};
    Interval val = in * eval(in);
    if (val.floor_lower() == val.floor_upper()) return floor_from_interval(val, "n*g(n)");
  }
  fail(ErrorCode::PrecisionUndecidable,
       "floor(n*g(n)) not certifiable at n=" + std::to_string(n));
}

void Density::build_thresholds() {
  PrecisionScope scope(320);
  for (long c = 1;; ++c) {
    Interval t(c);
    switch (kind_) {
      case DensityKind::LnLn: t = exp(exp(t)); break;
      case DensityKind::LnLnLn: t = exp(exp(exp(t))); break;
      case DensityKind::Ln: t = exp(t); break;
      case DensityKind::Const: return;
    }
    if (t.lower() > 1.8e19L) break;
    BigNat fl = t.floor_lower();
    if (fl != t.floor_upper() || Interval(fl).certainly_lt(t) == false) {
      fail(ErrorCode::PrecisionUndecidable, "plateau threshold not certifiable");
    }
    thresholds_.push_back(to_u64(fl) + 1);
  }
}

std::uint64_t Density::floor_at(Index k) const {
  if (kind_ == DensityKind::Const) return static_cast<std::uint64_t>(num_ / den_);
  std::uint64_t c = 0;
  while (c < thresholds_.size() && thresholds_[c] <= k) ++c;
  return c;
}

Index Density::next_plateau(Index k) const {
  if (kind_ == DensityKind::Const) return kUnreachable;
  for (Index t : thresholds_) {
    if (t > k) return t;
  }
  return kUnreachable;
}

BigNat Density::floor_sum(Index a, Index b) const {
  BigNat sum = 0;
  if (b <= a) return sum;
  if (kind_ == DensityKind::Const) {
    sum = BigNat(b - a) * static_cast<std::uint64_t>(num_ / den_);
    return sum;
  }
  Index t = a;
  while (t < b) {
    Index e = std::min(next_plateau(t), b);
    sum += BigNat(floor_at(t)) * (e - t);
    t = e;
  }
  return sum;
}

CycleMap::CycleMap(Density g) : g_(std::move(g)), k_start_(g_.default_k_start()) {}

CycleMap::CycleMap(Density g, Index k_start) : g_(std::move(g)), k_start_(k_start) {
  require(k_start_ >= g_.breakpoint(g_.n_min()), "k_start below the first breakpoint");
  require(g_.breakpoint(cycle_of(k_start_)) == k_start_, "k_start must be a cycle start (j = 1)");
}

Index CycleMap::breakpoint(Index n) const { return g_.breakpoint(n); }

Index CycleMap::cycle_of(Index k) const {
  Index n0 = g_.n_min();
  require(k >= g_.breakpoint(n0), "index below the scheduler's domain");
  long double kk = static_cast<long double>(k);
  long double est = kk / std::max<long double>(1.0L, g_.eval(std::max<long double>(kk, n0)));
  // Newton on n g(n) = k; g is slowly varying so a few steps suffice.
  for (int it = 0; it < 6; ++it) {
    long double e = std::max<long double>(est, n0);
    long double h = e * 1e-6L + 1;
    long double f = e * g_.eval(e) - kk;
    long double df = ((e + h) * g_.eval(e + h) - e * g_.eval(e)) / h;
    if (!(df > 0)) break;
    est = e - f / df;
  }
  Index n = est <= n0 ? n0 : (est >= 1.8e19L ? k : static_cast<Index>(est));
  if (n < n0) n = n0;
  while (n > n0 && g_.breakpoint(n) > k) --n;
  while (g_.breakpoint(n + 1) <= k) ++n;
  return n;
}

Index CycleMap::j(Index k) const {
  require(k >= k_start_, "j(k) requires k >= k_start");
  return k + 1 - g_.breakpoint(cycle_of(k));
}

Index CycleMap::next_cycle_start(Index k) const {
  require(k >= k_start_, "next_cycle_start requires k >= k_start");
  return g_.breakpoint(cycle_of(k) + 1);
}

bool check_j_bound(const CycleMap& cm, Index k_lo, Index k_hi) {
  require(cm.density().kind() == DensityKind::LnLn, "the j bound is stated for the lnln density");
  require(k_lo >= 20 && k_lo <= k_hi, "check_j_bound needs 20 <= k_lo <= k_hi");
  const Density& g = cm.density();
  Index n = cm.cycle_of(k_lo);
  Index start = g.breakpoint(n);
  Index next = g.breakpoint(n + 1);
  for (Index k = k_lo; k <= k_hi; ++k) {
    while (k >= next) {
      ++n;
      start = next;
      next = g.breakpoint(n + 1);
    }
    Index jk = k + 1 - start;
    if (jk >= g.floor_at(k) + 3) return false;
  }
  return true;
}

CycleStartCursor::CycleStartCursor(const CycleMap& cm, Index after) : cm_(&cm) {
  const Density& g = cm.density();
  if (after < g.breakpoint(g.n_min())) {
    n_ = g.n_min();
  } else {
    n_ = cm.cycle_of(after) + 1;
  }
  current_ = g.breakpoint(n_);
}

void CycleStartCursor::advance() {
  ++n_;
  current_ = cm_->breakpoint(n_);
}

}  // namespace hypershift
