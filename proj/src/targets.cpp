#include "targets.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>

namespace hypershift {

namespace {

struct Level {
  int m;
  std::int64_t center;  // m 2^m
  BigNat base;          // 2 m 2^m + 1
  int ramp;             // R_m
  BigNat period;        // 2 R_m + 1
  BigNat raw_count;     // sum_{L<=m} (base^{2L} - 1)
  BigNat size;          // raw_count * period

  explicit Level(int m_) : m(m_) {
    require(m >= 1 && m <= 55, "target level out of range");
    center = static_cast<std::int64_t>(m) << m;
    base = BigNat(2 * center + 1);
    ramp = m + 3;
    period = BigNat(2 * ramp + 1);
    raw_count = 0;
    for (int L = 1; L <= m; ++L) raw_count += count_for_length(L);
    size = raw_count * period;
  }

  BigNat count_for_length(int L) const {
    BigNat p = 1;
    for (int i = 0; i < 2 * L; ++i) p *= base;
    return p - 1;
  }

  // Mixed-radix rank of the all-zero vector of length L.
  BigNat zero_rank(int L) const {
    BigNat z = 0;
    BigNat p = 1;
    for (int i = 0; i < 2 * L; ++i) {
      z += p * center;
      p *= base;
    }
    return z;
  }
};

BigNat norm2_dyadic_scaled(const std::vector<DyadicComplex>& coords, int& scale_out) {
  // Returns sum |c|^2 * 2^{-scale} as an exact integer with scale_out.
  int min_shift = 0;
  for (const auto& c : coords) min_shift = std::min({min_shift, c.re.shift, c.im.shift});
  BigNat sum = 0;
  for (const auto& c : coords) {
    for (const Dyadic& d : {c.re, c.im}) {
      BigNat v = d.num;
      v <<= (d.shift - min_shift);
      sum += v * v;
    }
  }
  scale_out = -2 * min_shift;
  return sum;
}

Interval norm2_interval(const std::vector<DyadicComplex>& coords) {
  int scale = 0;
  BigNat n2 = norm2_dyadic_scaled(coords, scale);
  return Interval::dyadic(n2, -scale);
}

void finish(TargetVector& t) {
  PrecisionScope scope(160);
  Interval ln = t.log_norm_interval();
  t.log_norm = ln.mid();
  t.cone_radius = t.cone_radius_interval().mid();
}

DyadicComplex power_of_two(int s) { return DyadicComplex{Dyadic{1, s}, Dyadic{0, 0}}; }

TargetVector decode_raw(const Level& lv, BigNat r) {
  int L = 1;
  for (;; ++L) {
    BigNat c = lv.count_for_length(L);
    if (r < c) break;
    r -= c;
  }
  if (r >= lv.zero_rank(L)) r += 1;
  TargetVector t;
  t.coords.resize(static_cast<std::size_t>(L));
  for (int i = 0; i < 2 * L; ++i) {
    BigNat digit = r % lv.base;
    r /= lv.base;
    std::int64_t a = static_cast<std::int64_t>(to_u64(digit)) - lv.center;
    Dyadic d{a, -lv.m};
    if (i % 2 == 0) {
      t.coords[static_cast<std::size_t>(i / 2)].re = d;
    } else {
      t.coords[static_cast<std::size_t>(i / 2)].im = d;
    }
  }
  return t;
}

// round(log2 |v|) for the ramp exponent.
int ramp_exponent(const std::vector<DyadicComplex>& coords) {
  PrecisionScope scope(128);
  Interval l2 = log(norm2_interval(coords)) / (Interval(2) * log(Interval(2)));
  return static_cast<int>(std::lround(static_cast<double>(l2.mid())));
}

}  // namespace

long double Dyadic::value() const { return std::ldexp(static_cast<long double>(num), shift); }

bool Dyadic::operator==(const Dyadic& o) const {
  int lo = std::min(shift, o.shift);
  BigNat a = num;
  BigNat b = o.num;
  a <<= (shift - lo);
  b <<= (o.shift - lo);
  return a == b;
}

std::string Dyadic::decimal() const {
  if (num == 0) return "0";
  bool neg = num < 0;
  BigNat mag = neg ? BigNat(-num) : BigNat(num);
  std::string s;
  if (shift >= 0) {
    mag <<= shift;
    s = mag.str();
  } else {
    BigNat five = 1;
    for (int i = 0; i < -shift; ++i) five *= 5;
    s = BigNat(mag * five).str();
    std::size_t frac = static_cast<std::size_t>(-shift);
    while (s.size() <= frac) s.insert(0, "0");
    s.insert(s.size() - frac, ".");
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return neg ? "-" + s : s;
}

std::vector<ComplexLD> TargetVector::values() const {
  std::vector<ComplexLD> out;
  out.reserve(coords.size());
  for (const auto& c : coords) out.push_back(c.value());
  return out;
}

std::size_t TargetVector::support() const {
  std::size_t s = coords.size();
  while (s > 0 && coords[s - 1].is_zero()) --s;
  return s;
}

Interval TargetVector::log_norm_interval() const {
  return log(norm2_interval(coords)) / Interval(2);
}

Interval TargetVector::norm_interval() const { return sqrt(norm2_interval(coords)); }

Interval TargetVector::cone_radius_interval() const {
  Interval half = norm_interval() / Interval(2);
  Interval inv = Interval(1) / Interval(l);
  // min of the two, as an enclosure.
  if (half.certainly_lt(inv)) return half;
  if (inv.certainly_lt(half)) return inv;
  return Interval::hull(half, inv);
}

TargetVector enumerate(const BigNat& l) {
  require(l >= 1, "target index must be >= 1");
  TargetVector t;
  if (l == 1) {
    t.coords = {power_of_two(0)};
  } else if (l == 2) {
    t.coords = {DyadicComplex{Dyadic{0, 0}, Dyadic{1, 0}}};
  } else {
    BigNat rest = l - 3;
    for (int m = 1;; ++m) {
      Level lv(m);
      if (rest >= lv.size) {
        rest -= lv.size;
        continue;
      }
      BigNat raw = rest / lv.period;
      int pos = static_cast<int>(to_u64(rest % lv.period));
      TargetVector v = decode_raw(lv, raw);
      if (pos == lv.ramp) {
        t.coords = std::move(v.coords);
      } else {
        int s_star = ramp_exponent(v.coords);
        int sign = s_star < 0 ? -1 : 1;
        int mag = std::abs(s_star);
        int s = pos < lv.ramp ? std::min(pos + 1, mag)                      // approach
                              : std::max(mag - (pos - lv.ramp - 1), 0);     // return
        t.coords = {power_of_two(sign * s)};
      }
      break;
    }
  }
  t.l = l;
  finish(t);
  return t;
}

long double cone_distance(const std::vector<ComplexLD>& v, const TargetVector& t) {
  std::vector<ComplexLD> target = t.values();
  long double vv = 0;
  long double ip = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    vv += std::norm(v[i]);
    if (i < target.size()) ip += (std::conj(target[i]) * v[i]).real();
  }
  if (vv == 0) fail(ErrorCode::ZeroVector, "cone_distance of the zero vector");
  long double tt = 0;
  for (const auto& c : target) tt += std::norm(c);
  if (ip <= 0) return std::sqrt(tt);
  long double mu = ip / vv;
  long double d2 = 0;
  std::size_t n = std::max(v.size(), target.size());
  for (std::size_t i = 0; i < n; ++i) {
    ComplexLD a = i < v.size() ? mu * v[i] : ComplexLD{};
    ComplexLD b = i < target.size() ? target[i] : ComplexLD{};
    d2 += std::norm(a - b);
  }
  return std::sqrt(d2);
}

namespace {

long double distance(const TargetVector& t, const std::vector<std::complex<double>>& target) {
  std::vector<ComplexLD> v = t.values();
  std::size_t n = std::max(v.size(), target.size());
  long double d2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ComplexLD a = i < v.size() ? v[i] : ComplexLD{};
    ComplexLD b = i < target.size() ? ComplexLD(target[i].real(), target[i].imag()) : ComplexLD{};
    d2 += std::norm(a - b);
  }
  return std::sqrt(d2);
}

BigNat rank_on_level(const Level& lv, const std::vector<std::int64_t>& nums) {
  int L = static_cast<int>(nums.size() / 2);
  BigNat r = 0;
  BigNat p = 1;
  for (int i = 0; i < 2 * L; ++i) {
    r += p * BigNat(nums[static_cast<std::size_t>(i)] + lv.center);
    p *= lv.base;
  }
  if (r > lv.zero_rank(L)) r -= 1;
  for (int L2 = 1; L2 < L; ++L2) r += lv.count_for_length(L2);
  return r;
}

}  // namespace

constexpr std::uint64_t kPrefixCache = 20000;

BigNat density_witness(const std::vector<std::complex<double>>& target, double delta,
                       const DensityWitnessOptions& opts) {
  require(delta > 0, "delta must be positive");
  require(!target.empty(), "target must be a nonempty finite vector");
  // The margin keeps long double rounding from deciding a borderline case.
  const long double strict = static_cast<long double>(delta) * (1 - 1e-12L);
  static const std::vector<TargetVector> prefix = [] {
    std::vector<TargetVector> v;
    for (std::uint64_t l = 1; l <= kPrefixCache; ++l) v.push_back(enumerate(l));
    return v;
  }();
  for (std::uint64_t l = 1; l <= opts.scan_limit; ++l) {
    if (l <= prefix.size()) {
      if (distance(prefix[l - 1], target) < strict) return BigNat(l);
    } else if (distance(enumerate(l), target) < strict) {
      return BigNat(l);
    }
  }
  std::size_t len = target.size();
  while (len > 1 && target[len - 1] == std::complex<double>{}) --len;
  double max_abs = 0;
  for (std::size_t i = 0; i < len; ++i) {
    max_abs = std::max({max_abs, std::fabs(target[i].real()), std::fabs(target[i].imag())});
  }
  BigNat offset = 0;
  for (int m = 1; m <= opts.max_level; ++m) {
    Level lv(m);
    if (static_cast<std::size_t>(m) >= len && max_abs <= static_cast<double>(m)) {
      std::vector<std::int64_t> nums(2 * len);
      bool all_zero = true;
      for (std::size_t i = 0; i < len; ++i) {
        nums[2 * i] = std::llround(std::ldexp(target[i].real(), m));
        nums[2 * i + 1] = std::llround(std::ldexp(target[i].imag(), m));
        all_zero = all_zero && nums[2 * i] == 0 && nums[2 * i + 1] == 0;
      }
      if (all_zero) nums[0] = 1;
      BigNat raw = rank_on_level(lv, nums);
      BigNat l = offset + raw * lv.period + lv.ramp + 3;
      TargetVector t = enumerate(l);
      if (distance(t, target) < strict) return l;
    }
    offset += lv.size;
  }
  fail(ErrorCode::SearchBudgetExceeded, "no target within delta up to the configured level");
}

std::string target_csv_row(const TargetVector& t) {
  std::string coords;
  for (std::size_t i = 0; i < t.coords.size(); ++i) {
    if (i) coords += ";";
    std::string im = t.coords[i].im.decimal();
    coords += t.coords[i].re.decimal() + (im[0] == '-' ? im : "+" + im) + "i";
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, ",%.21Lg,%.21Lg", t.log_norm, t.cone_radius);
  return t.l.str() + "," + coords + buf;
}

}  // namespace hypershift
