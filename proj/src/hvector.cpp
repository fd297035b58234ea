#include "hvector.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace hypershift {

namespace {

constexpr long double kMaxLogLD = 11300.0L;

mpfr_prec_t orbit_bits(const Schedule& s, const BigNat& M) {
  return std::max<mpfr_prec_t>(256, s.frac_bits() + bit_length(M) + 96);
}

ComplexLD unit_turns(long double t) {
  const long double two_pi = 6.283185307179586476925286766559L;
  return {std::cos(two_pi * t), std::sin(two_pi * t)};
}

long double frac_mid(const Interval& x) {
  Interval f = x - Interval(x.floor_lower());
  return f.mid();
}

}  // namespace

LogMagnitude LogMagnitude::real(Interval log_mag) {
  return LogMagnitude{std::move(log_mag), Interval::rational(0, 1)};
}

LogMagnitude LogMagnitude::operator*(const LogMagnitude& o) const {
  return LogMagnitude{log_mag + o.log_mag, phase + o.phase};
}

LogMagnitude LogMagnitude::add_magnitudes(const LogMagnitude& o) const {
  return LogMagnitude::real(log_sum_exp(log_mag, o.log_mag));
}

Interval parse_real(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    return Interval::parse(text.substr(0, slash)) / Interval::parse(text.substr(slash + 1));
  }
  return Interval::parse(text);
}

Multiplier Multiplier::cartesian(std::string re, std::string im) {
  Multiplier m;
  m.a_ = std::move(re);
  m.b_ = std::move(im);
  parse_real(m.a_);
  parse_real(m.b_);
  return m;
}

Multiplier Multiplier::polar(std::string modulus, std::string turns) {
  Multiplier m;
  m.polar_ = true;
  m.a_ = std::move(modulus);
  m.b_ = std::move(turns);
  require(parse_real(m.a_).lower() > 0, "modulus must be positive");
  parse_real(m.b_);
  return m;
}

Multiplier Multiplier::parse(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) return cartesian(text, "0");
  return cartesian(text.substr(0, comma), text.substr(comma + 1));
}

Interval Multiplier::log_abs() const {
  if (polar_) return log(parse_real(a_));
  Interval re = parse_real(a_);
  Interval im = parse_real(b_);
  return log(square(re) + square(im)) * Interval::rational(1, 2);
}

Interval Multiplier::turns() const {
  if (polar_) return parse_real(b_);
  Interval re = parse_real(a_);
  Interval im = parse_real(b_);
  if (im.lower() == 0 && im.upper() == 0 && re.lower() > 0) return Interval::rational(0, 1);
  return turns_of(re, im);
}

bool Multiplier::is_positive_real() const {
  Interval t = parse_real(b_);
  bool zero_im = t.lower() == 0 && t.upper() == 0;
  return zero_im && parse_real(a_).lower() > 0;
}

ComplexLD Multiplier::approx() const {
  if (polar_) return parse_real(a_).mid() * unit_turns(parse_real(b_).mid());
  return {parse_real(a_).mid(), parse_real(b_).mid()};
}

std::string Multiplier::describe() const {
  return polar_ ? a_ + "@" + b_ : a_ + "," + b_;
}

Interval log_norm_of(const std::vector<DyadicComplex>& v) {
  int s0 = 0;
  bool any = false;
  for (const auto& c : v) {
    for (const Dyadic* d : {&c.re, &c.im}) {
      if (d->num == 0) continue;
      s0 = any ? std::min(s0, d->shift) : d->shift;
      any = true;
    }
  }
  if (!any) return Interval::minus_infinity();
  BigNat sum = 0;
  for (const auto& c : v) {
    for (const Dyadic* d : {&c.re, &c.im}) {
      if (d->num == 0) continue;
      BigNat t = d->num;
      t <<= (d->shift - s0);
      sum += t * t;
    }
  }
  return log(Interval::dyadic(sum, 2L * s0)) * Interval::rational(1, 2);
}

LogMagnitude HyperVector::log_d(Index k) {
  ScheduleEntry e = s_.entry(k);
  ScheduleEntry e1 = s_.entry(k + 1);
  Interval gap = e1.log_r - e.log_r;
  if (!(gap.upper() < 0)) {
    fail(ErrorCode::DegenerateGap, "log r does not decrease at k=" + std::to_string(k));
  }
  Interval two_gap = gap * Interval(2L);
  Interval half_log = log(-expm1(two_gap)) * Interval::rational(1, 2);
  return LogMagnitude::real(e.log_r + half_log);
}

Block HyperVector::block(Index k) {
  ScheduleEntry e = s_.entry(k);
  ScheduleEntry e1 = s_.entry(k + 1);
  Block b;
  b.k = k;
  b.j = e.j;
  b.start = e.M;
  b.width = e1.M - e.M;
  TargetVector t = enumerate(e.j);
  std::size_t keep = t.coords.size();
  if (fits_u64(b.width) && to_u64(b.width) < keep) {
    keep = static_cast<std::size_t>(to_u64(b.width));
    b.truncated = true;
  }
  b.pattern.assign(t.coords.begin(), t.coords.begin() + static_cast<std::ptrdiff_t>(keep));
  bool all_zero = std::all_of(b.pattern.begin(), b.pattern.end(),
                              [](const DyadicComplex& c) { return c.is_zero(); });
  if (all_zero) {
    b.pattern.assign(1, DyadicComplex{Dyadic{1, 0}, Dyadic{0, 0}});
    b.fallback = true;
  }
  b.log_amp = log_d(k).log_mag - log_norm_of(b.pattern);
  b.phase = e.has_theta ? e.theta() : Interval::rational(0, 1);
  return b;
}

LogMagnitude HyperVector::tail_log_norm(Index k) {
  return LogMagnitude::real(s_.entry(k).log_r);
}

Interval HyperVector::scaled_orbit_log_distance(const Multiplier& z, Index k, Index l) {
  return scaled_orbit_log_distance(z, s_.entry(k), s_.entry(k + 1), l);
}

Interval HyperVector::scaled_orbit_log_distance(const Multiplier& z, const ScheduleEntry& e,
                                                const ScheduleEntry& e1, Index l) {
  const Index k = e.k;
  PrecisionScope scope(orbit_bits(s_, e1.M));
  Interval s = z.log_abs();
  require(s.lower() > 0, "|z| must exceed 1");
  if (!s_.config().complex) require(z.is_positive_real(), "a real schedule needs z real and positive");
  if (e.j != l) {
    fail(ErrorCode::PatternMismatch,
         "j(" + std::to_string(k) + ") = " + std::to_string(e.j) + ", not " + std::to_string(l));
  }
  TargetVector t = enumerate(l);
  BigNat width = e1.M - e.M;
  if (width < BigNat(t.support())) {
    fail(ErrorCode::PatternMismatch, "block " + std::to_string(k) + " truncates v_" +
                                         std::to_string(l));
  }
  Interval M(e.M);
  Interval v = M * (s - e.y());
  Interval gap = e1.log_r - e.log_r;
  require(gap.upper() < 0, "log r must decrease");
  Interval two(2L);
  Interval u = v + log(-expm1(gap * two)) * Interval::rational(1, 2);
  Interval theta = e.has_theta ? e.theta() : Interval::rational(0, 1);
  Interval phi = distance_to_integer(M * z.turns() + theta);
  Interval sn = sin_first_quadrant(Interval::pi() * phi);
  Interval four_sin2 = Interval(4L) * square(sn);
  Interval inner = u.mid() > 1 ? two * u + log(square(expm1(-u)) + four_sin2 * exp(-u))
                               : log(square(expm1(u)) + four_sin2 * exp(u));
  Interval mismatch = two * e.alpha + inner;
  Interval tail = two * (v + e.alpha + gap);
  return log_sum_exp(mismatch, tail) * Interval::rational(1, 2);
}

std::vector<ComplexLD> HyperVector::materialize(std::size_t prefix_blocks, std::size_t out_len) {
  std::vector<ComplexLD> out(out_len);
  Index k = s_.k_start();
  for (std::size_t i = 0; i < prefix_blocks; ++i, ++k) {
    Block b = block(k);
    if (!fits_u64(b.start) || to_u64(b.start) >= out_len) break;
    long double la = b.log_amp.mid();
    if (std::fabs(la) > kMaxLogLD) {
      fail(ErrorCode::FloatRangeExceeded, "block " + std::to_string(k) + " amplitude e^" +
                                              std::to_string(static_cast<double>(la)));
    }
    ComplexLD c = std::exp(la) * unit_turns(frac_mid(b.phase));
    std::size_t off = static_cast<std::size_t>(to_u64(b.start));
    for (std::size_t p = 0; p < b.pattern.size() && off + p < out_len; ++p) {
      out[off + p] += c * b.pattern[p].value();
    }
  }
  return out;
}

std::vector<ComplexLD> HyperVector::orbit_window(const Multiplier& z, Index k, std::size_t blocks,
                                                 std::size_t len) {
  std::vector<ComplexLD> out(len);
  BigNat Mk = s_.entry(k).M;
  PrecisionScope scope(orbit_bits(s_, Mk));
  Interval M(Mk);
  Interval scale = M * z.log_abs();
  Interval rot = M * z.turns();
  for (std::size_t i = 0; i < blocks; ++i) {
    Block b = block(k + i);
    BigNat off = b.start - Mk;
    if (!fits_u64(off) || to_u64(off) >= len) break;
    long double la = (scale + b.log_amp).mid();
    if (std::fabs(la) > kMaxLogLD) {
      fail(ErrorCode::FloatRangeExceeded, "block " + std::to_string(k + i) +
                                              " leaves the long double range");
    }
    ComplexLD c = std::exp(la) * unit_turns(frac_mid(rot + b.phase));
    std::size_t o = static_cast<std::size_t>(to_u64(off));
    for (std::size_t p = 0; p < b.pattern.size() && o + p < len; ++p) {
      out[o + p] += c * b.pattern[p].value();
    }
  }
  return out;
}

std::string HyperVector::block_csv_row(const Block& b) {
  char buf[96];
  std::snprintf(buf, sizeof buf, ",%.21Lg,%.21Lg", b.log_amp.mid(), b.phase.mid());
  return std::to_string(b.k) + "," + b.start.str() + "," + b.width.str() + "," +
         std::to_string(b.j) + buf;
}

}  // namespace hypershift
