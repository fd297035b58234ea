#include "interval.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace hypershift {

namespace {

thread_local mpfr_prec_t g_bits = 256;

void min4(mpfr_ptr out, mpfr_srcptr a, mpfr_srcptr b, mpfr_srcptr c, mpfr_srcptr d) {
  mpfr_min(out, a, b, MPFR_RNDD);
  mpfr_min(out, out, c, MPFR_RNDD);
  mpfr_min(out, out, d, MPFR_RNDD);
}

void max4(mpfr_ptr out, mpfr_srcptr a, mpfr_srcptr b, mpfr_srcptr c, mpfr_srcptr d) {
  mpfr_max(out, a, b, MPFR_RNDU);
  mpfr_max(out, out, c, MPFR_RNDU);
  mpfr_max(out, out, d, MPFR_RNDU);
}

}  // namespace

mpfr_prec_t Interval::working_bits() { return g_bits; }
void Interval::set_working_bits(mpfr_prec_t bits) {
  g_bits = std::max<mpfr_prec_t>(bits, 64);
}

Interval::Interval(Uninit, mpfr_prec_t bits) {
  mpfr_init2(lo_, bits);
  mpfr_init2(hi_, bits);
}

Interval::Interval() : Interval(Uninit{}, g_bits) {
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(long v) : Interval(Uninit{}, g_bits) {
  mpfr_set_si(lo_, v, MPFR_RNDD);
  mpfr_set_si(hi_, v, MPFR_RNDU);
}

Interval::Interval(const BigNat& v) : Interval(Uninit{}, g_bits) {
  mpfr_set_z(lo_, v.backend().data(), MPFR_RNDD);
  mpfr_set_z(hi_, v.backend().data(), MPFR_RNDU);
}

Interval::Interval(const Interval& other)
    : Interval(Uninit{}, std::max(mpfr_get_prec(other.lo_), g_bits)) {
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(Uninit{}, mpfr_get_prec(other.lo_)) {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    mpfr_prec_t bits = std::max(mpfr_get_prec(other.lo_), g_bits);
    mpfr_set_prec(lo_, bits);
    mpfr_set_prec(hi_, bits);
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::exact_double(double v) {
  Interval r(Uninit{}, g_bits);
  mpfr_set_d(r.lo_, v, MPFR_RNDD);
  mpfr_set_d(r.hi_, v, MPFR_RNDU);
  return r;
}

Interval Interval::parse(const std::string& text) {
  if (text == "e") return exp(Interval(1));
  if (text == "pi") return pi();
  Interval r(Uninit{}, g_bits);
  if (mpfr_set_str(r.lo_, text.c_str(), 10, MPFR_RNDD) != 0 ||
      mpfr_set_str(r.hi_, text.c_str(), 10, MPFR_RNDU) != 0) {
    fail(ErrorCode::InvalidArgument, "not a real number: '" + text + "'");
  }
  return r;
}

Interval Interval::dyadic(const BigNat& num, long shift) {
  Interval r(num);
  if (shift >= 0) {
    mpfr_mul_2si(r.lo_, r.lo_, shift, MPFR_RNDD);
    mpfr_mul_2si(r.hi_, r.hi_, shift, MPFR_RNDU);
  } else {
    mpfr_div_2si(r.lo_, r.lo_, -shift, MPFR_RNDD);
    mpfr_div_2si(r.hi_, r.hi_, -shift, MPFR_RNDU);
  }
  return r;
}

Interval Interval::rational(long num, long den) {
  require(den != 0, "zero denominator");
  return Interval(num) / Interval(den);
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval r(Uninit{}, g_bits);
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::pi() {
  Interval r(Uninit{}, g_bits);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::minus_infinity() {
  Interval r(Uninit{}, g_bits);
  mpfr_set_inf(r.lo_, -1);
  mpfr_set_inf(r.hi_, -1);
  return r;
}

Interval Interval::operator-() const {
  Interval r(Uninit{}, g_bits);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(Interval::Uninit{}, g_bits);
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(Interval::Uninit{}, g_bits);
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  Interval r(Interval::Uninit{}, g_bits);
  mpfr_t p[4], q[4];
  for (int i = 0; i < 4; ++i) {
    mpfr_init2(p[i], g_bits);
    mpfr_init2(q[i], g_bits);
  }
  mpfr_mul(p[0], a.lo_, b.lo_, MPFR_RNDD);
  mpfr_mul(p[1], a.lo_, b.hi_, MPFR_RNDD);
  mpfr_mul(p[2], a.hi_, b.lo_, MPFR_RNDD);
  mpfr_mul(p[3], a.hi_, b.hi_, MPFR_RNDD);
  mpfr_mul(q[0], a.lo_, b.lo_, MPFR_RNDU);
  mpfr_mul(q[1], a.lo_, b.hi_, MPFR_RNDU);
  mpfr_mul(q[2], a.hi_, b.lo_, MPFR_RNDU);
  mpfr_mul(q[3], a.hi_, b.hi_, MPFR_RNDU);
  // 0 * inf yields NaN; treat as 0 (only arises for exact zero factors).
  for (int i = 0; i < 4; ++i) {
    if (mpfr_nan_p(p[i])) mpfr_set_zero(p[i], 1);
    if (mpfr_nan_p(q[i])) mpfr_set_zero(q[i], 1);
  }
  min4(r.lo_, p[0], p[1], p[2], p[3]);
  max4(r.hi_, q[0], q[1], q[2], q[3]);
  for (int i = 0; i < 4; ++i) {
    mpfr_clear(p[i]);
    mpfr_clear(q[i]);
  }
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) fail(ErrorCode::Internal, "interval division by a range containing 0");
  Interval r(Interval::Uninit{}, g_bits);
  mpfr_t p[4], q[4];
  for (int i = 0; i < 4; ++i) {
    mpfr_init2(p[i], g_bits);
    mpfr_init2(q[i], g_bits);
  }
  mpfr_div(p[0], a.lo_, b.lo_, MPFR_RNDD);
  mpfr_div(p[1], a.lo_, b.hi_, MPFR_RNDD);
  mpfr_div(p[2], a.hi_, b.lo_, MPFR_RNDD);
  mpfr_div(p[3], a.hi_, b.hi_, MPFR_RNDD);
  mpfr_div(q[0], a.lo_, b.lo_, MPFR_RNDU);
  mpfr_div(q[1], a.lo_, b.hi_, MPFR_RNDU);
  mpfr_div(q[2], a.hi_, b.lo_, MPFR_RNDU);
  mpfr_div(q[3], a.hi_, b.hi_, MPFR_RNDU);
  min4(r.lo_, p[0], p[1], p[2], p[3]);
  max4(r.hi_, q[0], q[1], q[2], q[3]);
  for (int i = 0; i < 4; ++i) {
    mpfr_clear(p[i]);
    mpfr_clear(q[i]);
  }
  return r;
}

Interval exp(const Interval& a) {
  Interval r(Interval::Uninit{}, g_bits);
  mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval expm1(const Interval& a) {
  Interval r(Interval::Uninit{}, g_bits);
  mpfr_expm1(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_expm1(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval log(const Interval& a) {
  if (mpfr_sgn(a.hi_) < 0) fail(ErrorCode::Internal, "log of a negative interval");
  Interval r(Interval::Uninit{}, g_bits);
  if (mpfr_sgn(a.lo_) <= 0) {
    mpfr_set_inf(r.lo_, -1);
  } else {
    mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
  }
  mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval log1p(const Interval& a) {
  Interval r(Interval::Uninit{}, g_bits);
  if (mpfr_cmp_si(a.lo_, -1) <= 0) {
    mpfr_set_inf(r.lo_, -1);
  } else {
    mpfr_log1p(r.lo_, a.lo_, MPFR_RNDD);
  }
  if (mpfr_cmp_si(a.hi_, -1) <= 0) {
    mpfr_set_inf(r.hi_, -1);
  } else {
    mpfr_log1p(r.hi_, a.hi_, MPFR_RNDU);
  }
  return r;
}

Interval sqrt(const Interval& a) {
  Interval r(Interval::Uninit{}, g_bits);
  if (mpfr_sgn(a.lo_) <= 0) {
    mpfr_set_zero(r.lo_, 1);
  } else {
    mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
  }
  if (mpfr_sgn(a.hi_) <= 0) {
    mpfr_set_zero(r.hi_, 1);
  } else {
    mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
  }
  return r;
}

Interval abs(const Interval& a) {
  if (mpfr_sgn(a.lo_) >= 0) return a;
  if (mpfr_sgn(a.hi_) <= 0) return -a;
  Interval r(Interval::Uninit{}, g_bits);
  mpfr_set_zero(r.lo_, 1);
  mpfr_t t;
  mpfr_init2(t, g_bits);
  mpfr_neg(t, a.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, t, a.hi_, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

Interval square(const Interval& a) {
  Interval m = abs(a);
  Interval r(Interval::Uninit{}, g_bits);
  mpfr_sqr(r.lo_, m.lo_, MPFR_RNDD);
  mpfr_sqr(r.hi_, m.hi_, MPFR_RNDU);
  return r;
}

Interval sin_first_quadrant(const Interval& a) {
  Interval r(Interval::Uninit{}, g_bits);
  if (mpfr_sgn(a.lo_) <= 0) {
    mpfr_set_zero(r.lo_, 1);
  } else {
    mpfr_sin(r.lo_, a.lo_, MPFR_RNDD);
  }
  mpfr_sin(r.hi_, a.hi_, MPFR_RNDU);
  if (mpfr_cmp_ui(r.hi_, 1) > 0) mpfr_set_ui(r.hi_, 1, MPFR_RNDU);
  if (mpfr_sgn(r.lo_) < 0) mpfr_set_zero(r.lo_, 1);
  return r;
}

Interval Interval::widened(double rel) const {
  Interval r(*this);
  mpfr_t t;
  mpfr_init2(t, g_bits);
  mpfr_abs(t, lo_, MPFR_RNDU);
  mpfr_mul_d(t, t, rel, MPFR_RNDU);
  mpfr_sub(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_abs(t, hi_, MPFR_RNDU);
  mpfr_mul_d(t, t, rel, MPFR_RNDU);
  mpfr_add(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

long double Interval::lower() const { return mpfr_get_ld(lo_, MPFR_RNDD); }
long double Interval::upper() const { return mpfr_get_ld(hi_, MPFR_RNDU); }

long double Interval::mid() const {
  if (mpfr_inf_p(lo_) || mpfr_inf_p(hi_)) return mpfr_get_ld(mpfr_inf_p(lo_) ? hi_ : lo_, MPFR_RNDN);
  mpfr_t t;
  mpfr_init2(t, mpfr_get_prec(lo_) + 1);
  mpfr_add(t, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(t, t, 1, MPFR_RNDN);
  long double v = mpfr_get_ld(t, MPFR_RNDN);
  mpfr_clear(t);
  return v;
}

double Interval::width() const {
  mpfr_t t;
  mpfr_init2(t, 64);
  mpfr_sub(t, hi_, lo_, MPFR_RNDU);
  double v = mpfr_get_d(t, MPFR_RNDU);
  mpfr_clear(t);
  return v;
}

bool Interval::is_minus_infinity() const {
  return mpfr_inf_p(hi_) && mpfr_sgn(hi_) < 0;
}

bool Interval::certainly_lt(const Interval& b) const { return mpfr_less_p(hi_, b.lo_); }
bool Interval::certainly_gt(const Interval& b) const { return mpfr_greater_p(lo_, b.hi_); }

bool Interval::contains(long double v) const {
  return mpfr_cmp_ld(lo_, v) <= 0 && mpfr_cmp_ld(hi_, v) >= 0;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

BigNat Interval::floor_lower() const {
  BigNat r;
  mpfr_get_z(r.backend().data(), lo_, MPFR_RNDD);
  return r;
}

BigNat Interval::floor_upper() const {
  BigNat r;
  mpfr_get_z(r.backend().data(), hi_, MPFR_RNDD);
  return r;
}

std::string Interval::str(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, hi_);
  std::string hi(buf.data());
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, lo_);
  return "[" + std::string(buf.data()) + ", " + hi + "]";
}

Interval Interval::capped(const Interval& cap) const {
  Interval r(*this);
  if (mpfr_cmp(r.hi_, cap.hi_) > 0) mpfr_set(r.hi_, cap.hi_, MPFR_RNDU);
  if (mpfr_cmp(r.lo_, r.hi_) > 0) mpfr_set(r.lo_, r.hi_, MPFR_RNDD);
  return r;
}

Interval log_sum_exp(const Interval& a, const Interval& b) {
  if (a.is_minus_infinity()) return b;
  if (b.is_minus_infinity()) return a;
  long double pivot = std::max(a.upper(), b.upper());
  Interval p = Interval::exact_double(static_cast<double>(pivot));
  return p + log(exp(a - p) + exp(b - p));
}

Interval turns_of(const Interval& re, const Interval& im) {
  require(!(re.contains_zero() && im.contains_zero()), "argument of a box containing 0");
  if (re.upper() < 0 && im.contains_zero()) {
    return turns_of(-re, -im) + Interval::rational(1, 2);
  }
  mpfr_prec_t bits = Interval::working_bits();
  Interval r = Interval::rational(0, 1);
  mpfr_t t, lo, hi;
  mpfr_inits2(bits, t, lo, hi, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_inf(lo, 1);
  mpfr_set_inf(hi, -1);
  for (int i = 0; i < 4; ++i) {
    mpfr_srcptr x = (i & 1) ? re.hi_ptr() : re.lo_ptr();
    mpfr_srcptr y = (i & 2) ? im.hi_ptr() : im.lo_ptr();
    mpfr_atan2(t, y, x, MPFR_RNDD);
    mpfr_min(lo, lo, t, MPFR_RNDD);
    mpfr_atan2(t, y, x, MPFR_RNDU);
    mpfr_max(hi, hi, t, MPFR_RNDU);
  }
  mpfr_set(r.lo_ptr(), lo, MPFR_RNDD);
  mpfr_set(r.hi_ptr(), hi, MPFR_RNDU);
  mpfr_clears(t, lo, hi, static_cast<mpfr_ptr>(nullptr));
  Interval two_pi = Interval::pi() * Interval(2L);
  Interval turns = r / two_pi;
  if (turns.upper() < 0) turns = turns + Interval(1L);
  return turns;
}

Interval distance_to_integer(const Interval& a) {
  Interval m = a + Interval::rational(1, 2);
  BigNat fl = m.floor_lower();
  if (fl != m.floor_upper()) return Interval::hull(Interval::rational(0, 1), Interval::rational(1, 2));
  return abs(a - Interval(fl)).capped(Interval::rational(1, 2));
}

}  // namespace hypershift

