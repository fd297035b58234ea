#pragma once

#include "bignum.hpp"

#include <mpfr.h>

#include <string>

namespace hypershift {

/// Closed real interval [lo, hi] with MPFR endpoints and outward rounding.
///
/// Every operation rounds the lower endpoint down and the upper endpoint up,
/// so the true value of any expression built from exact inputs stays inside.
/// Working precision is thread-local (see PrecisionScope).
class Interval {
 public:
  Interval();
  explicit Interval(long v);
  explicit Interval(const BigNat& v);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  static Interval exact_double(double v);
  /// Decimal literal, enclosed outward ("1.5", "-2e-3", "e", "pi").
  static Interval parse(const std::string& text);
  /// num / 2^shift exactly (shift may be negative).
  static Interval dyadic(const BigNat& num, long shift);
  static Interval rational(long num, long den);
  static Interval hull(const Interval& a, const Interval& b);
  static Interval pi();
  static Interval minus_infinity();

  static mpfr_prec_t working_bits();
  static void set_working_bits(mpfr_prec_t bits);

  Interval operator-() const;
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator-=(const Interval& b) { return *this = *this - b; }

  friend Interval exp(const Interval& a);
  friend Interval expm1(const Interval& a);
  friend Interval log(const Interval& a);
  friend Interval log1p(const Interval& a);
  friend Interval sqrt(const Interval& a);
  friend Interval square(const Interval& a);
  friend Interval abs(const Interval& a);
  /// sin on a subinterval of [0, pi/2] (monotone branch only).
  friend Interval sin_first_quadrant(const Interval& a);

  /// Widen both ends by `rel` relative (for float-derived inputs).
  Interval widened(double rel) const;
  /// Same interval with the upper end lowered to cap.upper() if larger.
  Interval capped(const Interval& cap) const;

  long double lower() const;
  long double upper() const;
  long double mid() const;
  double width() const;
  bool is_minus_infinity() const;

  bool certainly_lt(const Interval& b) const;   // hi < b.lo
  bool certainly_gt(const Interval& b) const;   // lo > b.hi
  bool contains(long double v) const;
  bool contains_zero() const;

  /// Floors of both endpoints (for integer certification).
  BigNat floor_lower() const;
  BigNat floor_upper() const;

  std::string str(int digits = 30) const;

  mpfr_srcptr lo_ptr() const { return lo_; }
  mpfr_srcptr hi_ptr() const { return hi_; }
  mpfr_ptr lo_ptr() { return lo_; }
  mpfr_ptr hi_ptr() { return hi_; }

 private:
  struct Uninit {};
  Interval(Uninit, mpfr_prec_t bits);

  mpfr_t lo_;
  mpfr_t hi_;
};

/// RAII override of the thread-local working precision.
/// log(e^a + e^b), enclosed.
Interval log_sum_exp(const Interval& a, const Interval& b);
/// arg(re + i im) / 2pi in [0, 1) (or shifted by an integer); the box must
/// not contain 0.
Interval turns_of(const Interval& re, const Interval& im);
/// Distance from a to the nearest integer, within [0, 1/2].
Interval distance_to_integer(const Interval& a);

class PrecisionScope {
 public:
  explicit PrecisionScope(mpfr_prec_t bits) : saved_(Interval::working_bits()) {
    Interval::set_working_bits(bits);
  }
  ~PrecisionScope() { Interval::set_working_bits(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  mpfr_prec_t saved_;
};

/// Decimal digits to MPFR bits, with a fixed guard.
inline mpfr_prec_t digits_to_bits(int digits) {
  return static_cast<mpfr_prec_t>(digits * 3.3219280948873623) + 32;
}

}  // namespace hypershift
