#pragma once

#include "bignum.hpp"
#include "interval.hpp"
#include "schedule.hpp"
#include "targets.hpp"

#include <string>
#include <vector>

namespace hypershift {

/// A positive quantity kept as its logarithm, with an optional phase in turns.
struct LogMagnitude {
  Interval log_mag;
  Interval phase;  // turns; 0 for real quantities

  static LogMagnitude real(Interval log_mag);
  LogMagnitude operator*(const LogMagnitude& o) const;
  /// Upper-bound composition |a| + |b| (phases dropped).
  LogMagnitude add_magnitudes(const LogMagnitude& o) const;
};

/// A multiplier z, stored as text so it can be re-evaluated at any precision.
class Multiplier {
 public:
  /// z = re + i im; each part is a decimal literal, "e", "pi" or "p/q".
  static Multiplier cartesian(std::string re, std::string im);
  /// z = modulus * exp(2 pi i turns).
  static Multiplier polar(std::string modulus, std::string turns);
  /// "RE,IM" as on the command line.
  static Multiplier parse(const std::string& text);

  Interval log_abs() const;
  Interval turns() const;
  /// Exactly real and positive.
  bool is_positive_real() const;
  ComplexLD approx() const;
  std::string describe() const;

 private:
  bool polar_ = false;
  std::string a_, b_;
};

/// Parse a decimal literal, "e", "pi" or "p/q" at the working precision.
Interval parse_real(const std::string& text);

struct Block {
  Index k = 0;
  Index j = 0;
  BigNat start;  // M_k
  BigNat width;  // M_{k+1} - M_k
  std::vector<DyadicComplex> pattern;
  bool truncated = false;
  bool fallback = false;  // pattern replaced by e_0
  Interval log_amp;       // ln d_k - ln|w_k|
  Interval phase;         // theta_k
};

class HyperVector {
 public:
  explicit HyperVector(Schedule& schedule) : s_(schedule) {}

  Schedule& schedule() { return s_; }

  LogMagnitude log_d(Index k);
  Block block(Index k);
  LogMagnitude tail_log_norm(Index k);

  /// Certified upper bound (the interval's upper end) for
  /// log |(zB)^{M_k} f - v_l|. Requires j(k) = l and w_k = v_l.
  Interval scaled_orbit_log_distance(const Multiplier& z, Index k, Index l);
  /// Same, from the entries at k and k+1.
  Interval scaled_orbit_log_distance(const Multiplier& z, const ScheduleEntry& e,
                                     const ScheduleEntry& e1, Index l);

  /// Coordinates [0, out_len) of the sum of the first prefix_blocks blocks.
  std::vector<ComplexLD> materialize(std::size_t prefix_blocks, std::size_t out_len);
  /// Coordinates [0, len) of (zB)^{M_k} f built from blocks k .. k+blocks-1.
  std::vector<ComplexLD> orbit_window(const Multiplier& z, Index k, std::size_t blocks,
                                      std::size_t len);

  /// CSV row for `hvector blocks`: k,M_k,width,j,log_amp,phase.
  static std::string block_csv_row(const Block& b);

 private:
  Schedule& s_;
};

/// ln of the l2 norm of a dyadic vector.
Interval log_norm_of(const std::vector<DyadicComplex>& v);

}  // namespace hypershift
