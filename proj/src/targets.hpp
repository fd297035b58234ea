#pragma once

#include "bignum.hpp"
#include "interval.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace hypershift {

using ComplexLD = std::complex<long double>;

/// num * 2^shift, exact.
struct Dyadic {
  std::int64_t num = 0;
  int shift = 0;

  long double value() const;
  /// Exact finite decimal expansion.
  std::string decimal() const;
  bool operator==(const Dyadic& o) const;
};

struct DyadicComplex {
  Dyadic re;
  Dyadic im;

  ComplexLD value() const { return {re.value(), im.value()}; }
  bool is_zero() const { return re.num == 0 && im.num == 0; }
  bool operator==(const DyadicComplex& o) const { return re == o.re && im == o.im; }
};

/// v_l: a finite nonzero vector with alpha_l = ln|v_l| and eps_l.
struct TargetVector {
  BigNat l;
  std::vector<DyadicComplex> coords;
  long double log_norm = 0;
  long double cone_radius = 0;

  std::vector<ComplexLD> values() const;
  /// Support length (index of last nonzero coordinate + 1).
  std::size_t support() const;
  Interval log_norm_interval() const;
  Interval norm_interval() const;
  Interval cone_radius_interval() const;
};

/// v_1 = e_0, v_2 = i e_0, then levels m = 1, 2, ...: every vector of length
/// <= m whose coordinates are a/2^m + i b/2^m with |a|, |b| <= m 2^m, excluding
/// zero, in mixed-radix order. Each raw vector is wrapped in a fixed-length
/// ramp of powers of two times e_0 that climbs from norm 1 to within a factor
/// sqrt(2) of the raw norm and back, so |alpha_{l+1} - alpha_l| <= 1 always.
TargetVector enumerate(const BigNat& l);
inline TargetVector enumerate(std::uint64_t l) { return enumerate(BigNat(l)); }

/// min over mu > 0 of |mu v - v_l|; |v_l| when Re<v_l, v> <= 0.
long double cone_distance(const std::vector<ComplexLD>& v, const TargetVector& t);

struct DensityWitnessOptions {
  std::uint64_t scan_limit = 20000;
  int max_level = 40;
};

/// Some l with |v_l - target| < delta: a short scan of the prefix first, then
/// direct ranking of the target rounded onto a fine enough level grid.
BigNat density_witness(const std::vector<std::complex<double>>& target, double delta,
                       const DensityWitnessOptions& opts = {});

/// CSV line for `targets dump`: l,coords,alpha_l,eps_l.
std::string target_csv_row(const TargetVector& t);

}  // namespace hypershift
