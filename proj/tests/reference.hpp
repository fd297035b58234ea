#pragma once
// Straightforward index-by-index construction, independent of the library's
// plateau arithmetic, fixed-point y and MPFR code. Real mode, lnln density.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

namespace reference {

using F = boost::multiprecision::cpp_bin_float_100;
using Int = boost::multiprecision::cpp_int;

inline std::uint64_t floor_lnln(std::uint64_t k) {
  F x(k);
  return static_cast<std::uint64_t>(floor(log(log(x))));
}

inline std::uint64_t breakpoint(std::uint64_t n) {
  F x(n);
  return static_cast<std::uint64_t>(floor(x * log(log(x))));
}

struct Row {
  std::uint64_t k;
  unsigned q;
  std::uint64_t j;
  Int M;
  F y;
};

// Indices 20 .. 20 + count - 1 of step 1 (k = 20) and step 2.
inline std::vector<Row> lnln_prefix(std::uint64_t count) {
  std::vector<Row> rows;
  std::uint64_t last = 20 + count;
  std::vector<bool> start(last + 2, false);
  std::vector<std::uint64_t> cycle_begin(last + 2, 0);
  for (std::uint64_t n = 16;; ++n) {
    std::uint64_t b = breakpoint(n);
    if (b > last + 1) break;
    start[b] = true;
  }
  std::uint64_t cur = 0;
  for (std::uint64_t k = 16; k <= last + 1; ++k) {
    if (start[k]) cur = k;
    cycle_begin[k] = cur;
  }
  Int M = 1;
  F y = 1;
  rows.push_back({20, 1, 20 + 1 - cycle_begin[20], M, y});
  const unsigned q = 2;
  const std::uint64_t N = 20;
  Int M_next = Int(q) * q * (M + 1);
  Int d = M_next - M;
  M = M_next;
  y = F(2) / q;
  for (std::uint64_t k = N + 1; k < last; ++k) {
    if (k > N + 1) {
      M = M + d + Int(q) * floor_lnln(k - 1);
      if (start[k]) y += F(1) / (F(q) * F(M));
    }
    rows.push_back({k, q, k + 1 - cycle_begin[k], M, y});
  }
  return rows;
}

}  // namespace reference
