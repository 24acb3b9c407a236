#pragma once

// J-characteristics for every factor subset. For subset g the value is
//
//   J(g) = sum over runs h of the product of the entries of g's columns,
//
// J(empty) = N. The whole table is computed in O(m * 2^m) by a Walsh-Hadamard
// transform of the treatment-count vector rather than per-subset products;
// working on treatment counts also keeps replicated designs computable.

#include <cstdint>
#include <vector>

#include "wordcount/design.hpp"

namespace wordcount {

struct JTable {
  int m = 0;
  int N = 0;
  // values[g] = J(g), indexed by subset mask; size 2^m.
  // Invariants: values[0] == N, |values[g]| <= N, values[g] == N (mod 2).
  std::vector<std::int64_t> values;

  std::int64_t operator[](std::uint32_t mask) const { return values[mask]; }
  std::size_t size() const { return values.size(); }
};

// Single-subset evaluation, O(N). g = empty yields N.
std::int64_t j_characteristic(const Design& d, FactorSubset g);

// Full table via the subset transform.
JTable all_j(const Design& d);

// In-place Walsh-Hadamard butterfly over a length-2^k vector:
//   out[g] = sum_t in[t] * (-1)^popcount(g & t).
// Exposed for reuse; self-inverse up to the factor 2^k.
void walsh_hadamard_in_place(std::vector<std::int64_t>& data);

// Table of flip_coordinate(d, h, j), given jt == all_j(d). Only the 2^(m-1)
// masks containing j change, each by +-2. The caller owns the staleness
// contract: jt must match d.
JTable flip_delta(const JTable& jt, const Design& d, int h, int j);
void flip_delta_in_place(JTable& jt, const Design& d, int h, int j);

// Masks containing factor j, enumerated as expand_around_bit(t, j) for
// t in [0, 2^(m-1)): bits of t below j stay, bits at or above j shift up.
inline std::uint32_t expand_around_bit(std::uint32_t t, int j) {
  const std::uint32_t low = t & ((std::uint32_t{1} << j) - 1);
  const std::uint32_t high = (t >> j) << (j + 1);
  return high | low | (std::uint32_t{1} << j);
}

}  // namespace wordcount
