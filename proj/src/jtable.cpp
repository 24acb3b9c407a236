#include "wordcount/jtable.hpp"

#include <bit>

namespace wordcount {

std::int64_t j_characteristic(const Design& d, FactorSubset g) {
  if (g.mask > d.full_mask())
    throw DimensionError("factor subset mask exceeds 2^m");
  std::int64_t acc = 0;
  for (const std::uint32_t row : d.rows()) {
    // product over g's columns: -1 iff an odd number of them are at -1
    const std::uint32_t minus = ~row & g.mask;
    acc += (std::popcount(minus) & 1) ? -1 : +1;
  }
  return acc;
}

void walsh_hadamard_in_place(std::vector<std::int64_t>& data) {
  const std::size_t n = data.size();
  for (std::size_t half = 1; half < n; half <<= 1) {
    for (std::size_t block = 0; block < n; block += half << 1) {
      for (std::size_t i = block; i < block + half; ++i) {
        const std::int64_t a = data[i];
        const std::int64_t b = data[i + half];
        data[i] = a + b;
        data[i + half] = a - b;
      }
    }
  }
}

JTable all_j(const Design& d) {
  const std::uint32_t full = d.full_mask();
  std::vector<std::int64_t> table(std::size_t{1} << d.factor_count(), 0);
  // counts indexed by the mask of -1 entries, so the kernel (-1)^|g & t|
  // is exactly the product of g's columns for treatment t
  for (const std::uint32_t row : d.rows()) ++table[~row & full];
  walsh_hadamard_in_place(table);
  return JTable{d.factor_count(), d.run_count(), std::move(table)};
}

void flip_delta_in_place(JTable& jt, const Design& d, int h, int j) {
  if (h < 0 || h >= d.run_count() || j < 0 || j >= d.factor_count())
    throw DimensionError("flip position out of range");
  const std::uint32_t minus = ~d.row_mask(h) & d.full_mask();
  const std::uint32_t count = std::uint32_t{1} << (d.factor_count() - 1);
  for (std::uint32_t t = 0; t < count; ++t) {
    const std::uint32_t g = expand_around_bit(t, j);
    // run h's old contribution to J(g) flips sign
    const std::int64_t sign = (std::popcount(g & minus) & 1) ? -1 : +1;
    jt.values[g] -= 2 * sign;
  }
}

JTable flip_delta(const JTable& jt, const Design& d, int h, int j) {
  JTable out = jt;
  flip_delta_in_place(out, d, h, j);
  return out;
}

}  // namespace wordcount
