#include "wordcount/word_counts.hpp"

#include <bit>

namespace wordcount {

Int128 WordCountVector::sum_numerators() const {
  Int128 total = 0;
  for (const Int128 q : numerators) total += q;
  return total;
}

WordCountVector word_count_vector(const JTable& jt) {
  WordCountVector out;
  out.m = jt.m;
  out.N = jt.N;
  out.numerators.assign(static_cast<std::size_t>(jt.m), 0);
  for (std::uint32_t g = 1; g < jt.size(); ++g) {
    const Int128 j = jt.values[g];
    out.numerators[static_cast<std::size_t>(std::popcount(g)) - 1] += j * j;
  }
  return out;
}

}  // namespace wordcount
