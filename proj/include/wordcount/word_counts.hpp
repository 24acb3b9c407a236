#pragma once

// Generalized word counts b_s = (1/N^2) * sum over |g| = s of J(g)^2,
// kept as exact integer numerators q_s over the common denominator N^2.

#include <vector>

#include "wordcount/jtable.hpp"
#include "wordcount/rational.hpp"

namespace wordcount {

struct WordCountVector {
  int m = 0;
  int N = 0;
  // numerators[s-1] = q_s = sum over |g|=s of J(g)^2; b_s = q_s / N^2
  std::vector<Int128> numerators;

  Int128 q(int s) const { return numerators[static_cast<std::size_t>(s - 1)]; }
  Rational b(int s) const { return Rational(q(s), n_squared()); }
  Int128 n_squared() const { return Int128(N) * N; }

  Int128 sum_numerators() const;
  // sum over s of b_s; the quantity conserved across distinct-row designs
  Rational sum() const { return Rational(sum_numerators(), n_squared()); }

  long double b_decimal(int s) const {
    return static_cast<long double>(q(s)) / static_cast<long double>(n_squared());
  }

  friend bool operator==(const WordCountVector&, const WordCountVector&) = default;
};

WordCountVector word_count_vector(const JTable& jt);

}  // namespace wordcount
