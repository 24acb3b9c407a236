#pragma once

// Ranking criteria over word counts: minimum G2-aberration (lexicographic on
// b_1..b_m), minimum G-aberration (lexicographic on confounding frequency
// vectors), and weighted linear combinations of the b_s.

#include <compare>
#include <cstdint>
#include <vector>

#include "wordcount/jtable.hpp"
#include "wordcount/word_counts.hpp"

namespace wordcount {

// Per order s, a histogram of |J| over the parity grid N, N-2, N-4, ...,
// down to the smallest positive value (1 or 2). Subsets with J = 0 are not
// binned; their count per order is C(m,s) minus the grid total.
class ConfoundingFrequencyVector {
 public:
  ConfoundingFrequencyVector(int m, int N,
                             std::vector<std::vector<std::int64_t>> counts);

  int factor_count() const { return m_; }
  int run_count() const { return N_; }

  // Grid magnitudes for one order, descending: N, N-2, ..., (1 or 2).
  std::vector<int> magnitudes() const;
  int grid_size() const { return (N_ + 1) / 2; }

  // count of subsets g with |g| = s and |J(g)| = N - 2k
  std::int64_t count(int s, int k) const {
    return counts_[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(k)];
  }
  const std::vector<std::int64_t>& order_counts(int s) const {
    return counts_[static_cast<std::size_t>(s - 1)];
  }
  std::int64_t zero_count(int s) const;  // subsets of order s with J = 0

  // F flattened for lexicographic comparison: orders ascending, magnitudes
  // descending within each order.
  std::vector<std::int64_t> flattened() const;

 private:
  int m_;
  int N_;
  std::vector<std::vector<std::int64_t>> counts_;  // [s-1][k]
};

ConfoundingFrequencyVector cfv(const JTable& jt);

// Lexicographic on (b_1, ..., b_m); less = less aberrant. Both vectors must
// share (m, N).
std::strong_ordering compare_g2(const WordCountVector& a, const WordCountVector& b);

// Lexicographic on flattened F; a smaller count of large-|J| words at the
// first difference wins. Both vectors must share (m, N).
std::strong_ordering compare_g(const ConfoundingFrequencyVector& a,
                               const ConfoundingFrequencyVector& b);

// Comparison restricted to the order-s component F_s (e.g. "best F_3").
std::strong_ordering compare_g_order(const ConfoundingFrequencyVector& a,
                                     const ConfoundingFrequencyVector& b, int s);

struct CriterionWeights {
  std::vector<double> w;  // w[s-1] applies to b_s; nonnegative, not all zero

  // Default used by reports when nothing is configured: w_3 = w_4 = 1.
  static CriterionWeights default_for(int m);
};

// sum over s of w_s * b_s, from exact numerators; long double keeps integer
// weights times integer numerators exact until the final division by N^2.
long double weighted_score(const WordCountVector& wcv, const CriterionWeights& weights);

}  // namespace wordcount
