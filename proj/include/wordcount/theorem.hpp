#pragma once

// Conservation of the word-count total: for any N-run design on m factors
// whose runs are pairwise distinct, sum over s of b_s equals (2^m - N)/N,
// independent of which treatments were chosen. This module holds that check,
// the row-sum identities behind it, a coordinate-exchange tracer, and the
// brute-force reference used to validate the fast path.
//
// The closed form (2^m - N)/N is validated here by enumeration, not assumed:
// see the test suite and the `oracle` CLI subcommand.

#include <cstdint>
#include <functional>
#include <vector>

#include "wordcount/design.hpp"
#include "wordcount/rational.hpp"
#include "wordcount/word_counts.hpp"

namespace wordcount {

inline constexpr int kOracleMaxFactors = 16;      // brute_force_b scale
inline constexpr int kRowSumOracleMaxFactors = 12;  // row-sum oracle scale

// Conserved value of sum_s b_s for distinct-row designs: (2^m - N)/N.
// Requires 1 <= N <= 2^m (otherwise no distinct-row design exists).
Rational theorem_constant(int m, int N);

struct ConservationReport {
  int m = 0;
  int N = 0;
  Rational sum_b;              // exact sum of the word counts
  Rational candidate_constant; // (2^m - N)/N
  bool distinct_rows = false;
  bool matches = false;        // distinct_rows && sum_b == candidate_constant
};

ConservationReport check_conservation(const Design& d);
ConservationReport check_conservation(const Design& d, const WordCountVector& wcv);

// The full-factorial model matrix for m factors: one row per treatment,
// one column per nonempty factor subset (main effects first, then
// interactions by ascending order). Entries are evaluated on demand.
class FullModelMatrix {
 public:
  explicit FullModelMatrix(int m);

  int factor_count() const { return m_; }
  std::int64_t run_count() const { return std::int64_t{1} << m_; }
  std::int64_t column_count() const { return (std::int64_t{1} << m_) - 1; }

  // treatment is a +1-bit mask; column is a nonempty subset mask
  int entry(std::uint32_t treatment, std::uint32_t column) const;

  // columns in block order: [main effects | interactions]
  std::vector<std::uint32_t> column_subsets() const;

 private:
  int m_;
};

// Per treatment of the m-factor full factorial, the sum of that row of the
// model matrix (intercept excluded); literally summed. Expected: -1
// everywhere except 2^m - 1 at the all-plus treatment.
std::vector<std::int64_t> full_matrix_row_sums(int m);

// Per treatment, the sum of the row entries over all model columns whose
// subset contains factor i (m_plus_1 factors). Expected: 0 except -2^m at
// the treatment with only factor i at -1 and +2^m at the all-plus one.
std::vector<std::int64_t> factor_associated_row_sums(int m_plus_1, int i);

// What one coordinate exchange does to the word-count total.
struct ExchangeReport {
  int m = 0;
  int N = 0;
  int run = 0;
  int factor = 0;
  bool distinct_before = false;
  bool distinct_after = false;
  Rational sum_before;
  Rational sum_after;
  bool conserved = false;  // both sides distinct and the sums are equal
  // per-subset J deltas, one entry per mask containing the flipped factor
  struct SubsetDelta {
    std::uint32_t mask;
    std::int64_t j_before;
    std::int64_t j_after;
  };
  std::vector<SubsetDelta> deltas;
  Int128 scaled_delta_sum = 0;  // N^2 * (sum_after - sum_before), exact

  // Special-row setup: the flipped run is the row with only the exchanged
  // factor at -1, and the all-plus row is absent. In that configuration the
  // J values over subsets containing the factor sum to -2^(m-1), which is
  // what makes the total invariant.
  bool special_setup = false;
  Int128 j_subset_sum = 0;  // sum over masks containing the factor, before
  bool subset_sum_identity = false;  // j_subset_sum == -2^(m-1)
};

ExchangeReport trace_exchange(const Design& d, int h, int j);

// Reference word counts by literal per-subset products, O(N * 2^m * m).
// Kept deliberately independent of the transform path.
WordCountVector brute_force_b(const Design& d);

// --- enumeration and sampling helpers for oracle sweeps ---

// C(n, k), saturating at cap (cap <= 0 means exact, may overflow for n > 60).
Int128 binomial(int n, int k, Int128 cap = 0);

// Number of distinct-row designs on (m, N), up to row order: C(2^m, N).
Int128 count_distinct_designs(int m, int N, Int128 cap = 0);

// Calls fn for every N-subset of the 2^m treatments, rows in ascending mask
// order. Visits each unordered support once.
void for_each_distinct_design(int m, int N,
                              const std::function<void(const Design&)>& fn);

}  // namespace wordcount
