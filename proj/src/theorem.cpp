#include "wordcount/theorem.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "wordcount/jtable.hpp"

namespace wordcount {

Rational theorem_constant(int m, int N) {
  if (m < 1 || m > kMaxFactors)
    throw DimensionError("factor count out of range");
  if (N < 1) throw DimensionError("run count must be positive");
  const Int128 grid = Int128{1} << m;
  if (N > grid)
    throw DimensionError("no distinct-row design exists for N > 2^m");
  return Rational(grid - N, N);
}

ConservationReport check_conservation(const Design& d, const WordCountVector& wcv) {
  ConservationReport report;
  report.m = d.factor_count();
  report.N = d.run_count();
  report.sum_b = wcv.sum();
  // formula value reported even when N > 2^m, as a diagnostic
  report.candidate_constant =
      Rational((Int128{1} << d.factor_count()) - d.run_count(), d.run_count());
  report.distinct_rows = has_distinct_rows(d);
  report.matches = report.distinct_rows && report.sum_b == report.candidate_constant;
  return report;
}

ConservationReport check_conservation(const Design& d) {
  return check_conservation(d, word_count_vector(all_j(d)));
}

FullModelMatrix::FullModelMatrix(int m) : m_(m) {
  if (m < 1 || m > kMaxFactors) throw DimensionError("factor count out of range");
}

int FullModelMatrix::entry(std::uint32_t treatment, std::uint32_t column) const {
  // product of the treatment's levels over the column's subset
  return (std::popcount(~treatment & column) & 1) ? -1 : +1;
}

std::vector<std::uint32_t> FullModelMatrix::column_subsets() const {
  std::vector<std::uint32_t> cols;
  cols.reserve(static_cast<std::size_t>(column_count()));
  for (std::uint32_t g = 1; g < (std::uint32_t{1} << m_); ++g) cols.push_back(g);
  std::stable_sort(cols.begin(), cols.end(), [](std::uint32_t a, std::uint32_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  return cols;
}

std::vector<std::int64_t> full_matrix_row_sums(int m) {
  if (m < 1 || m > kRowSumOracleMaxFactors)
    throw DimensionError("row-sum oracle supports 1 <= m <= 12");
  const FullModelMatrix mm(m);
  const std::uint32_t n = std::uint32_t{1} << m;
  std::vector<std::int64_t> sums(n, 0);
  for (std::uint32_t t = 0; t < n; ++t) {
    std::int64_t acc = 0;
    for (std::uint32_t g = 1; g < n; ++g) acc += mm.entry(t, g);
    sums[t] = acc;
  }
  return sums;
}

std::vector<std::int64_t> factor_associated_row_sums(int m_plus_1, int i) {
  if (m_plus_1 < 2 || m_plus_1 > kRowSumOracleMaxFactors)
    throw DimensionError("factor-sum oracle supports 2 <= m+1 <= 12");
  if (i < 0 || i >= m_plus_1) throw DimensionError("factor index out of range");
  const FullModelMatrix mm(m_plus_1);
  const std::uint32_t n = std::uint32_t{1} << m_plus_1;
  const std::uint32_t bit = std::uint32_t{1} << i;
  std::vector<std::int64_t> sums(n, 0);
  for (std::uint32_t t = 0; t < n; ++t) {
    std::int64_t acc = 0;
    for (std::uint32_t g = 1; g < n; ++g)
      if (g & bit) acc += mm.entry(t, g);
    sums[t] = acc;
  }
  return sums;
}

ExchangeReport trace_exchange(const Design& d, int h, int j) {
  if (h < 0 || h >= d.run_count() || j < 0 || j >= d.factor_count())
    throw DimensionError("exchange position out of range");
  ExchangeReport report;
  report.m = d.factor_count();
  report.N = d.run_count();
  report.run = h;
  report.factor = j;

  const Design after = flip_coordinate(d, h, j);
  report.distinct_before = has_distinct_rows(d);
  report.distinct_after = has_distinct_rows(after);

  const JTable before_jt = all_j(d);
  const JTable after_jt = flip_delta(before_jt, d, h, j);
  const WordCountVector before_wcv = word_count_vector(before_jt);
  const WordCountVector after_wcv = word_count_vector(after_jt);
  report.sum_before = before_wcv.sum();
  report.sum_after = after_wcv.sum();
  report.conserved = report.distinct_before && report.distinct_after &&
                     report.sum_before == report.sum_after;

  const std::uint32_t half = std::uint32_t{1} << (d.factor_count() - 1);
  report.deltas.reserve(half);
  for (std::uint32_t t = 0; t < half; ++t) {
    const std::uint32_t g = expand_around_bit(t, j);
    const std::int64_t jb = before_jt.values[g];
    const std::int64_t ja = after_jt.values[g];
    report.deltas.push_back({g, jb, ja});
    report.j_subset_sum += jb;
    report.scaled_delta_sum += Int128(ja) * ja - Int128(jb) * jb;
  }

  // special-row setup: flipped run is [1,...,1] with only factor j at -1,
  // and the all-plus treatment is not in the design
  const std::uint32_t special_row = d.full_mask() & ~(std::uint32_t{1} << j);
  const bool has_all_plus =
      std::find(d.rows().begin(), d.rows().end(), d.full_mask()) != d.rows().end();
  report.special_setup = d.row_mask(h) == special_row && !has_all_plus;
  report.subset_sum_identity =
      report.j_subset_sum == -(Int128{1} << (d.factor_count() - 1));
  return report;
}

WordCountVector brute_force_b(const Design& d) {
  if (d.factor_count() > kOracleMaxFactors)
    throw DimensionError("brute-force reference supports m <= 16");
  WordCountVector out;
  out.m = d.factor_count();
  out.N = d.run_count();
  out.numerators.assign(static_cast<std::size_t>(d.factor_count()), 0);
  for (std::uint32_t g = 1; g <= d.full_mask(); ++g) {
    std::int64_t j_value = 0;
    for (int h = 0; h < d.run_count(); ++h) {
      int prod = 1;
      for (int j = 0; j < d.factor_count(); ++j)
        if (g >> j & 1u) prod *= d.level(h, j);
      j_value += prod;
    }
    out.numerators[static_cast<std::size_t>(std::popcount(g)) - 1] +=
        Int128(j_value) * j_value;
  }
  return out;
}

Int128 binomial(int n, int k, Int128 cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;  // exact: product of i consecutive ints
    if (cap > 0 && acc > cap) return cap + 1;
  }
  return acc;
}

Int128 count_distinct_designs(int m, int N, Int128 cap) {
  if (m < 1 || m > kMaxFactors) throw DimensionError("factor count out of range");
  const Int128 grid = Int128{1} << m;
  if (N < 1 || N > grid) return 0;
  return binomial(static_cast<int>(grid), N, cap);
}

void for_each_distinct_design(int m, int N,
                              const std::function<void(const Design&)>& fn) {
  const std::uint32_t grid = std::uint32_t{1} << m;
  if (N < 1 || static_cast<std::uint32_t>(N) > grid)
    throw DimensionError("no distinct-row design exists for these dimensions");
  std::vector<std::uint32_t> support(static_cast<std::size_t>(N));
  std::iota(support.begin(), support.end(), 0u);
  const auto n = static_cast<std::size_t>(N);
  while (true) {
    fn(Design(m, support));
    // next N-combination of {0, ..., 2^m - 1} in lexicographic order
    std::size_t i = n;
    while (i > 0 && support[i - 1] == grid - static_cast<std::uint32_t>(n - i) - 1) --i;
    if (i == 0) break;
    ++support[i - 1];
    for (std::size_t k = i; k < n; ++k) support[k] = support[k - 1] + 1;
  }
}

}  // namespace wordcount
