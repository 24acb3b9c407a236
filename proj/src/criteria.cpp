#include "wordcount/criteria.hpp"

#include <bit>
#include <cstdlib>

namespace wordcount {
namespace {

Int128 binomial128(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Int128 acc = 1;
  for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
  return acc;
}

void require_same_shape(int am, int an, int bm, int bn, const char* what) {
  if (am != bm || an != bn)
    throw DimensionError(std::string(what) +
                         ": operands must share factor and run counts");
}

}  // namespace

ConfoundingFrequencyVector::ConfoundingFrequencyVector(
    int m, int N, std::vector<std::vector<std::int64_t>> counts)
    : m_(m), N_(N), counts_(std::move(counts)) {}

std::vector<int> ConfoundingFrequencyVector::magnitudes() const {
  std::vector<int> mags;
  for (int mag = N_; mag > 0; mag -= 2) mags.push_back(mag);
  return mags;
}

std::int64_t ConfoundingFrequencyVector::zero_count(int s) const {
  Int128 total = binomial128(m_, s);
  for (const auto c : order_counts(s)) total -= c;
  return static_cast<std::int64_t>(total);
}

std::vector<std::int64_t> ConfoundingFrequencyVector::flattened() const {
  std::vector<std::int64_t> flat;
  flat.reserve(static_cast<std::size_t>(m_) * static_cast<std::size_t>(grid_size()));
  for (const auto& per_order : counts_)
    flat.insert(flat.end(), per_order.begin(), per_order.end());
  return flat;
}

ConfoundingFrequencyVector cfv(const JTable& jt) {
  const int grid = (jt.N + 1) / 2;
  std::vector<std::vector<std::int64_t>> counts(
      static_cast<std::size_t>(jt.m),
      std::vector<std::int64_t>(static_cast<std::size_t>(grid), 0));
  for (std::uint32_t g = 1; g < jt.size(); ++g) {
    const std::int64_t mag = std::abs(jt.values[g]);
    if (mag == 0) continue;
    // |J| has the parity of N, so (N - |J|) / 2 indexes the grid exactly
    const auto k = static_cast<std::size_t>((jt.N - mag) / 2);
    ++counts[static_cast<std::size_t>(std::popcount(g)) - 1][k];
  }
  return ConfoundingFrequencyVector(jt.m, jt.N, std::move(counts));
}

std::strong_ordering compare_g2(const WordCountVector& a, const WordCountVector& b) {
  require_same_shape(a.m, a.N, b.m, b.N, "compare_g2");
  for (std::size_t i = 0; i < a.numerators.size(); ++i) {
    if (a.numerators[i] < b.numerators[i]) return std::strong_ordering::less;
    if (a.numerators[i] > b.numerators[i]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::strong_ordering compare_g(const ConfoundingFrequencyVector& a,
                               const ConfoundingFrequencyVector& b) {
  require_same_shape(a.factor_count(), a.run_count(), b.factor_count(),
                     b.run_count(), "compare_g");
  for (int s = 1; s <= a.factor_count(); ++s)
    if (const auto ord = compare_g_order(a, b, s); ord != std::strong_ordering::equal)
      return ord;
  return std::strong_ordering::equal;
}

std::strong_ordering compare_g_order(const ConfoundingFrequencyVector& a,
                                     const ConfoundingFrequencyVector& b, int s) {
  require_same_shape(a.factor_count(), a.run_count(), b.factor_count(),
                     b.run_count(), "compare_g_order");
  const auto& fa = a.order_counts(s);
  const auto& fb = b.order_counts(s);
  for (std::size_t k = 0; k < fa.size(); ++k) {
    if (fa[k] < fb[k]) return std::strong_ordering::less;
    if (fa[k] > fb[k]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

CriterionWeights CriterionWeights::default_for(int m) {
  CriterionWeights weights;
  weights.w.assign(static_cast<std::size_t>(m), 0.0);
  if (m >= 3) weights.w[2] = 1.0;
  if (m >= 4) weights.w[3] = 1.0;
  if (m < 3) weights.w.back() = 1.0;
  return weights;
}

long double weighted_score(const WordCountVector& wcv, const CriterionWeights& weights) {
  if (static_cast<int>(weights.w.size()) != wcv.m)
    throw DimensionError("weight vector length must equal the factor count");
  bool any_positive = false;
  for (const double w : weights.w) {
    if (w < 0.0) throw DimensionError("criterion weights must be nonnegative");
    if (w > 0.0) any_positive = true;
  }
  if (!any_positive) throw DimensionError("criterion weights must not all be zero");
  long double acc = 0.0L;
  for (int s = 1; s <= wcv.m; ++s)
    acc += static_cast<long double>(weights.w[static_cast<std::size_t>(s - 1)]) *
           static_cast<long double>(wcv.q(s));
  return acc / static_cast<long double>(wcv.n_squared());
}

}  // namespace wordcount
