#include "doctest.h"

#include <compare>
#include <cstdint>
#include <random>
#include <vector>

#include "wordcount/criteria.hpp"
#include "wordcount/design.hpp"
#include "wordcount/jtable.hpp"
#include "wordcount/search.hpp"
#include "wordcount/theorem.hpp"
#include "wordcount/word_counts.hpp"

using wordcount::cfv;
using wordcount::ConfoundingFrequencyVector;
using wordcount::CriterionWeights;
using wordcount::Design;
using wordcount::Int128;
using wordcount::JTable;
using wordcount::WordCountVector;

namespace {

const Design kHalfFraction = wordcount::load_design(
    "1 1 1\n1 -1 -1\n-1 1 -1\n-1 -1 1");

Design random_design(int m, int N, std::mt19937_64& rng) {
  std::vector<std::uint32_t> rows;
  const std::uint32_t full = (std::uint32_t{1} << m) - 1;
  for (int h = 0; h < N; ++h) rows.push_back(static_cast<std::uint32_t>(rng()) & full);
  return Design(m, std::move(rows));
}

Int128 binom(int n, int k) { return wordcount::binomial(n, k); }

}  // namespace

TEST_CASE("cfv of the half fraction") {
  const ConfoundingFrequencyVector f = cfv(wordcount::all_j(kHalfFraction));
  CHECK(f.magnitudes() == std::vector<int>{4, 2});
  // orders 1 and 2 carry no positive-magnitude mass
  for (int s = 1; s <= 2; ++s) {
    CHECK(f.count(s, 0) == 0);
    CHECK(f.count(s, 1) == 0);
    CHECK(f.zero_count(s) == 3);
  }
  CHECK(f.count(3, 0) == 1);  // |J| = 4 once
  CHECK(f.count(3, 1) == 0);
  CHECK(f.zero_count(3) == 0);
}

TEST_CASE("cfv of the full factorial is all zeros") {
  std::vector<std::uint32_t> rows;
  for (std::uint32_t t = 0; t < 4; ++t) rows.push_back(t);
  const ConfoundingFrequencyVector f = cfv(wordcount::all_j(Design(2, std::move(rows))));
  for (int s = 1; s <= 2; ++s) {
    for (int k = 0; k < f.grid_size(); ++k) CHECK(f.count(s, k) == 0);
    CHECK(f.zero_count(s) == binom(2, s));
  }
}

TEST_CASE("cfv magnitude grid follows run-count parity") {
  std::mt19937_64 rng(201);
  const Design odd = random_design(3, 5, rng);
  CHECK(cfv(wordcount::all_j(odd)).magnitudes() == std::vector<int>{5, 3, 1});
  const Design even = random_design(3, 6, rng);
  CHECK(cfv(wordcount::all_j(even)).magnitudes() == std::vector<int>{6, 4, 2});
}

TEST_CASE("cfv counts reconcile with word counts") {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 7);
    const int N = 1 + static_cast<int>(rng() % 14);
    const JTable jt = wordcount::all_j(random_design(m, N, rng));
    const ConfoundingFrequencyVector f = cfv(jt);
    const WordCountVector w = wordcount::word_count_vector(jt);
    const std::vector<int> mags = f.magnitudes();
    for (int s = 1; s <= m; ++s) {
      Int128 mass = 0;
      std::int64_t subsets = 0;
      for (int k = 0; k < f.grid_size(); ++k) {
        REQUIRE(f.count(s, k) >= 0);
        mass += Int128(f.count(s, k)) * mags[static_cast<std::size_t>(k)] *
                mags[static_cast<std::size_t>(k)];
        subsets += f.count(s, k);
      }
      REQUIRE(mass == w.q(s));
      REQUIRE(subsets + f.zero_count(s) == binom(m, s));
    }
  }
}

TEST_CASE("flattened layout: orders ascending, magnitudes descending") {
  const ConfoundingFrequencyVector f = cfv(wordcount::all_j(kHalfFraction));
  // m=3, grid {4,2}: (F_1 | F_2 | F_3) = (0,0, 0,0, 1,0)
  CHECK(f.flattened() == std::vector<std::int64_t>{0, 0, 0, 0, 1, 0});
}

TEST_CASE("compare_g2 is lexicographic on b") {
  // b = (0,0,1) versus b = (0, 1/4, 3/4): the first wins at s = 2
  const WordCountVector a{3, 4, {0, 0, 16}};
  const WordCountVector b{3, 4, {0, 4, 12}};
  CHECK(wordcount::compare_g2(a, b) == std::strong_ordering::less);
  CHECK(wordcount::compare_g2(b, a) == std::strong_ordering::greater);
  CHECK(wordcount::compare_g2(a, a) == std::strong_ordering::equal);
  CHECK(wordcount::compare_g2(b, b) == std::strong_ordering::equal);
}

TEST_CASE("comparators require matching dimensions") {
  const WordCountVector a = wordcount::word_count_vector(wordcount::all_j(kHalfFraction));
  std::mt19937_64 rng(203);
  const WordCountVector b =
      wordcount::word_count_vector(wordcount::all_j(random_design(3, 5, rng)));
  const WordCountVector c =
      wordcount::word_count_vector(wordcount::all_j(random_design(4, 4, rng)));
  CHECK_THROWS_AS(wordcount::compare_g2(a, b), wordcount::DimensionError);
  CHECK_THROWS_AS(wordcount::compare_g2(a, c), wordcount::DimensionError);
  CHECK_THROWS_AS(wordcount::compare_g(cfv(wordcount::all_j(kHalfFraction)),
                                       cfv(wordcount::all_j(random_design(3, 5, rng)))),
                  wordcount::DimensionError);
}

TEST_CASE("order-3 mass at |J|=2 beats order-3 mass at |J|=4") {
  // Exhaustive over the 70 four-run designs on three factors: every design
  // whose order-3 component lives at magnitude 2 has a better F_3 than the
  // half fraction, whose single order-3 word sits at magnitude 4.
  const ConfoundingFrequencyVector worst_f3 = cfv(wordcount::all_j(kHalfFraction));
  int seen_mag2 = 0;
  wordcount::for_each_distinct_design(3, 4, [&](const Design& d) {
    const ConfoundingFrequencyVector f = cfv(wordcount::all_j(d));
    if (f.count(3, 1) > 0) {  // magnitude-2 order-3 mass
      REQUIRE(f.count(3, 0) == 0);
      REQUIRE(wordcount::compare_g_order(f, worst_f3, 3) == std::strong_ordering::less);
      ++seen_mag2;
    }
  });
  CHECK(seen_mag2 > 0);
}

TEST_CASE("G and G2 orderings agree on single-spike designs") {
  // Within the exhaustive m=3, N=4 set, designs whose per-order histogram has
  // at most one nonzero positive count rank identically under both criteria.
  std::vector<WordCountVector> wcvs;
  std::vector<ConfoundingFrequencyVector> fs;
  wordcount::for_each_distinct_design(3, 4, [&](const Design& d) {
    const JTable jt = wordcount::all_j(d);
    const ConfoundingFrequencyVector f = cfv(jt);
    bool single_spike = true;
    for (int s = 1; s <= 3; ++s) {
      int nonzero = 0;
      for (int k = 0; k < f.grid_size(); ++k) nonzero += f.count(s, k) > 0 ? 1 : 0;
      single_spike = single_spike && nonzero <= 1;
    }
    if (single_spike) {
      wcvs.push_back(wordcount::word_count_vector(jt));
      fs.push_back(f);
    }
  });
  REQUIRE(wcvs.size() > 2);
  for (std::size_t i = 0; i < wcvs.size(); ++i) {
    for (std::size_t k = 0; k < wcvs.size(); ++k) {
      REQUIRE(wordcount::compare_g(fs[i], fs[k]) == wordcount::compare_g2(wcvs[i], wcvs[k]));
    }
  }
}

TEST_CASE("comparators are total preorders") {
  std::mt19937_64 rng(204);
  std::vector<WordCountVector> wcvs;
  std::vector<ConfoundingFrequencyVector> fs;
  for (int i = 0; i < 24; ++i) {
    const JTable jt = wordcount::all_j(random_design(4, 6, rng));
    wcvs.push_back(wordcount::word_count_vector(jt));
    fs.push_back(cfv(jt));
  }
  for (std::size_t a = 0; a < wcvs.size(); ++a) {
    REQUIRE(wordcount::compare_g2(wcvs[a], wcvs[a]) == std::strong_ordering::equal);
    REQUIRE(wordcount::compare_g(fs[a], fs[a]) == std::strong_ordering::equal);
    for (std::size_t b = 0; b < wcvs.size(); ++b) {
      // antisymmetry up to tie
      const auto g2ab = wordcount::compare_g2(wcvs[a], wcvs[b]);
      const auto g2ba = wordcount::compare_g2(wcvs[b], wcvs[a]);
      REQUIRE((g2ab == std::strong_ordering::equal) ==
              (g2ba == std::strong_ordering::equal));
      if (g2ab == std::strong_ordering::less) REQUIRE(g2ba == std::strong_ordering::greater);
      for (std::size_t c = 0; c < wcvs.size(); ++c) {
        // transitivity of both orderings
        if (wordcount::compare_g2(wcvs[a], wcvs[b]) != std::strong_ordering::greater &&
            wordcount::compare_g2(wcvs[b], wcvs[c]) != std::strong_ordering::greater) {
          REQUIRE(wordcount::compare_g2(wcvs[a], wcvs[c]) != std::strong_ordering::greater);
        }
        if (wordcount::compare_g(fs[a], fs[b]) != std::strong_ordering::greater &&
            wordcount::compare_g(fs[b], fs[c]) != std::strong_ordering::greater) {
          REQUIRE(wordcount::compare_g(fs[a], fs[c]) != std::strong_ordering::greater);
        }
      }
    }
  }
}

TEST_CASE("weighted_score on the named cases") {
  const WordCountVector half = wordcount::word_count_vector(wordcount::all_j(kHalfFraction));
  CHECK(wordcount::weighted_score(half, CriterionWeights{{0, 0, 1}}) == 1.0L);

  std::vector<std::uint32_t> rows;
  for (std::uint32_t t = 0; t < 8; ++t) rows.push_back(t);
  const WordCountVector full3 =
      wordcount::word_count_vector(wordcount::all_j(Design(3, std::move(rows))));
  CHECK(wordcount::weighted_score(full3, CriterionWeights{{1, 0, 0}}) == 0.0L);
}

TEST_CASE("weighted_score rejects bad weights") {
  const WordCountVector half = wordcount::word_count_vector(wordcount::all_j(kHalfFraction));
  CHECK_THROWS_AS(wordcount::weighted_score(half, CriterionWeights{{1, 1}}),
                  wordcount::DimensionError);
  CHECK_THROWS_AS(wordcount::weighted_score(half, CriterionWeights{{0, 0, 0}}),
                  wordcount::DimensionError);
  CHECK_THROWS_AS(wordcount::weighted_score(half, CriterionWeights{{1, -1, 1}}),
                  wordcount::DimensionError);
}

TEST_CASE("all-ones weights collapse to the conserved constant") {
  std::mt19937_64 rng(205);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 5);
    const int N = 2 + static_cast<int>(rng() % 10);
    const Design d = wordcount::random_distinct_design(
        m, N > (1 << m) ? (1 << m) : N, rng);
    const WordCountVector w = wordcount::word_count_vector(wordcount::all_j(d));
    const CriterionWeights ones{std::vector<double>(static_cast<std::size_t>(m), 1.0)};
    const long double expect =
        wordcount::theorem_constant(m, d.run_count()).to_long_double();
    REQUIRE(wordcount::weighted_score(w, ones) == expect);
  }
}

TEST_CASE("default weights pick out orders three and four") {
  const CriterionWeights w4 = CriterionWeights::default_for(4);
  CHECK(w4.w == std::vector<double>{0, 0, 1, 1});
  const CriterionWeights w3 = CriterionWeights::default_for(3);
  CHECK(w3.w == std::vector<double>{0, 0, 1});
  const CriterionWeights w2 = CriterionWeights::default_for(2);
  CHECK(w2.w == std::vector<double>{0, 1});
}

TEST_CASE("within a fixed tail, lower b3 forces higher b4") {
  // Conservation in action: among designs of equal (m, N) that agree on every
  // order except 3 and 4, the order-3 and order-4 counts move in opposition.
  std::vector<WordCountVector> all;
  wordcount::for_each_distinct_design(4, 6, [&](const Design& d) {
    all.push_back(wordcount::word_count_vector(wordcount::all_j(d)));
  });
  long compared = 0;
  for (std::size_t i = 0; i < all.size(); i += 17) {     // sampled pairs
    for (std::size_t k = i + 1; k < all.size(); k += 13) {
      // m = 4: agreeing outside orders 3 and 4 means agreeing at 1 and 2
      if (all[i].q(1) != all[k].q(1) || all[i].q(2) != all[k].q(2)) continue;
      if (all[i].q(3) < all[k].q(3)) {
        REQUIRE(all[i].q(4) > all[k].q(4));
        ++compared;
      } else if (all[i].q(3) > all[k].q(3)) {
        REQUIRE(all[i].q(4) < all[k].q(4));
        ++compared;
      }
    }
  }
  CHECK(compared > 0);
}
