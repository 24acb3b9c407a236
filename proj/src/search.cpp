#include "wordcount/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdio>
#include <cstdlib>
#include <thread>
#include <unordered_set>

#include "wordcount/jtable.hpp"

namespace wordcount {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Lemire-style rejection; uniform on [0, bound), independent of the standard
// library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

int worker_count(int restarts) {
  int limit = 0;
  if (const char* env = std::getenv("WORDCOUNT_THREADS")) limit = std::atoi(env);
  if (limit <= 0) limit = static_cast<int>(std::thread::hardware_concurrency());
  if (limit <= 0) limit = 1;
  return std::min(limit, restarts);
}

}  // namespace

std::string objective_name(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::g2: return "g2";
    case ObjectiveKind::g: return "g";
    case ObjectiveKind::weighted: return "weighted";
    case ObjectiveKind::maximize_high: return "maximize_high";
  }
  return "unknown";
}

ObjectiveKind objective_from_name(const std::string& name) {
  if (name == "g2") return ObjectiveKind::g2;
  if (name == "g") return ObjectiveKind::g;
  if (name == "weighted") return ObjectiveKind::weighted;
  if (name == "maximize_high" || name == "maximize-high")
    return ObjectiveKind::maximize_high;
  throw ParseError("unknown objective '" + name + "'");
}

void SearchConfig::validate() const {
  if (m < 1 || m > kMaxFactors) throw DimensionError("factor count out of range");
  if (N < 1) throw DimensionError("run count must be positive");
  if (Int128(N) > (Int128{1} << m))
    throw DimensionError("infeasible: N > 2^m admits no distinct-row design");
  if (restarts < 1) throw DimensionError("restarts must be >= 1");
  if (max_passes < 1) throw DimensionError("max_passes must be >= 1");
  if (objective == ObjectiveKind::weighted) {
    if (static_cast<int>(weights.size()) != m)
      throw DimensionError("weighted objective needs one weight per factor");
    bool any = false;
    for (const double w : weights) {
      if (w < 0.0) throw DimensionError("criterion weights must be nonnegative");
      if (w > 0.0) any = true;
    }
    if (!any) throw DimensionError("criterion weights must not all be zero");
  }
  if (objective == ObjectiveKind::maximize_high && (s0 < 1 || s0 > m))
    throw DimensionError("maximize_high order s0 must be in [1, m]");
}

ObjectiveValue ObjectiveValue::exact(std::vector<Int128> key) {
  ObjectiveValue v;
  v.key_ = std::move(key);
  return v;
}

ObjectiveValue ObjectiveValue::scalar(long double value) {
  ObjectiveValue v;
  v.scalar_ = value;
  v.scalar_mode_ = true;
  return v;
}

bool ObjectiveValue::better_than(const ObjectiveValue& other) const {
  if (scalar_mode_ != other.scalar_mode_ || key_.size() != other.key_.size())
    throw DimensionError("objective values from different modes are not comparable");
  if (scalar_mode_) return scalar_ < other.scalar_;
  return std::lexicographical_compare(key_.begin(), key_.end(), other.key_.begin(),
                                      other.key_.end());
}

bool ObjectiveValue::equals(const ObjectiveValue& other) const {
  return !better_than(other) && !other.better_than(*this);
}

std::string ObjectiveValue::str() const {
  if (scalar_mode_) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12Lg", scalar_);
    return buf;
  }
  std::string out = "(";
  for (std::size_t i = 0; i < key_.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(key_[i]);
  }
  return out + ")";
}

Design random_distinct_design(int m, int N, std::mt19937_64& rng) {
  if (m < 1 || m > kMaxFactors) throw DimensionError("factor count out of range");
  const std::uint64_t grid = std::uint64_t{1} << m;
  if (N < 1 || static_cast<std::uint64_t>(N) > grid)
    throw DimensionError("infeasible: N > 2^m admits no distinct-row design");
  // Floyd sampling gives a uniform N-subset without materializing the grid
  std::unordered_set<std::uint32_t> chosen;
  std::vector<std::uint32_t> rows;
  rows.reserve(static_cast<std::size_t>(N));
  for (std::uint64_t j = grid - static_cast<std::uint64_t>(N); j < grid; ++j) {
    auto t = static_cast<std::uint32_t>(uniform_below(rng, j + 1));
    if (chosen.contains(t)) t = static_cast<std::uint32_t>(j);
    chosen.insert(t);
    rows.push_back(t);
  }
  // Floyd's insertion order is biased, so shuffle the rows
  for (std::size_t i = rows.size(); i > 1; --i)
    std::swap(rows[i - 1], rows[uniform_below(rng, i)]);
  return Design(m, std::move(rows));
}

namespace {

// Mutable search state: design rows, J table, per-order numerators, and (for
// the g objective) the |J| histogram, all updated in O(2^(m-1)) per flip.
class SearchState {
 public:
  SearchState(const Design& start, const SearchConfig& cfg)
      : cfg_(cfg),
        m_(start.factor_count()),
        n_runs_(start.run_count()),
        full_(start.full_mask()),
        half_(std::uint32_t{1} << (start.factor_count() - 1)),
        rows_(start.rows().begin(), start.rows().end()),
        row_set_(rows_.begin(), rows_.end()),
        jt_(all_j(start).values),
        q_(static_cast<std::size_t>(m_) + 1, 0),
        dq_(static_cast<std::size_t>(m_) + 1, 0),
        track_hist_(cfg.objective == ObjectiveKind::g),
        grid_bins_(n_runs_ / 2 + 1),
        positive_bins_((n_runs_ + 1) / 2) {
    for (std::uint32_t g = 1; g <= full_; ++g)
      q_[static_cast<std::size_t>(std::popcount(g))] += Int128(jt_[g]) * jt_[g];
    if (track_hist_) {
      hist_.assign(static_cast<std::size_t>(m_),
                   std::vector<std::int64_t>(static_cast<std::size_t>(grid_bins_), 0));
      for (std::uint32_t g = 1; g <= full_; ++g)
        ++hist_[static_cast<std::size_t>(std::popcount(g)) - 1][bin(jt_[g])];
      hist_scratch_ = hist_;
    }
    current_ = objective_of(q_, hist_);
  }

  const ObjectiveValue& current() const { return current_; }
  std::int64_t accepted() const { return accepted_; }
  Design design() const { return Design(m_, rows_); }

  // one full sweep over all (run, factor) positions, first improvement
  bool pass() {
    bool any = false;
    for (int h = 0; h < n_runs_; ++h) {
      for (int j = 0; j < m_; ++j) {
        const std::uint32_t flipped = rows_[static_cast<std::size_t>(h)] ^
                                      (std::uint32_t{1} << j);
        if (row_set_.contains(flipped)) continue;  // would duplicate a row
        const ObjectiveValue candidate = evaluate_flip(h, j);
        if (candidate.better_than(current_)) {
          commit_flip(h, j, candidate);
          any = true;
        }
      }
    }
    return any;
  }

 private:
  std::size_t bin(std::int64_t j_value) const {
    return static_cast<std::size_t>((n_runs_ - std::abs(j_value)) / 2);
  }

  // objective from per-order numerators (index s) and, for g, the histogram
  ObjectiveValue objective_of(const std::vector<Int128>& q,
                              const std::vector<std::vector<std::int64_t>>& hist) const {
    switch (cfg_.objective) {
      case ObjectiveKind::g2:
        return ObjectiveValue::exact({q.begin() + 1, q.end()});
      case ObjectiveKind::g: {
        std::vector<Int128> key;
        key.reserve(static_cast<std::size_t>(m_) *
                    static_cast<std::size_t>(positive_bins_));
        for (const auto& per_order : hist)
          for (int k = 0; k < positive_bins_; ++k)
            key.push_back(per_order[static_cast<std::size_t>(k)]);
        return ObjectiveValue::exact(std::move(key));
      }
      case ObjectiveKind::weighted: {
        long double acc = 0.0L;
        for (int s = 1; s <= m_; ++s)
          acc += static_cast<long double>(cfg_.weights[static_cast<std::size_t>(s - 1)]) *
                 static_cast<long double>(q[static_cast<std::size_t>(s)]);
        const long double n2 = static_cast<long double>(n_runs_) * n_runs_;
        return ObjectiveValue::scalar(acc / n2);
      }
      case ObjectiveKind::maximize_high: {
        Int128 high = 0;
        for (int s = cfg_.s0; s <= m_; ++s) high += q[static_cast<std::size_t>(s)];
        return ObjectiveValue::exact({-high});
      }
    }
    throw Error("unreachable objective kind");
  }

  ObjectiveValue evaluate_flip(int h, int j) {
    std::fill(dq_.begin(), dq_.end(), Int128{0});
    if (track_hist_) hist_scratch_ = hist_;
    const std::uint32_t minus = ~rows_[static_cast<std::size_t>(h)] & full_;
    for (std::uint32_t t = 0; t < half_; ++t) {
      const std::uint32_t g = expand_around_bit(t, j);
      const std::int64_t j_old = jt_[g];
      const std::int64_t sign = (std::popcount(g & minus) & 1) ? -1 : +1;
      const std::int64_t j_new = j_old - 2 * sign;
      const auto s = static_cast<std::size_t>(std::popcount(g));
      dq_[s] += Int128(j_new) * j_new - Int128(j_old) * j_old;
      if (track_hist_) {
        auto& per_order = hist_scratch_[s - 1];
        --per_order[bin(j_old)];
        ++per_order[bin(j_new)];
      }
    }
    std::vector<Int128> q_candidate(q_);
    for (std::size_t s = 1; s < q_candidate.size(); ++s) q_candidate[s] += dq_[s];
    return objective_of(q_candidate, hist_scratch_);
  }

  // must follow evaluate_flip(h, j): reuses dq_ and hist_scratch_
  void commit_flip(int h, int j, const ObjectiveValue& value) {
    const std::uint32_t minus = ~rows_[static_cast<std::size_t>(h)] & full_;
    for (std::uint32_t t = 0; t < half_; ++t) {
      const std::uint32_t g = expand_around_bit(t, j);
      const std::int64_t sign = (std::popcount(g & minus) & 1) ? -1 : +1;
      jt_[g] -= 2 * sign;
    }
    for (std::size_t s = 1; s < q_.size(); ++s) q_[s] += dq_[s];
    if (track_hist_) hist_.swap(hist_scratch_);
    row_set_.erase(rows_[static_cast<std::size_t>(h)]);
    rows_[static_cast<std::size_t>(h)] ^= std::uint32_t{1} << j;
    row_set_.insert(rows_[static_cast<std::size_t>(h)]);
    current_ = value;
    ++accepted_;
  }

  const SearchConfig& cfg_;
  int m_;
  int n_runs_;
  std::uint32_t full_;
  std::uint32_t half_;
  std::vector<std::uint32_t> rows_;
  std::unordered_set<std::uint32_t> row_set_;
  std::vector<std::int64_t> jt_;
  std::vector<Int128> q_;   // q_[s] for s in [1, m]; q_[0] unused
  std::vector<Int128> dq_;  // scratch for the candidate under evaluation
  bool track_hist_;
  int grid_bins_;      // |J| bins N, N-2, ..., down to 1 or 0
  int positive_bins_;  // bins with |J| > 0
  std::vector<std::vector<std::int64_t>> hist_;
  std::vector<std::vector<std::int64_t>> hist_scratch_;
  ObjectiveValue current_;
  std::int64_t accepted_ = 0;
};

}  // namespace

ObjectiveValue evaluate_objective(const SearchConfig& cfg, const WordCountVector& wcv,
                                  const ConfoundingFrequencyVector& f) {
  switch (cfg.objective) {
    case ObjectiveKind::g2:
      return ObjectiveValue::exact({wcv.numerators.begin(), wcv.numerators.end()});
    case ObjectiveKind::g: {
      std::vector<Int128> key;
      const auto flat = f.flattened();
      key.assign(flat.begin(), flat.end());
      return ObjectiveValue::exact(std::move(key));
    }
    case ObjectiveKind::weighted: {
      CriterionWeights weights;
      weights.w = cfg.weights;
      return ObjectiveValue::scalar(weighted_score(wcv, weights));
    }
    case ObjectiveKind::maximize_high: {
      Int128 high = 0;
      for (int s = cfg.s0; s <= wcv.m; ++s) high += wcv.q(s);
      return ObjectiveValue::exact({-high});
    }
  }
  throw Error("unreachable objective kind");
}

SearchResult coordinate_exchange(const Design& start, const SearchConfig& cfg) {
  cfg.validate();
  if (start.factor_count() != cfg.m || start.run_count() != cfg.N)
    throw DimensionError("start design does not match the configured dimensions");
  if (!has_distinct_rows(start))
    throw DimensionError("coordinate exchange requires a distinct-row start");

  SearchState state(start, cfg);
  int passes = 0;
  while (passes < cfg.max_passes) {
    ++passes;
    if (!state.pass()) break;  // full sweep without improvement
  }

  Design best = state.design();
  const JTable jt = all_j(best);
  const WordCountVector wcv = word_count_vector(jt);
  ConfoundingFrequencyVector f = cfv(jt);
  // incremental bookkeeping must agree with a from-scratch evaluation
  const ObjectiveValue full_eval = evaluate_objective(cfg, wcv, f);
  if (!full_eval.equals(state.current()))
    throw VerificationError("incremental objective diverged from full re-evaluation");
  ConservationReport conservation = check_conservation(best, wcv);

  return SearchResult{std::move(best), full_eval,       wcv,      std::move(f),
                      passes,          state.accepted(), 0,        cfg.seed,
                      std::move(conservation)};
}

SearchResult multi_start(const SearchConfig& cfg) {
  cfg.validate();

  auto run_restart = [&cfg](int r) {
    std::mt19937_64 rng(splitmix64(cfg.seed + static_cast<std::uint64_t>(r)));
    const Design start = random_distinct_design(cfg.m, cfg.N, rng);
    SearchResult result = coordinate_exchange(start, cfg);
    result.winner_restart = r;
    return result;
  };

  std::vector<std::optional<SearchResult>> outcomes(
      static_cast<std::size_t>(cfg.restarts));
  const int threads = worker_count(cfg.restarts);
  if (threads <= 1) {
    for (int r = 0; r < cfg.restarts; ++r)
      outcomes[static_cast<std::size_t>(r)] = run_restart(r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(cfg.restarts));
    auto worker = [&]() {
      for (;;) {
        const int r = next.fetch_add(1);
        if (r >= cfg.restarts) return;
        try {
          outcomes[static_cast<std::size_t>(r)] = run_restart(r);
        } catch (...) {
          errors[static_cast<std::size_t>(r)] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (const auto& err : errors)
      if (err) std::rethrow_exception(err);
  }

  // aggregate in restart order: better objective wins, then lower CFV,
  // then the earlier restart
  std::optional<SearchResult> best;
  for (auto& outcome : outcomes) {
    if (!best) {
      best = std::move(outcome);
      continue;
    }
    const bool wins =
        outcome->objective.better_than(best->objective) ||
        (outcome->objective.equals(best->objective) &&
         compare_g(outcome->cfv, best->cfv) == std::strong_ordering::less);
    if (wins) best = std::move(outcome);
  }

  if (!best->conservation.matches)
    throw VerificationError("search winner failed its conservation check");
  return std::move(*best);
}

}  // namespace wordcount
