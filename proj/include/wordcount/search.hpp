#pragma once

// Coordinate-exchange search over distinct-row designs. Candidate moves flip
// one entry; each is scored through the 2^(m-1) J values that contain the
// flipped factor, so a candidate costs O(2^(m-1)) instead of a full table
// rebuild. Flips that would duplicate a row are skipped, which keeps every
// visited design inside the regime where the word-count total is conserved.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wordcount/criteria.hpp"
#include "wordcount/design.hpp"
#include "wordcount/theorem.hpp"

namespace wordcount {

enum class ObjectiveKind {
  g2,            // minimize (b_1, ..., b_m) lexicographically
  g,             // minimize the confounding frequency vector lexicographically
  weighted,      // minimize sum of w_s * b_s
  maximize_high, // maximize sum of b_s for s >= s0
};

std::string objective_name(ObjectiveKind kind);
ObjectiveKind objective_from_name(const std::string& name);

struct SearchConfig {
  int m = 0;
  int N = 0;
  ObjectiveKind objective = ObjectiveKind::g2;
  std::vector<double> weights;  // weighted mode; length m
  int s0 = 0;                   // maximize_high mode; 1 <= s0 <= m
  int restarts = 1;
  int max_passes = 200;
  std::uint64_t seed = 0;

  void validate() const;
};

// Totally ordered objective value; smaller is better in every mode. Exact
// integer keys for g2 / g / maximize_high, long double for weighted.
class ObjectiveValue {
 public:
  static ObjectiveValue exact(std::vector<Int128> key);
  static ObjectiveValue scalar(long double value);

  bool better_than(const ObjectiveValue& other) const;
  bool equals(const ObjectiveValue& other) const;

  // printable form for reports
  std::string str() const;
  const std::vector<Int128>& key() const { return key_; }
  bool is_scalar() const { return scalar_mode_; }
  long double scalar_value() const { return scalar_; }

 private:
  std::vector<Int128> key_;
  long double scalar_ = 0.0L;
  bool scalar_mode_ = false;
};

struct SearchResult {
  Design design;
  ObjectiveValue objective;
  WordCountVector wcv;
  ConfoundingFrequencyVector cfv;
  int passes = 0;
  std::int64_t accepted_flips = 0;
  int winner_restart = 0;
  std::uint64_t seed = 0;
  ConservationReport conservation;
};

// N distinct treatments drawn uniformly without replacement from the 2^m
// grid (Floyd sampling), then shuffled into random row order.
Design random_distinct_design(int m, int N, std::mt19937_64& rng);

// First-improvement passes over all (run, factor) positions until a full
// pass yields no strictly improving flip or max_passes is reached.
// Deterministic given the start design and config.
SearchResult coordinate_exchange(const Design& start, const SearchConfig& cfg);

// Independent restarts from random starts; best result wins, ties broken by
// the confounding frequency vector and then by restart index. Restarts may
// run on worker threads (WORDCOUNT_THREADS caps them) with a deterministic
// per-restart RNG stream, so the result does not depend on scheduling.
SearchResult multi_start(const SearchConfig& cfg);

// Objective value of an evaluated design under cfg; reused by reports.
ObjectiveValue evaluate_objective(const SearchConfig& cfg, const WordCountVector& wcv,
                                  const ConfoundingFrequencyVector& f);

}  // namespace wordcount
