#pragma once

// Report assembly for the CLI: JSON documents (rationals as exact "p/q"
// strings) and the matching human-readable renderings. Kept out of the tool
// binary so the schemas stay unit-testable.

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "wordcount/criteria.hpp"
#include "wordcount/search.hpp"
#include "wordcount/theorem.hpp"

namespace wordcount {

using Json = nlohmann::json;

Json conservation_to_json(const ConservationReport& report);
Json cfv_to_json(const ConfoundingFrequencyVector& f);

struct EvaluateReport {
  Json json;
  bool distinct_rows = false;
};

EvaluateReport make_evaluate_report(const Design& d,
                                    const std::optional<CriterionWeights>& weights);

struct VerifyReport {
  Json json;
  bool all_match = false;
};

// Conservation sweep across distinct-row designs of the given shape:
// exhaustive over all C(2^m, N) supports when that count is at most
// `samples`, otherwise `samples` random draws.
VerifyReport make_verify_report(int m, int N, int samples, std::uint64_t seed);

struct OracleReport {
  Json json;
  bool all_pass = false;
};

// Row-sum and factor-sum identities, the conserved-constant formula, the
// brute-force/transform equivalence, and exchange conservation, each as a
// named pass/fail check.
OracleReport make_oracle_report(std::uint64_t seed);

Json make_search_report(const SearchConfig& cfg, const SearchResult& result);

// Human-readable renderings of the same content.
std::string render_evaluate(const Json& report);
std::string render_verify(const Json& report);
std::string render_oracle(const Json& report);
std::string render_search(const Json& report);

}  // namespace wordcount
