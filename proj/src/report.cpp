#include "wordcount/report.hpp"

#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wordcount/design.hpp"
#include "wordcount/int128.hpp"
#include "wordcount/jtable.hpp"
#include "wordcount/rational.hpp"
#include "wordcount/word_counts.hpp"

namespace wordcount {
namespace {

std::string format_long_double(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12Lg", v);
  return std::string(buf);
}

Json word_counts_to_json(const WordCountVector& wcv) {
  Json b = Json::array();
  Json b_decimal = Json::array();
  Json q = Json::array();
  for (int s = 1; s <= wcv.m; ++s) {
    b.push_back(wcv.b(s).str());
    b_decimal.push_back(static_cast<double>(wcv.b_decimal(s)));
    q.push_back(to_string(wcv.q(s)));
  }
  Json out;
  out["b"] = std::move(b);
  out["b_decimal"] = std::move(b_decimal);
  out["q"] = std::move(q);
  out["sum_b"] = wcv.sum().str();
  return out;
}

Json design_rows_to_json(const Design& d) {
  Json rows = Json::array();
  for (int h = 0; h < d.run_count(); ++h) {
    Json row = Json::array();
    for (int j = 0; j < d.factor_count(); ++j) row.push_back(d.level(h, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Json conservation_to_json(const ConservationReport& report) {
  Json out;
  out["m"] = report.m;
  out["N"] = report.N;
  out["sum_b"] = report.sum_b.str();
  out["constant"] = report.candidate_constant.str();
  out["distinct_rows"] = report.distinct_rows;
  out["matches"] = report.matches;
  return out;
}

Json cfv_to_json(const ConfoundingFrequencyVector& f) {
  Json out;
  out["magnitudes"] = f.magnitudes();
  Json orders = Json::array();
  for (int s = 1; s <= f.factor_count(); ++s) {
    Json entry;
    entry["s"] = s;
    entry["counts"] = f.order_counts(s);
    entry["zero_count"] = f.zero_count(s);
    orders.push_back(std::move(entry));
  }
  out["orders"] = std::move(orders);
  return out;
}

EvaluateReport make_evaluate_report(const Design& d,
                                    const std::optional<CriterionWeights>& weights) {
  const JTable jt = all_j(d);
  const WordCountVector wcv = word_count_vector(jt);
  const ConfoundingFrequencyVector f = cfv(jt);
  const ConservationReport conservation = check_conservation(d, wcv);

  Json out = word_counts_to_json(wcv);
  out["command"] = "evaluate";
  out["m"] = d.factor_count();
  out["N"] = d.run_count();
  out["distinct_rows"] = conservation.distinct_rows;
  out["conservation"] = conservation_to_json(conservation);
  out["cfv"] = cfv_to_json(f);
  if (weights) {
    out["weights"] = weights->w;
    out["weighted_score"] = static_cast<double>(weighted_score(wcv, *weights));
  }
  return EvaluateReport{std::move(out), conservation.distinct_rows};
}

VerifyReport make_verify_report(int m, int N, int samples, std::uint64_t seed) {
  if (samples < 1) throw DimensionError("verify: samples must be positive");
  const Rational constant = theorem_constant(m, N);
  const Int128 total = count_distinct_designs(m, N, Int128(samples) + 1);
  const bool exhaustive = total <= Int128(samples);

  std::int64_t checked = 0;
  std::int64_t matched = 0;
  Json first_failure;  // null until a mismatch shows up
  auto check_one = [&](const Design& d) {
    const ConservationReport r = check_conservation(d);
    ++checked;
    if (r.matches) {
      ++matched;
    } else if (first_failure.is_null()) {
      first_failure = Json{{"design", save_design(d)}, {"sum_b", r.sum_b.str()}};
    }
  };

  if (exhaustive) {
    for_each_distinct_design(m, N, check_one);
  } else {
    std::mt19937_64 rng(seed);
    for (int i = 0; i < samples; ++i) check_one(random_distinct_design(m, N, rng));
  }

  const bool all_match = checked > 0 && matched == checked;
  Json out;
  out["command"] = "verify";
  out["m"] = m;
  out["N"] = N;
  out["constant"] = constant.str();
  out["samples"] = samples;
  out["exhaustive"] = exhaustive;
  out["seed"] = seed;
  out["designs_checked"] = checked;
  out["matched"] = matched;
  out["failures"] = checked - matched;
  out["all_match"] = all_match;
  out["first_failure"] = std::move(first_failure);
  return VerifyReport{std::move(out), all_match};
}

namespace {

bool run_row_sum_check(int max_m, Json& detail) {
  for (int m = 1; m <= max_m; ++m) {
    const std::vector<std::int64_t> sums = full_matrix_row_sums(m);
    const std::uint32_t all_plus = (std::uint32_t{1} << m) - 1;
    for (std::uint32_t t = 0; t <= all_plus; ++t) {
      const std::int64_t want = (t == all_plus) ? (std::int64_t{1} << m) - 1 : -1;
      if (sums[t] != want) {
        detail = Json{{"m", m}, {"treatment", t}, {"got", sums[t]}, {"want", want}};
        return false;
      }
    }
  }
  return true;
}

bool run_factor_sum_check(int max_m, Json& detail) {
  for (int m = 2; m <= max_m; ++m) {
    for (int i = 0; i < m; ++i) {
      const std::vector<std::int64_t> sums = factor_associated_row_sums(m, i);
      const std::uint32_t all_plus = (std::uint32_t{1} << m) - 1;
      const std::int64_t half = std::int64_t{1} << (m - 1);
      for (std::uint32_t t = 0; t <= all_plus; ++t) {
        // nonzero only when every other factor sits at +1; sign follows i
        std::int64_t want = 0;
        if ((t | (std::uint32_t{1} << i)) == all_plus) {
          want = (t >> i & 1u) ? half : -half;
        }
        if (sums[t] != want) {
          detail = Json{{"m", m}, {"factor", i}, {"treatment", t},
                        {"got", sums[t]}, {"want", want}};
          return false;
        }
      }
    }
  }
  return true;
}

bool run_constant_formula_check(std::mt19937_64& rng, std::int64_t& cases,
                                Json& detail) {
  auto check = [&](const Design& d) {
    const ConservationReport r = check_conservation(d);
    ++cases;
    if (!r.matches) {
      detail = Json{{"m", d.factor_count()}, {"N", d.run_count()},
                    {"sum_b", r.sum_b.str()},
                    {"constant", r.candidate_constant.str()}};
      return false;
    }
    return true;
  };

  bool ok = true;
  // every distinct-row design up to m = 4 (2^(2^4) supports in total)
  for (int m = 1; m <= 4 && ok; ++m) {
    const int grid = 1 << m;
    for (int N = 1; N <= grid && ok; ++N) {
      for_each_distinct_design(m, N, [&](const Design& d) {
        if (ok) ok = check(d);
      });
    }
  }
  // sampled beyond that
  for (int m = 5; m <= 7 && ok; ++m) {
    const int grid = 1 << m;
    for (int N = 1; N <= grid && ok; N += 5) {
      for (int rep = 0; rep < 20 && ok; ++rep) {
        ok = check(random_distinct_design(m, N, rng));
      }
    }
  }
  return ok;
}

bool run_brute_force_check(std::mt19937_64& rng, std::int64_t& cases, Json& detail) {
  for (int rep = 0; rep < 200; ++rep) {
    const int m = 1 + static_cast<int>(rng() % 10);
    const int grid = 1 << m;
    const int max_n = grid < 24 ? grid : 24;
    const int N = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_n));
    const Design d = random_distinct_design(m, N, rng);
    ++cases;
    if (!(brute_force_b(d) == word_count_vector(all_j(d)))) {
      detail = Json{{"design", save_design(d)}};
      return false;
    }
  }
  return true;
}

bool run_exchange_check(std::mt19937_64& rng, std::int64_t& cases, Json& detail) {
  for (int rep = 0; rep < 500; ++rep) {
    const int m = 2 + static_cast<int>(rng() % 9);
    const int grid = 1 << m;
    const int max_n = (grid - 1) < 20 ? (grid - 1) : 20;
    const int N = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_n - 1));
    const Design d = random_distinct_design(m, N, rng);
    const int h = static_cast<int>(rng() % static_cast<unsigned>(N));
    const int j = static_cast<int>(rng() % static_cast<unsigned>(m));
    const ExchangeReport r = trace_exchange(d, h, j);
    ++cases;
    const bool want_conserved = r.distinct_before && r.distinct_after;
    const bool sum_ok = !want_conserved || (r.conserved && r.scaled_delta_sum == 0);
    const bool special_ok = !r.special_setup || r.subset_sum_identity;
    if (!sum_ok || !special_ok) {
      detail = Json{{"design", save_design(d)}, {"run", h}, {"factor", j},
                    {"sum_before", r.sum_before.str()},
                    {"sum_after", r.sum_after.str()}};
      return false;
    }
  }
  return true;
}

}  // namespace

OracleReport make_oracle_report(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Json checks = Json::array();
  bool all_pass = true;

  auto push = [&](const std::string& name, bool pass, Json extra) {
    extra["name"] = name;
    extra["pass"] = pass;
    checks.push_back(std::move(extra));
    all_pass = all_pass && pass;
  };

  {
    Json detail;
    const bool ok = run_row_sum_check(kRowSumOracleMaxFactors, detail);
    Json extra{{"max_m", kRowSumOracleMaxFactors}};
    if (!ok) extra["failure"] = std::move(detail);
    push("row_sums", ok, std::move(extra));
  }
  {
    Json detail;
    const bool ok = run_factor_sum_check(kRowSumOracleMaxFactors, detail);
    Json extra{{"max_m", kRowSumOracleMaxFactors}};
    if (!ok) extra["failure"] = std::move(detail);
    push("factor_sums", ok, std::move(extra));
  }
  {
    Json detail;
    std::int64_t cases = 0;
    const bool ok = run_constant_formula_check(rng, cases, detail);
    Json extra{{"cases", cases}};
    if (!ok) extra["failure"] = std::move(detail);
    push("constant_formula", ok, std::move(extra));
  }
  {
    Json detail;
    std::int64_t cases = 0;
    const bool ok = run_brute_force_check(rng, cases, detail);
    Json extra{{"cases", cases}};
    if (!ok) extra["failure"] = std::move(detail);
    push("brute_force_equivalence", ok, std::move(extra));
  }
  {
    Json detail;
    std::int64_t cases = 0;
    const bool ok = run_exchange_check(rng, cases, detail);
    Json extra{{"cases", cases}};
    if (!ok) extra["failure"] = std::move(detail);
    push("exchange_conservation", ok, std::move(extra));
  }

  Json out;
  out["command"] = "oracle";
  out["seed"] = seed;
  out["checks"] = std::move(checks);
  out["all_pass"] = all_pass;
  return OracleReport{std::move(out), all_pass};
}

Json make_search_report(const SearchConfig& cfg, const SearchResult& result) {
  Json out = word_counts_to_json(result.wcv);
  out["command"] = "search";
  out["m"] = cfg.m;
  out["N"] = cfg.N;
  out["objective"] = objective_name(cfg.objective);
  if (cfg.objective == ObjectiveKind::weighted) out["weights"] = cfg.weights;
  if (cfg.objective == ObjectiveKind::maximize_high) out["s0"] = cfg.s0;
  out["restarts"] = cfg.restarts;
  out["max_passes"] = cfg.max_passes;
  out["seed"] = cfg.seed;
  out["objective_value"] = result.objective.str();
  out["winner_restart"] = result.winner_restart;
  out["passes"] = result.passes;
  out["accepted_flips"] = result.accepted_flips;
  out["conservation"] = conservation_to_json(result.conservation);
  out["cfv"] = cfv_to_json(result.cfv);
  out["design"] = save_design(result.design);
  out["design_rows"] = design_rows_to_json(result.design);
  return out;
}

namespace {

void render_word_counts(std::ostringstream& os, const Json& report) {
  const auto& b = report.at("b");
  const auto& bd = report.at("b_decimal");
  const auto& q = report.at("q");
  os << "  s     q_s            b_s             decimal\n";
  for (std::size_t i = 0; i < b.size(); ++i) {
    char line[160];
    std::snprintf(line, sizeof(line), "  %-5zu %-14s %-15s %.12g\n", i + 1,
                  q[i].get<std::string>().c_str(), b[i].get<std::string>().c_str(),
                  bd[i].get<double>());
    os << line;
  }
  os << "  sum b_s = " << report.at("sum_b").get<std::string>() << "\n";
}

void render_conservation(std::ostringstream& os, const Json& c) {
  os << "conserved total: sum b_s = " << c.at("sum_b").get<std::string>()
     << ", constant (2^m - N)/N = " << c.at("constant").get<std::string>()
     << ", distinct rows: " << (c.at("distinct_rows").get<bool>() ? "yes" : "no")
     << ", matches: " << (c.at("matches").get<bool>() ? "yes" : "no") << "\n";
}

void render_cfv(std::ostringstream& os, const Json& f) {
  os << "confounding frequencies, |J| = ";
  const auto& mags = f.at("magnitudes");
  for (std::size_t i = 0; i < mags.size(); ++i) {
    if (i) os << ", ";
    os << mags[i].get<int>();
  }
  os << " (zeros after '|'):\n";
  for (const auto& entry : f.at("orders")) {
    os << "  F_" << entry.at("s").get<int>() << ":";
    for (const auto& c : entry.at("counts")) os << " " << c.get<std::int64_t>();
    os << " | " << entry.at("zero_count").get<std::int64_t>() << "\n";
  }
}

}  // namespace

std::string render_evaluate(const Json& report) {
  std::ostringstream os;
  os << "design: " << report.at("m").get<int>() << " factors, "
     << report.at("N").get<int>() << " runs, rows "
     << (report.at("distinct_rows").get<bool>() ? "distinct" : "replicated") << "\n";
  render_word_counts(os, report);
  render_conservation(os, report.at("conservation"));
  render_cfv(os, report.at("cfv"));
  if (report.contains("weighted_score")) {
    os << "weighted score:";
    for (const auto& w : report.at("weights")) os << " " << w.get<double>();
    os << " -> " << format_long_double(report.at("weighted_score").get<double>())
       << "\n";
  }
  return os.str();
}

std::string render_verify(const Json& report) {
  std::ostringstream os;
  os << "conservation sweep: m = " << report.at("m").get<int>()
     << ", N = " << report.at("N").get<int>() << "\n";
  os << "constant (2^m - N)/N = " << report.at("constant").get<std::string>() << "\n";
  if (report.at("exhaustive").get<bool>()) {
    os << "mode: exhaustive, " << report.at("designs_checked").get<std::int64_t>()
       << " designs\n";
  } else {
    os << "mode: random sample, " << report.at("designs_checked").get<std::int64_t>()
       << " designs, seed " << report.at("seed").get<std::uint64_t>() << "\n";
  }
  os << "matched: " << report.at("matched").get<std::int64_t>() << "/"
     << report.at("designs_checked").get<std::int64_t>() << "\n";
  if (!report.at("first_failure").is_null()) {
    os << "first failure (sum " << report.at("first_failure").at("sum_b").get<std::string>()
       << "):\n" << report.at("first_failure").at("design").get<std::string>();
  }
  os << (report.at("all_match").get<bool>() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string render_oracle(const Json& report) {
  std::ostringstream os;
  for (const auto& check : report.at("checks")) {
    os << check.at("name").get<std::string>() << ": "
       << (check.at("pass").get<bool>() ? "pass" : "FAIL");
    if (check.contains("max_m")) os << " (m up to " << check.at("max_m").get<int>() << ")";
    if (check.contains("cases")) os << " (" << check.at("cases").get<std::int64_t>() << " cases)";
    os << "\n";
  }
  os << (report.at("all_pass").get<bool>() ? "all checks passed" : "CHECKS FAILED")
     << "\n";
  return os.str();
}

std::string render_search(const Json& report) {
  std::ostringstream os;
  os << "search: m = " << report.at("m").get<int>() << ", N = "
     << report.at("N").get<int>() << ", objective = "
     << report.at("objective").get<std::string>() << ", restarts = "
     << report.at("restarts").get<int>() << ", seed = "
     << report.at("seed").get<std::uint64_t>() << "\n";
  os << "winner: restart " << report.at("winner_restart").get<int>() << ", "
     << report.at("passes").get<int>() << " passes, "
     << report.at("accepted_flips").get<std::int64_t>() << " accepted flips\n";
  os << "objective value: " << report.at("objective_value").get<std::string>() << "\n";
  render_word_counts(os, report);
  render_conservation(os, report.at("conservation"));
  render_cfv(os, report.at("cfv"));
  os << "design:\n" << report.at("design").get<std::string>();
  return os.str();
}

}  // namespace wordcount
