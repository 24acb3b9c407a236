// wordcount: evaluate, verify, search, and oracle-check two-level designs.
//
// Exit codes: 0 success, 1 verification or search assertion failure,
// 2 input/parse error, 3 dimension error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wordcount/design.hpp"
#include "wordcount/report.hpp"
#include "wordcount/search.hpp"

namespace {

using namespace wordcount;

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

DesignFormat format_from_name(const std::string& name) {
  if (name == "pm1") return DesignFormat::pm1;
  if (name == "zero_one") return DesignFormat::zero_one;
  throw ParseError("unknown design format: " + name);
}

Design load_input(const std::string& path, DesignFormat format) {
  if (path == "-") return load_design(std::cin, format);
  return load_design_file(path, format);
}

std::vector<double> parse_weights(const std::string& text) {
  std::string cleaned = text;
  for (char& c : cleaned) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(cleaned);
  std::vector<double> out;
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw ParseError("bad weight value: " + token);
    }
  }
  if (out.empty()) throw ParseError("empty weight list");
  return out;
}

void emit(const Json& report, bool as_json, const std::string& rendered) {
  if (as_json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << rendered;
  }
}

struct EvaluateArgs {
  std::string input = "-";
  std::string format = "pm1";
  std::string weights;
  bool json = false;
};

int run_evaluate(const EvaluateArgs& args) {
  Stopwatch timer;
  const Design d = load_input(args.input, format_from_name(args.format));
  std::optional<CriterionWeights> weights;
  if (!args.weights.empty()) weights = CriterionWeights{parse_weights(args.weights)};
  EvaluateReport report = make_evaluate_report(d, weights);
  report.json["input"] = args.input;
  report.json["timing_ms"] = timer.ms();
  emit(report.json, args.json, render_evaluate(report.json));
  return 0;
}

struct VerifyArgs {
  std::string input;
  std::string format = "pm1";
  int m = 0;
  int N = 0;
  int samples = 100;
  std::uint64_t seed = 0;
  bool json = false;
};

int run_verify(const VerifyArgs& args) {
  Stopwatch timer;
  if (!args.input.empty()) {
    // single design: emit its conservation report directly
    const Design d = load_input(args.input, format_from_name(args.format));
    const ConservationReport r = check_conservation(d);
    Json report = conservation_to_json(r);
    if (args.json) {
      std::cout << report.dump(2) << "\n";
    } else {
      std::ostringstream os;
      os << "m = " << r.m << ", N = " << r.N << ", sum b_s = " << r.sum_b.str()
         << ", constant = " << r.candidate_constant.str() << ", distinct rows: "
         << (r.distinct_rows ? "yes" : "no") << "\n"
         << (r.matches ? "PASS" : "FAIL") << "\n";
      std::cout << os.str();
    }
    return r.matches ? 0 : 1;
  }
  if (args.m < 1 || args.N < 1) {
    throw ParseError("verify needs either --input or both -m and -N");
  }
  VerifyReport report = make_verify_report(args.m, args.N, args.samples, args.seed);
  report.json["timing_ms"] = timer.ms();
  emit(report.json, args.json, render_verify(report.json));
  return report.all_match ? 0 : 1;
}

struct SearchArgs {
  std::string config;
  int m = 0;
  int N = 0;
  std::string objective = "g2";
  std::string weights;
  int s0 = 0;
  int restarts = 1;
  int max_passes = 200;
  std::uint64_t seed = 0;
  std::string out;
  bool json = false;
};

SearchConfig build_search_config(const SearchArgs& args, const CLI::App& cmd) {
  SearchConfig cfg;
  if (!args.config.empty()) {
    std::ifstream in(args.config);
    if (!in) throw ParseError("cannot open config file: " + args.config);
    Json doc = Json::parse(in);
    if (doc.contains("m")) cfg.m = doc.at("m").get<int>();
    if (doc.contains("N")) cfg.N = doc.at("N").get<int>();
    if (doc.contains("objective"))
      cfg.objective = objective_from_name(doc.at("objective").get<std::string>());
    if (doc.contains("weights")) cfg.weights = doc.at("weights").get<std::vector<double>>();
    if (doc.contains("s0")) cfg.s0 = doc.at("s0").get<int>();
    if (doc.contains("restarts")) cfg.restarts = doc.at("restarts").get<int>();
    if (doc.contains("max_passes")) cfg.max_passes = doc.at("max_passes").get<int>();
    if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
  }
  // flags fill everything when there is no config file, and override
  // individual fields of one when passed explicitly
  const bool have_config = !args.config.empty();
  const auto flag_applies = [&](const char* name) {
    return !have_config || cmd.count(name) > 0;
  };
  if (flag_applies("-m")) cfg.m = args.m;
  if (flag_applies("-N")) cfg.N = args.N;
  if (flag_applies("--objective")) cfg.objective = objective_from_name(args.objective);
  if (cmd.count("--weights") > 0) cfg.weights = parse_weights(args.weights);
  if (flag_applies("--s0")) cfg.s0 = args.s0;
  if (flag_applies("--restarts")) cfg.restarts = args.restarts;
  if (flag_applies("--max-passes")) cfg.max_passes = args.max_passes;
  if (flag_applies("--seed")) cfg.seed = args.seed;
  if (cfg.objective == ObjectiveKind::weighted && cfg.weights.empty() && cfg.m > 0) {
    cfg.weights = CriterionWeights::default_for(cfg.m).w;
  }
  return cfg;
}

int run_search(const SearchArgs& args, const CLI::App& cmd) {
  Stopwatch timer;
  SearchConfig cfg = build_search_config(args, cmd);
  cfg.validate();
  const SearchResult result = multi_start(cfg);
  Json report = make_search_report(cfg, result);
  report["timing_ms"] = timer.ms();
  if (!args.out.empty()) {
    std::ofstream out(args.out);
    if (!out) throw ParseError("cannot open output file: " + args.out);
    out << save_design(result.design);
  }
  emit(report, args.json, render_search(report));
  return 0;
}

struct OracleArgs {
  std::uint64_t seed = 0;
  bool json = false;
};

int run_oracle(const OracleArgs& args) {
  Stopwatch timer;
  OracleReport report = make_oracle_report(args.seed);
  report.json["timing_ms"] = timer.ms();
  emit(report.json, args.json, render_oracle(report.json));
  return report.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"word counts, aberration criteria, and conservation checks for "
               "two-level designs"};
  app.require_subcommand(1);
  const auto format_check = CLI::IsMember({"pm1", "zero_one"});

  EvaluateArgs eval_args;
  CLI::App* eval = app.add_subcommand(
      "evaluate", "word counts, frequency vector, and conserved total of a design");
  eval->add_option("input", eval_args.input, "design file, or - for stdin")
      ->capture_default_str();
  eval->add_option("--format", eval_args.format, "input token format")
      ->check(format_check)->capture_default_str();
  eval->add_option("--weights", eval_args.weights,
                   "comma-separated weights; adds a weighted score to the report");
  eval->add_flag("--json", eval_args.json, "machine-readable output");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand(
      "verify", "check that sum b_s equals (2^m - N)/N across distinct-row designs");
  verify->add_option("--input", verify_args.input, "verify one design file");
  verify->add_option("--format", verify_args.format, "input token format")
      ->check(format_check)->capture_default_str();
  verify->add_option("-m,--factors", verify_args.m, "factor count for the sweep");
  verify->add_option("-N,--runs", verify_args.N, "run count for the sweep");
  verify->add_option("--samples", verify_args.samples,
                     "sweep size; exhaustive when C(2^m, N) fits inside it")
      ->capture_default_str();
  verify->add_option("--seed", verify_args.seed, "sampling seed")->capture_default_str();
  verify->add_flag("--json", verify_args.json, "machine-readable output");

  SearchArgs search_args;
  CLI::App* search = app.add_subcommand(
      "search", "coordinate-exchange search for a low-criterion design");
  search->add_option("--config", search_args.config,
                     "JSON config; explicit flags override its fields");
  search->add_option("-m,--factors", search_args.m, "factor count");
  search->add_option("-N,--runs", search_args.N, "run count");
  search->add_option("--objective", search_args.objective,
                     "g2 | g | weighted | maximize_high")
      ->capture_default_str();
  search->add_option("--weights", search_args.weights,
                     "comma-separated weights for the weighted objective");
  search->add_option("--s0", search_args.s0,
                     "lowest order pushed up by maximize_high");
  search->add_option("--restarts", search_args.restarts, "independent restarts")
      ->capture_default_str();
  search->add_option("--max-passes", search_args.max_passes,
                     "pass limit per restart")->capture_default_str();
  search->add_option("--seed", search_args.seed, "search seed")->capture_default_str();
  search->add_option("--out", search_args.out, "write the winner design to a file");
  search->add_flag("--json", search_args.json, "machine-readable output");

  OracleArgs oracle_args;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "run the identity and brute-force cross-checks");
  oracle->add_option("--seed", oracle_args.seed, "sampling seed")->capture_default_str();
  oracle->add_flag("--json", oracle_args.json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval->parsed()) return run_evaluate(eval_args);
    if (verify->parsed()) return run_verify(verify_args);
    if (search->parsed()) return run_search(search_args, *search);
    if (oracle->parsed()) return run_oracle(oracle_args);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const VerificationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
