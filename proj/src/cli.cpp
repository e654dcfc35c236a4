#include "vproblog/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "vproblog/error.hpp"
#include "vproblog/magic.hpp"
#include "vproblog/oracle.hpp"
#include "vproblog/parser.hpp"
#include "vproblog/smokers.hpp"

namespace vpl {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Budget parse_budget(const std::string& s) {
  if (s == "inf" || s == "infinity") return kUnbounded;
  std::size_t used = 0;
  unsigned long long n = 0;
  try {
    n = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || s[0] == '-')
    throw Error(ErrorCode::InvalidArgument, "--iterations expects a natural number or 'inf', got " + s);
  return static_cast<std::size_t>(n);
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string short_prob(double p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", p);
  return buf;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax:
    case ErrorCode::NonGroundFact:
    case ErrorCode::ProbabilityRange:
    case ErrorCode::RangeRestriction:
    case ErrorCode::PredicateOverlap:
    case ErrorCode::ArityConflict:
      return kExitParse;
    case ErrorCode::NodeLimit:
      return kExitBlowUp;
    case ErrorCode::CapExceeded:
      return kExitCapExceeded;
    case ErrorCode::UnknownPredicate:
      return kExitUnknownPredicate;
    default:
      return kExitFailure;
  }
}

struct SolveArgs {
  std::string file;
  std::string query;
  std::string mode = "magic-opt";
  std::string iterations = "inf";
  std::string format = "tsv";
  std::size_t node_limit = 0;
  bool stats = false;
};

int run_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  auto mode = parse_solve_mode(args.mode);
  if (!mode) throw Error(ErrorCode::InvalidArgument, "unknown mode " + args.mode);

  auto t = std::chrono::steady_clock::now();
  std::string text = read_file(args.file);
  ProbProgram program = parse_program(text);
  Atom query = parse_query(args.query);
  double parse_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t).count();

  SolveOptions options;
  options.mode = *mode;
  options.iterations = parse_budget(args.iterations);
  options.node_limit = args.node_limit;
  SolveReport report = solve(program, query, options);
  report.timings.parse_ms = parse_ms;

  if (args.format == "json") {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& a : report.answers) {
      rows.push_back({{"atom", a.text},
                      {"probability", a.probability},
                      {"bound", to_string(a.bound)},
                      {"iterations", a.iterations},
                      {"mat_ms", report.timings.materialize_ms},
                      {"wmc_ms", report.timings.wmc_ms},
                      {"dd_nodes", a.dd_nodes}});
    }
    out << rows.dump(2) << "\n";
  } else {
    for (const auto& a : report.answers) {
      out << a.text << '\t' << short_prob(a.probability) << '\t' << to_string(a.bound) << '\t'
          << a.iterations << '\t' << fixed(report.timings.materialize_ms, 3) << '\t'
          << fixed(report.timings.wmc_ms, 3) << '\n';
    }
  }

  if (args.stats) {
    err << "mode\t" << to_string(*mode) << '\n'
        << "converged\t" << (report.converged ? "true" : "false") << '\n'
        << "iterations\t" << report.iterations << '\n'
        << "entries\t" << report.entries << '\n'
        << "magic_entries\t" << report.magic_entries << '\n'
        << "dd_nodes\t" << report.dd_nodes << '\n'
        << "parse_ms\t" << fixed(report.timings.parse_ms, 3) << '\n'
        << "transform_ms\t" << fixed(report.timings.transform_ms, 3) << '\n'
        << "materialize_ms\t" << fixed(report.timings.materialize_ms, 3) << '\n'
        << "wmc_ms\t" << fixed(report.timings.wmc_ms, 3) << '\n';
  }
  return kExitOk;
}

int run_oracle(const std::string& file, const std::string& query_text, std::size_t cap,
               std::ostream& out) {
  ProbProgram program = parse_program(read_file(file));
  Atom query = parse_query(query_text);
  if (!program.has_predicate(query.predicate))
    throw Error(ErrorCode::UnknownPredicate, "unknown predicate " + query.predicate);
  oracle::Options options{cap};
  if (query.is_ground()) {
    out << short_prob(oracle::enumerate_prob(program, query, options)) << '\n';
    return kExitOk;
  }
  for (const auto& [atom, p] : oracle::enumerate_all(program, options))
    if (match_atom(query, atom, {})) out << atom.to_string() << '\t' << short_prob(p) << '\n';
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probabilistic logic program inference by semi-naive and magic-sets evaluation", "vproblog"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Compute query probabilities or lower bounds");
  solve_cmd->add_option("file", solve_args.file, "Program file")->required();
  solve_cmd->add_option("--query,-q", solve_args.query, "Query atom, e.g. path(a,c) or asthma(_)")->required();
  solve_cmd->add_option("--mode", solve_args.mode, "naive | seminaive | magic-plain | magic-opt")
      ->check(CLI::IsMember({"naive", "seminaive", "magic-plain", "magic-opt"}));
  solve_cmd->add_option("--iterations,-d", solve_args.iterations, "Iteration budget N or inf");
  solve_cmd->add_option("--format", solve_args.format, "json | tsv")->check(CLI::IsMember({"json", "tsv"}));
  solve_cmd->add_option("--node-limit", solve_args.node_limit, "Decision-diagram node ceiling (0 = none)");
  solve_cmd->add_flag("--stats", solve_args.stats, "Print materialization statistics to stderr");

  std::string oracle_file, oracle_query;
  std::size_t oracle_cap = 20;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact probability by enumerating total choices");
  oracle_cmd->add_option("file", oracle_file, "Program file")->required();
  oracle_cmd->add_option("--query,-q", oracle_query, "Query atom")->required();
  oracle_cmd->add_option("--cap", oracle_cap, "Maximum number of uncertain facts");

  std::string magic_file, magic_query;
  auto* magic_cmd = app.add_subcommand("magic", "Print the magic-sets rewriting of a program");
  magic_cmd->add_option("file", magic_file, "Program file")->required();
  magic_cmd->add_option("--query,-q", magic_query, "Query atom")->required();

  SmokersConfig smokers;
  auto* gen_cmd = app.add_subcommand("gen-smokers", "Generate a smokers benchmark program");
  gen_cmd->add_option("--n", smokers.persons, "Number of persons")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", smokers.seed, "Random seed");
  gen_cmd->add_option("--p-stress", smokers.p_stress, "Probability of stress facts")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--p-influences", smokers.p_influences, "Probability of influence facts")
      ->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--p-susceptible", smokers.p_susceptible, "Probability of susceptibility facts")
      ->check(CLI::Range(0.0, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string* source = nullptr;
  try {
    if (solve_cmd->parsed()) {
      source = &solve_args.file;
      return run_solve(solve_args, out, err);
    }
    if (oracle_cmd->parsed()) {
      source = &oracle_file;
      return run_oracle(oracle_file, oracle_query, oracle_cap, out);
    }
    if (magic_cmd->parsed()) {
      source = &magic_file;
      ProbProgram program = parse_program(read_file(magic_file));
      Atom query = parse_query(magic_query);
      out << magic_transform(program.rules(), query).to_string();
      return kExitOk;
    }
    if (gen_cmd->parsed()) {
      out << generate_smokers(smokers);
      return kExitOk;
    }
  } catch (const ParseError& e) {
    err << (source ? *source + ":" : std::string()) << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kExitUsage;
}

}  // namespace vpl
