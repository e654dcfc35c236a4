#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vproblog/context.hpp"
#include "vproblog/evaluator.hpp"
#include "vproblog/logic.hpp"

namespace vpl {

// b/f string, one letter per argument position.
using Adornment = std::string;

// Position j is 'b' iff every variable of the j-th term is in bound_vars
// (constants are always bound).
Adornment adorn(const Atom& a, const std::set<std::string>& bound_vars);

// Rules of the magic transform plus the bookkeeping needed to evaluate it.
struct MagicProgram {
  std::vector<Rule> rules;
  // Ground 0-ary guard that starts the evaluation.
  Atom seed;
  // 0-ary goal atom whose single rule is `goal :- q`.
  Atom query_goal;
  Atom query;
  std::set<std::string> magic_predicates;

  bool is_magic(const std::string& predicate) const { return magic_predicates.contains(predicate); }
  // Surface syntax: the seed as a crisp fact followed by the rules.
  std::string to_string() const;
};

// Magic-sets rewriting of `rules` for query q. q is wrapped as `goal :- q`
// with a fresh 0-ary goal so that constants in q feed the adornments.
MagicProgram magic_transform(const std::vector<Rule>& rules, const Atom& query);

struct RulePartition {
  // Bodies read only predicates no rule defines (facts and the seed).
  std::vector<std::size_t> r1;
  // Everything else that does not depend on a recursive predicate.
  std::vector<std::size_t> r2;
  // Rules whose head is in, or depends on, a cycle of the dependency graph.
  std::vector<std::size_t> r3;
};

RulePartition partition_rules(const std::vector<Rule>& rules);
inline RulePartition partition_rules(const MagicProgram& mp) { return partition_rules(mp.rules); }

struct MagicFixpoint {
  ParamInterp interp;
  bool converged = false;
  // Rounds spent on the recursive stratum.
  std::size_t iterations = 0;
  std::size_t magic_formula_builds = 0;
};

// Stratified semi-naive evaluation of a magic program: R1 and R2 to their
// fixpoint, then up to `d` rounds of R3. With opt set, guard atoms are given
// TRUE instead of a compiled formula.
MagicFixpoint mcp_fixpoint(const MagicProgram& mp, Context& ctx, Budget d, bool opt,
                           const IterationObserver& observe = {});

enum class SolveMode { Naive, SemiNaive, MagicPlain, MagicOpt };

const char* to_string(SolveMode mode);
std::optional<SolveMode> parse_solve_mode(const std::string& s);

enum class BoundKind { Exact, Lower };

const char* to_string(BoundKind kind);

struct Timings {
  double parse_ms = 0.0;
  double transform_ms = 0.0;
  double materialize_ms = 0.0;
  double wmc_ms = 0.0;
};

struct Answer {
  Atom atom;
  std::string text;
  double probability = 0.0;
  BoundKind bound = BoundKind::Exact;
  std::size_t iterations = 0;
  std::size_t dd_nodes = 0;
};

struct SolveReport {
  std::vector<Answer> answers;
  Timings timings;
  bool converged = false;
  std::size_t iterations = 0;
  // Entries in the final interpretation, split by guard / non-guard atoms.
  std::size_t entries = 0;
  std::size_t magic_entries = 0;
  std::size_t dd_nodes = 0;
};

struct SolveOptions {
  SolveMode mode = SolveMode::MagicOpt;
  Budget iterations = kUnbounded;
  std::size_t node_limit = FormulaManager::kUnlimited;
};

// Runs the selected pipeline and reports the probability (or lower bound) of
// every ground instance of q that received a formula. A ground q without a
// formula is reported with probability 0.
SolveReport solve(const ProbProgram& program, const Atom& query, const SolveOptions& options = {});

}  // namespace vpl
