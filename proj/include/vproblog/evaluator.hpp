#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "vproblog/context.hpp"
#include "vproblog/interpretation.hpp"

namespace vpl {

// Iteration budget; nullopt means run to the fixpoint.
using Budget = std::optional<std::size_t>;
inline constexpr Budget kUnbounded = std::nullopt;

// One grounding of a rule whose body atoms all have formulas: the ground head
// and the conjunction of the body formulas.
struct BodyMatch {
  AtomId head;
  FormulaRef conj;
};

struct DeltaEntry {
  AtomId atom;
  FormulaRef formula;
};

struct FixpointResult {
  ParamInterp interp;
  bool converged = false;
  // Operator applications performed, including a final confirming one.
  std::size_t iterations = 0;
  // Applications that changed the interpretation.
  std::size_t productive = 0;
};

// Called with the iteration number and the interpretation after it.
using IterationObserver = std::function<void(std::size_t, const ParamInterp&)>;

struct EvalOptions {
  // Predicates treated as guards by the magic-sets machinery.
  std::set<std::string> magic_predicates;
  // Store guard atoms as TRUE the first time they are derived and never
  // compile a formula for them.
  bool magic_top = false;
  // Crisp atoms present from the start with formula TRUE.
  std::vector<Atom> seeds;
};

struct StratumResult {
  std::size_t rounds = 0;
  bool converged = false;
};

// Forward evaluation of a rule set over the facts of a Context. Holds the
// compiled rules; all state lives in the ParamInterp values it is handed.
class Evaluator {
 public:
  Evaluator(Context& ctx, const std::vector<Rule>& rules, EvalOptions options = {});

  Context& context() { return *ctx_; }
  std::size_t rule_count() const { return rules_.size(); }

  ParamInterp empty() const { return ParamInterp(ctx_->atoms()); }
  // Every fact mapped to its variable, every seed to TRUE.
  ParamInterp initial() const;

  bool is_magic_predicate(PredId pred) const;
  bool is_magic_atom(AtomId atom) const { return is_magic_predicate(ctx_->atoms().predicate(atom)); }

  // Matches of all rules against I, computed by indexed joins.
  std::vector<BodyMatch> b_set(const ParamInterp& interp);
  // Matches with at least one body atom in delta.
  std::vector<BodyMatch> d_set(const ParamInterp& interp, std::span<const AtomId> delta);

  // One naive application of the immediate-consequence operator.
  ParamInterp tcp_step(const ParamInterp& interp);
  // Changed formulas for derived atoms given the atoms that changed last.
  std::vector<DeltaEntry> delta_tcp(const ParamInterp& interp, std::span<const AtomId> delta);
  // I := delta U (I minus superseded entries); also records the new delta.
  static void apply_delta(ParamInterp& interp, const std::vector<DeltaEntry>& delta);

  FixpointResult naive_fixpoint(Budget max_iters, const IterationObserver& observe = {});
  FixpointResult scp_fixpoint(Budget max_iters, const IterationObserver& observe = {});

  // Semi-naive rounds restricted to a subset of the rules, starting with every
  // current entry counted as fresh. Used for stratified execution.
  StratumResult run_stratum(ParamInterp& interp, std::span<const std::size_t> rule_indices,
                            Budget max_rounds, const IterationObserver& observe = {},
                            std::size_t round_offset = 0);

  // Number of and/or results built for guard atoms that were not constant.
  std::size_t magic_formula_builds() const { return magic_formula_builds_; }

 private:
  std::vector<BodyMatch> matches(const ParamInterp& interp, std::span<const std::size_t> rules,
                                 std::span<const AtomId> delta, bool delta_mode);
  std::vector<DeltaEntry> delta_tcp(const ParamInterp& interp, std::span<const std::size_t> rules,
                                    std::span<const AtomId> delta);

  Context* ctx_;
  std::vector<CompiledRule> rules_;
  std::vector<std::size_t> all_rules_;
  std::vector<bool> magic_;  // by PredId
  bool magic_top_;
  std::vector<AtomId> seeds_;
  std::size_t magic_formula_builds_ = 0;
};

}  // namespace vpl
