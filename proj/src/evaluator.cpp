#include "vproblog/evaluator.hpp"

#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace vpl {

namespace {

// Left-to-right nested-loop join of one rule body over an interpretation.
// Positions other than `delta_pos` probe the interpretation's hash indexes;
// the delta position (if any) scans only the fresh atoms of its predicate.
class BodyJoin {
 public:
  using Emit = std::function<void(std::span<const SymbolId> binding, std::span<const AtomId> body)>;

  BodyJoin(const CompiledRule& rule, const ParamInterp& interp, const AtomTable& atoms,
           const std::unordered_map<PredId, std::vector<AtomId>>* delta, std::size_t delta_pos)
      : rule_(rule),
        interp_(interp),
        atoms_(atoms),
        delta_(delta),
        delta_pos_(delta_pos),
        binding_(rule.num_vars, 0),
        bound_(rule.num_vars, false),
        body_(rule.body.size(), 0) {}

  void run(const Emit& emit) {
    emit_ = &emit;
    step(0);
  }

 private:
  void step(std::size_t k) {
    if (k == rule_.body.size()) {
      (*emit_)(binding_, body_);
      return;
    }
    const CompiledAtom& b = rule_.body[k];
    std::span<const AtomId> candidates;
    if (delta_ && k == delta_pos_) {
      auto it = delta_->find(b.pred);
      if (it == delta_->end()) return;
      candidates = it->second;
    } else {
      std::uint64_t mask = 0;
      std::vector<SymbolId> key;
      for (std::size_t i = 0; i < b.args.size(); ++i) {
        const Slot& s = b.args[i];
        if (!s.is_var) {
          mask |= std::uint64_t{1} << i;
          key.push_back(s.value);
        } else if (bound_[s.value]) {
          mask |= std::uint64_t{1} << i;
          key.push_back(binding_[s.value]);
        }
      }
      candidates = interp_.probe(b.pred, mask, key);
    }

    std::vector<std::uint32_t> fresh;
    for (AtomId a : candidates) {
      auto args = atoms_.args(a);
      bool ok = true;
      fresh.clear();
      for (std::size_t i = 0; i < b.args.size() && ok; ++i) {
        const Slot& s = b.args[i];
        if (!s.is_var) {
          ok = s.value == args[i];
        } else if (bound_[s.value]) {
          ok = binding_[s.value] == args[i];
        } else {
          bound_[s.value] = true;
          binding_[s.value] = args[i];
          fresh.push_back(s.value);
        }
      }
      if (ok) {
        body_[k] = a;
        step(k + 1);
      }
      for (auto v : fresh) bound_[v] = false;
    }
  }

  const CompiledRule& rule_;
  const ParamInterp& interp_;
  const AtomTable& atoms_;
  const std::unordered_map<PredId, std::vector<AtomId>>* delta_;
  std::size_t delta_pos_;
  std::vector<SymbolId> binding_;
  std::vector<bool> bound_;
  std::vector<AtomId> body_;
  const Emit* emit_ = nullptr;
};

}  // namespace

Evaluator::Evaluator(Context& ctx, const std::vector<Rule>& rules, EvalOptions options)
    : ctx_(&ctx), magic_top_(options.magic_top) {
  rules_.reserve(rules.size());
  for (const auto& r : rules) rules_.push_back(ctx.compile(r));
  all_rules_.resize(rules_.size());
  std::iota(all_rules_.begin(), all_rules_.end(), std::size_t{0});
  for (const auto& name : options.magic_predicates) {
    PredId p = ctx.predicates().intern(name);
    if (p >= magic_.size()) magic_.resize(p + 1, false);
    magic_[p] = true;
  }
  for (const auto& s : options.seeds) seeds_.push_back(ctx.intern(s));
}

bool Evaluator::is_magic_predicate(PredId pred) const { return pred < magic_.size() && magic_[pred]; }

ParamInterp Evaluator::initial() const {
  ParamInterp interp = empty();
  std::vector<AtomId> delta;
  auto& fm = ctx_->formulas();
  for (const auto& f : ctx_->facts()) {
    interp.set(f.atom, fm.mk_var(f.var));
    delta.push_back(f.atom);
  }
  for (AtomId s : seeds_) {
    interp.set(s, fm.top());
    delta.push_back(s);
  }
  interp.set_delta(std::move(delta));
  return interp;
}

std::vector<BodyMatch> Evaluator::matches(const ParamInterp& interp,
                                          std::span<const std::size_t> rules,
                                          std::span<const AtomId> delta, bool delta_mode) {
  auto& fm = ctx_->formulas();
  auto& atoms = ctx_->atoms();
  std::vector<BodyMatch> out;
  std::unordered_set<std::uint64_t> seen;

  std::unordered_map<PredId, std::vector<AtomId>> delta_by_pred;
  if (delta_mode) {
    for (AtomId a : delta)
      if (interp.contains(a)) delta_by_pred[atoms.predicate(a)].push_back(a);
    if (delta_by_pred.empty()) return out;
  }

  std::vector<SymbolId> head_args;
  for (std::size_t ri : rules) {
    const CompiledRule& rule = rules_[ri];
    const bool magic_head = is_magic_predicate(rule.head.pred);
    const bool skip_conj = magic_head && magic_top_;

    BodyJoin::Emit emit = [&](std::span<const SymbolId> binding, std::span<const AtomId> body) {
      head_args.clear();
      for (const Slot& s : rule.head.args) head_args.push_back(s.is_var ? binding[s.value] : s.value);
      AtomId head = atoms.intern(rule.head.pred, head_args);
      FormulaRef conj = fm.top();
      if (!skip_conj) {
        for (AtomId b : body) conj = fm.and_(conj, *interp.lookup(b));
        if (magic_head && !conj.is_constant()) ++magic_formula_builds_;
      }
      std::uint64_t key = (std::uint64_t{head} << 32) | conj.node();
      if (seen.insert(key).second) out.push_back({head, conj});
    };

    if (!delta_mode) {
      BodyJoin(rule, interp, atoms, nullptr, 0).run(emit);
      continue;
    }
    for (std::size_t k = 0; k < rule.body.size(); ++k) {
      if (!delta_by_pred.contains(rule.body[k].pred)) continue;
      BodyJoin(rule, interp, atoms, &delta_by_pred, k).run(emit);
    }
  }
  return out;
}

std::vector<BodyMatch> Evaluator::b_set(const ParamInterp& interp) {
  return matches(interp, all_rules_, {}, false);
}

std::vector<BodyMatch> Evaluator::d_set(const ParamInterp& interp, std::span<const AtomId> delta) {
  return matches(interp, all_rules_, delta, true);
}

ParamInterp Evaluator::tcp_step(const ParamInterp& interp) {
  auto& fm = ctx_->formulas();
  ParamInterp out = empty();
  for (const auto& f : ctx_->facts()) out.set(f.atom, fm.mk_var(f.var));
  for (AtomId s : seeds_) out.set(s, fm.top());

  std::vector<AtomId> order;
  std::unordered_map<AtomId, FormulaRef> disj;
  for (const auto& m : b_set(interp)) {
    auto [it, inserted] = disj.try_emplace(m.head, fm.bottom());
    if (inserted) order.push_back(m.head);
    if (is_magic_atom(m.head) && magic_top_) {
      it->second = fm.top();
      continue;
    }
    it->second = fm.or_(it->second, m.conj);
    if (is_magic_atom(m.head) && !it->second.is_constant()) ++magic_formula_builds_;
  }
  for (AtomId a : order) {
    FormulaRef f = disj.at(a);
    if (!f.is_false()) out.set(a, f);
  }

  std::vector<AtomId> changed;
  for (const auto& [a, f] : out.entries())
    if (interp.lookup(a) != f) changed.push_back(a);
  out.set_delta(std::move(changed));
  return out;
}

std::vector<DeltaEntry> Evaluator::delta_tcp(const ParamInterp& interp,
                                             std::span<const AtomId> delta) {
  return delta_tcp(interp, all_rules_, delta);
}

std::vector<DeltaEntry> Evaluator::delta_tcp(const ParamInterp& interp,
                                             std::span<const std::size_t> rules,
                                             std::span<const AtomId> delta) {
  auto& fm = ctx_->formulas();
  std::vector<AtomId> order;
  std::unordered_map<AtomId, FormulaRef> beta;
  for (const auto& m : matches(interp, rules, delta, true)) {
    auto [it, inserted] = beta.try_emplace(m.head, fm.bottom());
    if (inserted) order.push_back(m.head);
    if (is_magic_atom(m.head) && magic_top_) {
      it->second = fm.top();
      continue;
    }
    it->second = fm.or_(it->second, m.conj);
    if (is_magic_atom(m.head) && !it->second.is_constant()) ++magic_formula_builds_;
  }

  std::vector<DeltaEntry> out;
  for (AtomId a : order) {
    FormulaRef b = beta.at(a);
    auto previous = interp.lookup(a);
    if (!previous) {
      if (!b.is_false()) out.push_back({a, b});
      continue;
    }
    // Guard atoms keep the TRUE they were first given.
    if (is_magic_atom(a) && magic_top_) continue;
    FormulaRef gamma = fm.or_(*previous, b);
    if (is_magic_atom(a) && !gamma.is_constant()) ++magic_formula_builds_;
    if (gamma != *previous) out.push_back({a, gamma});
  }
  return out;
}

void Evaluator::apply_delta(ParamInterp& interp, const std::vector<DeltaEntry>& delta) {
  std::vector<AtomId> changed;
  changed.reserve(delta.size());
  for (const auto& d : delta) {
    interp.set(d.atom, d.formula);
    changed.push_back(d.atom);
  }
  interp.set_delta(std::move(changed));
}

FixpointResult Evaluator::naive_fixpoint(Budget max_iters, const IterationObserver& observe) {
  FixpointResult result{empty(), false, 0, 0};
  while (!max_iters || result.iterations < *max_iters) {
    ParamInterp next = tcp_step(result.interp);
    ++result.iterations;
    if (observe) observe(result.iterations, next);
    if (next.same_entries(result.interp)) {
      result.converged = true;
      break;
    }
    ++result.productive;
    result.interp = std::move(next);
  }
  return result;
}

FixpointResult Evaluator::scp_fixpoint(Budget max_iters, const IterationObserver& observe) {
  FixpointResult result{empty(), false, 0, 0};
  if (max_iters && *max_iters == 0) return result;

  // Iteration 1 is the fact interpretation, which is what one naive step from
  // the empty interpretation yields; counting it keeps both strategies'
  // iteration numbers aligned.
  result.interp = initial();
  result.iterations = 1;
  if (observe) observe(1, result.interp);
  if (result.interp.size() == 0) {
    result.converged = true;
    return result;
  }
  result.productive = 1;

  Budget rounds = max_iters ? Budget(*max_iters - 1) : kUnbounded;
  std::vector<AtomId> delta = result.interp.delta();
  std::size_t done = 0;
  while (!rounds || done < *rounds) {
    auto changes = delta_tcp(result.interp, all_rules_, delta);
    ++done;
    ++result.iterations;
    if (changes.empty()) {
      result.interp.set_delta({});
      if (observe) observe(result.iterations, result.interp);
      result.converged = true;
      break;
    }
    apply_delta(result.interp, changes);
    ++result.productive;
    delta = result.interp.delta();
    if (observe) observe(result.iterations, result.interp);
  }
  result.interp.finalize();
  return result;
}

StratumResult Evaluator::run_stratum(ParamInterp& interp, std::span<const std::size_t> rule_indices,
                                     Budget max_rounds, const IterationObserver& observe,
                                     std::size_t round_offset) {
  StratumResult result;
  std::vector<AtomId> delta;
  delta.reserve(interp.size());
  for (const auto& [a, f] : interp.entries()) delta.push_back(a);

  while (!max_rounds || result.rounds < *max_rounds) {
    auto changes = delta_tcp(interp, rule_indices, delta);
    ++result.rounds;
    if (changes.empty()) {
      interp.set_delta({});
      if (observe) observe(round_offset + result.rounds, interp);
      result.converged = true;
      return result;
    }
    apply_delta(interp, changes);
    delta = interp.delta();
    if (observe) observe(round_offset + result.rounds, interp);
  }
  return result;
}

}  // namespace vpl
