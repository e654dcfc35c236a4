#include "vproblog/magic.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "vproblog/error.hpp"

namespace vpl {

Adornment adorn(const Atom& a, const std::set<std::string>& bound_vars) {
  Adornment out;
  out.reserve(a.arity());
  for (const auto& t : a.terms)
    out += (t.is_constant() || bound_vars.contains(t.name())) ? 'b' : 'f';
  return out;
}

namespace {

std::vector<Term> bound_terms(const Atom& a, const Adornment& alpha) {
  std::vector<Term> out;
  for (std::size_t i = 0; i < a.terms.size(); ++i)
    if (alpha[i] == 'b') out.push_back(a.terms[i]);
  return out;
}

class MagicNames {
 public:
  explicit MagicNames(std::set<std::string> taken) : taken_(std::move(taken)) {}

  std::string fresh(const std::string& base) {
    std::string name = base;
    for (int k = 1; taken_.contains(name); ++k) name = base + "_" + std::to_string(k);
    taken_.insert(name);
    return name;
  }

  const std::string& magic(const std::string& pred, const Adornment& alpha) {
    auto key = std::make_pair(pred, alpha);
    auto it = names_.find(key);
    if (it != names_.end()) return it->second;
    std::string base = "m_" + pred + (alpha.empty() ? "" : "_" + alpha);
    return names_.emplace(key, fresh(base)).first->second;
  }

 private:
  std::set<std::string> taken_;
  std::map<std::pair<std::string, Adornment>, std::string> names_;
};

}  // namespace

std::string MagicProgram::to_string() const {
  std::string out = seed.to_string() + ".\n";
  for (const auto& r : rules) out += r.to_string() + "\n";
  return out;
}

MagicProgram magic_transform(const std::vector<Rule>& rules, const Atom& query) {
  std::set<std::string> used;
  for (const auto& r : rules) {
    used.insert(r.head().predicate);
    for (const auto& b : r.body()) used.insert(b.predicate);
  }
  used.insert(query.predicate);

  MagicNames names(used);
  MagicProgram mp;
  mp.query = query;
  mp.query_goal = Atom{names.fresh("goal"), {}};

  std::vector<Rule> program = rules;
  program.emplace_back(mp.query_goal, std::vector<Atom>{query});

  std::map<std::string, std::vector<const Rule*>> defining;
  for (const auto& r : program) defining[r.head().predicate].push_back(&r);

  using Pattern = std::pair<std::string, Adornment>;
  std::set<Pattern> done;
  std::deque<Pattern> todo;
  const Pattern start{mp.query_goal.predicate, ""};
  done.insert(start);
  todo.push_back(start);
  mp.seed = Atom{names.magic(start.first, start.second), {}};
  mp.magic_predicates.insert(mp.seed.predicate);

  while (!todo.empty()) {
    auto [pred, alpha] = todo.front();
    todo.pop_front();
    for (const Rule* r : defining[pred]) {
      const Atom& head = r->head();
      Atom guard{names.magic(pred, alpha), bound_terms(head, alpha)};

      std::vector<Atom> guarded_body{guard};
      guarded_body.insert(guarded_body.end(), r->body().begin(), r->body().end());
      mp.rules.emplace_back(head, std::move(guarded_body));

      std::set<std::string> bound = guard.variables();
      std::vector<Atom> prefix{guard};
      for (const auto& b : r->body()) {
        if (defining.contains(b.predicate)) {
          Adornment gamma = adorn(b, bound);
          const std::string& m = names.magic(b.predicate, gamma);
          mp.magic_predicates.insert(m);
          mp.rules.emplace_back(Atom{m, bound_terms(b, gamma)}, prefix);
          if (done.insert({b.predicate, gamma}).second) todo.push_back({b.predicate, gamma});
        }
        auto vs = b.variables();
        bound.insert(vs.begin(), vs.end());
        prefix.push_back(b);
      }
    }
  }
  return mp;
}

RulePartition partition_rules(const std::vector<Rule>& rules) {
  std::map<std::string, std::set<std::string>> deps;
  for (const auto& r : rules) {
    auto& out = deps[r.head().predicate];
    for (const auto& b : r.body()) out.insert(b.predicate);
  }

  // Tarjan's strongly connected components over rule-defined predicates.
  std::map<std::string, int> index, low, comp;
  std::vector<std::string> stack;
  std::set<std::string> on_stack;
  std::vector<std::vector<std::string>> comps;
  int counter = 0;
  std::function<void(const std::string&)> visit = [&](const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    for (const auto& w : deps[v]) {
      if (!deps.contains(w)) continue;
      if (!index.contains(w)) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack.contains(w)) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::string> c;
      std::string w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        comp[w] = static_cast<int>(comps.size());
        c.push_back(w);
      } while (w != v);
      comps.push_back(std::move(c));
    }
  };
  for (const auto& [p, _] : deps)
    if (!index.contains(p)) visit(p);

  auto cyclic = [&](const std::string& p) {
    const auto& c = comps[comp[p]];
    return c.size() > 1 || deps[p].contains(p);
  };

  std::map<std::string, bool> memo;
  std::function<bool(const std::string&)> depends_on_cycle = [&](const std::string& p) -> bool {
    if (!deps.contains(p)) return false;
    if (auto it = memo.find(p); it != memo.end()) return it->second;
    memo[p] = false;
    bool result = cyclic(p);
    for (const auto& w : deps[p]) {
      if (result) break;
      if (comp.contains(w) && comp[w] == comp[p]) continue;
      result = depends_on_cycle(w);
    }
    memo[p] = result;
    return result;
  };

  RulePartition part;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const Rule& r = rules[i];
    bool base = std::all_of(r.body().begin(), r.body().end(),
                            [&](const Atom& b) { return !deps.contains(b.predicate); });
    if (base)
      part.r1.push_back(i);
    else if (depends_on_cycle(r.head().predicate))
      part.r3.push_back(i);
    else
      part.r2.push_back(i);
  }
  return part;
}

MagicFixpoint mcp_fixpoint(const MagicProgram& mp, Context& ctx, Budget d, bool opt,
                           const IterationObserver& observe) {
  EvalOptions options;
  options.magic_predicates = mp.magic_predicates;
  options.magic_top = opt;
  options.seeds = {mp.seed};
  Evaluator ev(ctx, mp.rules, options);
  RulePartition part = partition_rules(mp.rules);

  MagicFixpoint result{ev.initial(), false, 0, 0};
  std::size_t rounds = 0;
  if (!part.r1.empty()) rounds += ev.run_stratum(result.interp, part.r1, kUnbounded, observe, rounds).rounds;
  if (!part.r2.empty()) rounds += ev.run_stratum(result.interp, part.r2, kUnbounded, observe, rounds).rounds;
  if (part.r3.empty()) {
    result.converged = true;
  } else {
    StratumResult s = ev.run_stratum(result.interp, part.r3, d, observe, rounds);
    result.converged = s.converged;
    result.iterations = s.rounds;
  }
  result.interp.finalize();
  result.magic_formula_builds = ev.magic_formula_builds();
  return result;
}

const char* to_string(SolveMode mode) {
  switch (mode) {
    case SolveMode::Naive: return "naive";
    case SolveMode::SemiNaive: return "seminaive";
    case SolveMode::MagicPlain: return "magic-plain";
    case SolveMode::MagicOpt: return "magic-opt";
  }
  return "?";
}

std::optional<SolveMode> parse_solve_mode(const std::string& s) {
  for (auto m : {SolveMode::Naive, SolveMode::SemiNaive, SolveMode::MagicPlain, SolveMode::MagicOpt})
    if (s == to_string(m)) return m;
  return std::nullopt;
}

const char* to_string(BoundKind kind) { return kind == BoundKind::Exact ? "exact" : "lower"; }

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

}  // namespace

SolveReport solve(const ProbProgram& program, const Atom& query, const SolveOptions& options) {
  auto arity = program.arity(query.predicate);
  if (!arity)
    throw Error(ErrorCode::UnknownPredicate, "unknown predicate " + query.predicate);
  if (*arity != query.arity())
    throw Error(ErrorCode::ArityConflict, "query " + query.to_string() + " has the wrong arity for " +
                                              query.predicate + "/" + std::to_string(*arity));

  SolveReport report;
  Context ctx(program, options.node_limit);
  auto& fm = ctx.formulas();

  if (program.is_fact_predicate(query.predicate)) {
    // Fact queries are answered from the labels directly.
    auto t = Clock::now();
    for (std::size_t i = 0; i < program.facts().size(); ++i) {
      const Atom& f = program.facts()[i];
      if (!match_atom(query, f, {})) continue;
      report.answers.push_back({f, f.to_string(), program.probability(i), BoundKind::Exact, 0, 1});
    }
    report.converged = true;
    report.entries = program.facts().size();
    report.dd_nodes = fm.node_count();
    report.timings.wmc_ms = elapsed_ms(t);
  } else {
    std::optional<ParamInterp> interp;
    std::set<std::string> magic;
    auto t = Clock::now();
    switch (options.mode) {
      case SolveMode::Naive:
      case SolveMode::SemiNaive: {
        Evaluator ev(ctx, program.rules());
        FixpointResult fp = options.mode == SolveMode::Naive ? ev.naive_fixpoint(options.iterations)
                                                             : ev.scp_fixpoint(options.iterations);
        report.converged = fp.converged;
        report.iterations = fp.iterations;
        interp.emplace(std::move(fp.interp));
        break;
      }
      case SolveMode::MagicPlain:
      case SolveMode::MagicOpt: {
        MagicProgram mp = magic_transform(program.rules(), query);
        report.timings.transform_ms = elapsed_ms(t);
        t = Clock::now();
        magic = mp.magic_predicates;
        MagicFixpoint fp = mcp_fixpoint(mp, ctx, options.iterations, options.mode == SolveMode::MagicOpt);
        report.converged = fp.converged;
        report.iterations = fp.iterations;
        interp.emplace(std::move(fp.interp));
        break;
      }
    }
    report.timings.materialize_ms = elapsed_ms(t);

    t = Clock::now();
    const BoundKind bound = report.converged ? BoundKind::Exact : BoundKind::Lower;
    for (const auto& [a, f] : interp->entries()) {
      Atom atom = ctx.atom(a);
      if (magic.contains(atom.predicate)) {
        ++report.magic_entries;
        continue;
      }
      ++report.entries;
      if (!match_atom(query, atom, {})) continue;
      report.answers.push_back({atom, atom.to_string(), fm.wmc(f, ctx.weights()), bound,
                                report.iterations, fm.size(f)});
    }
    report.dd_nodes = fm.node_count();
    report.timings.wmc_ms = elapsed_ms(t);
  }

  if (report.answers.empty() && query.is_ground()) {
    report.answers.push_back({query, query.to_string(), 0.0,
                              report.converged ? BoundKind::Exact : BoundKind::Lower,
                              report.iterations, 0});
  }
  return report;
}

}  // namespace vpl
