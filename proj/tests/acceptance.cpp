// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "random_formulas.hpp"
#include "random_programs.hpp"
#include "test_util.hpp"
#include "vproblog/error.hpp"
#include "vproblog/evaluator.hpp"
#include "vproblog/magic.hpp"
#include "vproblog/oracle.hpp"
#include "vproblog/parser.hpp"
#include "vproblog/smokers.hpp"

namespace {

using namespace vpl;

constexpr std::size_t kCorpusSize = 200;
constexpr std::uint64_t kCorpusSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void fail(std::string why) {
    pass = false;
    if (failures.size() < 5) failures.push_back(std::move(why));
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Sets of total choices as bitsets: bit m stands for the choice whose true
// facts are the set bits of m.
using Bits = std::vector<std::uint64_t>;

struct Worlds {
  std::size_t facts;
  std::uint64_t count;
  std::size_t words;

  explicit Worlds(std::size_t n)
      : facts(n), count(std::uint64_t{1} << n), words(static_cast<std::size_t>((count + 63) / 64)) {}

  Bits none() const { return Bits(words, 0); }
  Bits all() const {
    Bits b(words, ~std::uint64_t{0});
    if (count % 64) b.back() = (std::uint64_t{1} << (count % 64)) - 1;
    return b;
  }
  static void set(Bits& b, std::uint64_t m) { b[m / 64] |= std::uint64_t{1} << (m % 64); }
};

bool implies(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

// Models of a decision diagram over fact variables, by recursion on nodes.
class FormulaModels {
 public:
  FormulaModels(const FormulaManager& fm, const Worlds& w) : fm_(fm), w_(w) {
    for (std::size_t v = 0; v < w.facts; ++v) {
      Bits b = w.none();
      for (std::uint64_t m = 0; m < w.count; ++m)
        if (m >> v & 1) Worlds::set(b, m);
      vars_.push_back(std::move(b));
    }
  }

  const Bits& of(FormulaRef f) { return node(f.node()); }

 private:
  const Bits& node(NodeId n) {
    if (auto it = memo_.find(n); it != memo_.end()) return it->second;
    Bits out;
    if (n == FormulaRef::kFalseNode) {
      out = w_.none();
    } else if (n == FormulaRef::kTrueNode) {
      out = w_.all();
    } else {
      auto v = fm_.node(n);
      Bits lo = node(v.low), hi = node(v.high);
      const Bits& x = vars_.at(v.var);
      out = w_.none();
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = (~x[i] & lo[i]) | (x[i] & hi[i]);
    }
    return memo_.emplace(n, std::move(out)).first->second;
  }

  const FormulaManager& fm_;
  const Worlds& w_;
  std::vector<Bits> vars_;
  std::unordered_map<NodeId, Bits> memo_;
};

// Worlds in which each atom is entailed, by grounded boolean propagation.
// `extra` flags are appended to every choice (used for the crisp seed).
std::map<Atom, Bits> entailment(const ProbProgram& p, const Worlds& w, std::size_t extra = 0) {
  oracle::WorldModel wm(p);
  std::vector<Bits> by_atom(wm.atoms().size(), w.none());
  for (std::uint64_t m = 0; m < w.count; ++m) {
    auto flags = testing::flags_from_mask(m, w.facts);
    flags.resize(w.facts + extra, true);
    auto truth = wm.propagate(flags);
    for (std::size_t i = 0; i < truth.size(); ++i)
      if (truth[i]) Worlds::set(by_atom[i], m);
  }
  std::map<Atom, Bits> out;
  for (std::size_t i = 0; i < by_atom.size(); ++i) out.emplace(wm.atoms()[i], std::move(by_atom[i]));
  return out;
}

const Bits& lookup_bits(const std::map<Atom, Bits>& m, const Atom& a, const Bits& none) {
  auto it = m.find(a);
  return it == m.end() ? none : it->second;
}

using Snapshot = std::vector<std::pair<AtomId, FormulaRef>>;

std::vector<ProbProgram> corpus() {
  testing::RandomPrograms gen(kCorpusSeed);
  std::vector<ProbProgram> out;
  for (std::size_t i = 0; i < kCorpusSize; ++i) out.push_back(gen.next());
  return out;
}

// Ground queries for a program: a few atoms the full fixpoint derives plus one
// it does not.
std::vector<Atom> queries_for(const ProbProgram& p, Context& ctx, const ParamInterp& full) {
  std::vector<Atom> derived;
  for (const auto& [a, f] : full.entries()) {
    Atom atom = ctx.atom(a);
    if (p.is_rule_predicate(atom.predicate)) derived.push_back(atom);
  }
  std::vector<Atom> out;
  if (!derived.empty()) {
    out.push_back(derived.front());
    if (derived.size() > 2) out.push_back(derived[derived.size() / 2]);
    if (derived.size() > 1) out.push_back(derived.back());
  }
  for_each_herbrand_atom(p, [&](const Atom& a) {
    if (!p.is_rule_predicate(a.predicate)) return true;
    auto id = ctx.find(a);
    if (id && full.contains(*id)) return true;
    out.push_back(a);
    return false;
  });
  return out;
}

Outcome oracle_equivalence(const std::vector<ProbProgram>& programs) {
  Outcome o;
  std::size_t atoms = 0;
  double max_err = 0.0, max_brute = 0.0;
  for (std::size_t k = 0; k < programs.size(); ++k) {
    const ProbProgram& p = programs[k];
    Context ctx(p);
    Evaluator ev(ctx, p.rules());
    auto fp = ev.scp_fixpoint(kUnbounded);
    if (!fp.converged) o.fail("program " + std::to_string(k) + " did not converge");
    auto exact = oracle::enumerate_all(p);
    std::set<Atom> engine_atoms;
    for (const auto& [a, f] : fp.interp.entries()) {
      Atom atom = ctx.atom(a);
      engine_atoms.insert(atom);
      ++atoms;
      double w = ctx.formulas().wmc(f, ctx.weights());
      auto it = exact.find(atom);
      double e = it == exact.end() ? 0.0 : it->second;
      max_err = std::max(max_err, std::abs(w - e));
      if (std::abs(w - e) > 1e-9)
        o.fail("program " + std::to_string(k) + " " + atom.to_string() + ": " + fmt("%.17g", w) + " vs " +
               fmt("%.17g", e));
      double b = oracle::brute_wmc(ctx.formulas(), f, ctx.weights());
      max_brute = std::max(max_brute, std::abs(w - b));
      if (std::abs(w - b) > 1e-12) o.fail("program " + std::to_string(k) + " brute wmc mismatch");
    }
    for (const auto& [atom, prob] : exact)
      if (!engine_atoms.contains(atom))
        o.fail("program " + std::to_string(k) + " missing derivable atom " + atom.to_string());
  }
  o.detail = std::to_string(programs.size()) + " programs, " + std::to_string(atoms) + " atoms, max |err| " +
             fmt("%.2e", max_err) + ", max brute gap " + fmt("%.2e", max_brute);
  return o;
}

Outcome naive_vs_seminaive(const std::vector<ProbProgram>& programs) {
  Outcome o;
  std::size_t iterations = 0;
  for (std::size_t k = 0; k < programs.size(); ++k) {
    Context ctx(programs[k]);
    Evaluator ev(ctx, programs[k].rules());
    std::vector<Snapshot> naive, semi;
    auto rn = ev.naive_fixpoint(kUnbounded, [&](std::size_t, const ParamInterp& i) { naive.push_back(i.entries()); });
    auto rs = ev.scp_fixpoint(kUnbounded, [&](std::size_t, const ParamInterp& i) { semi.push_back(i.entries()); });
    iterations += rs.iterations;
    if (!rn.converged || !rs.converged) o.fail("program " + std::to_string(k) + " did not converge");
    if (rn.productive != rs.productive || rn.iterations != rs.iterations)
      o.fail("program " + std::to_string(k) + " iteration counts differ");
    if (naive != semi) o.fail("program " + std::to_string(k) + " per-iteration interpretations differ");
  }
  o.detail = std::to_string(programs.size()) + " programs, " + std::to_string(iterations) + " iterations compared";
  return o;
}

Outcome magic_correctness(const std::vector<ProbProgram>& programs) {
  Outcome o;
  std::size_t queries = 0, lemma_checks = 0;
  for (std::size_t k = 0; k < programs.size(); ++k) {
    const ProbProgram& p = programs[k];
    const std::string tag = "program " + std::to_string(k) + " ";
    Worlds w(p.facts().size());
    Context ctx(p);
    Evaluator ev(ctx, p.rules());
    auto full = ev.scp_fixpoint(kUnbounded);
    auto truth = entailment(p, w);
    auto exact = oracle::enumerate_all(p);
    FormulaModels models(ctx.formulas(), w);
    const Bits none = w.none();

    for (const Atom& q : queries_for(p, ctx, full.interp)) {
      ++queries;
      const std::string qtag = tag + q.to_string() + ": ";
      MagicProgram mp = magic_transform(p.rules(), q);
      auto is_guard = [&](const Atom& a) { return mp.is_magic(a.predicate) || a == mp.query_goal; };

      // (a) entailment of q is unchanged by the rewriting, in every world
      auto magic_truth = entailment(testing::magic_as_program(mp, p), w, 1);
      if (lookup_bits(magic_truth, q, none) != lookup_bits(truth, q, none)) o.fail(qtag + "entailment differs");

      std::vector<Snapshot> plain_snaps, opt_snaps;
      auto plain = mcp_fixpoint(mp, ctx, kUnbounded, false,
                                [&](std::size_t, const ParamInterp& i) { plain_snaps.push_back(i.entries()); });
      auto opt = mcp_fixpoint(mp, ctx, kUnbounded, true,
                              [&](std::size_t, const ParamInterp& i) { opt_snaps.push_back(i.entries()); });
      if (!plain.converged || !opt.converged) o.fail(qtag + "magic evaluation did not converge");
      if (opt.magic_formula_builds != 0) o.fail(qtag + "guard formulas were compiled in opt mode");

      // (b) same query formula as the full program
      auto qid = ctx.find(q);
      auto full_q = qid ? full.interp.lookup(*qid) : std::nullopt;
      auto plain_q = qid ? plain.interp.lookup(*qid) : std::nullopt;
      auto opt_q = qid ? opt.interp.lookup(*qid) : std::nullopt;
      if (full_q != plain_q) o.fail(qtag + "plain query formula differs from full fixpoint");

      // (c) probability of the opt query formula, and its models
      double wq = opt_q ? ctx.formulas().wmc(*opt_q, ctx.weights()) : 0.0;
      double eq = exact.contains(q) ? exact.at(q) : 0.0;
      if (std::abs(wq - eq) > 1e-9) o.fail(qtag + fmt("wmc %.17g", wq) + fmt(" vs oracle %.17g", eq));
      if ((opt_q ? models.of(*opt_q) : none) != lookup_bits(truth, q, none))
        o.fail(qtag + "opt query formula models differ from entailment");

      // (d) per round: same atoms, plain formula implies opt formula. Plain
      // mode may need extra rounds that only refine guard formulas; past its
      // fixpoint the opt interpretation stays put, so the shorter run is
      // extended with its final state.
      const std::size_t rounds = std::max(plain_snaps.size(), opt_snaps.size());
      for (std::size_t i = 0; i < rounds; ++i) {
        const auto& ps = plain_snaps[std::min(i, plain_snaps.size() - 1)];
        const auto& os = opt_snaps[std::min(i, opt_snaps.size() - 1)];
        if (ps.size() != os.size()) {
          o.fail(qtag + "entry sets differ at round " + std::to_string(i + 1));
          continue;
        }
        for (std::size_t j = 0; j < ps.size(); ++j) {
          ++lemma_checks;
          if (ps[j].first != os[j].first) {
            o.fail(qtag + "entry sets differ at round " + std::to_string(i + 1));
            break;
          }
          if (!implies(models.of(ps[j].second), models.of(os[j].second)))
            o.fail(qtag + ctx.render(ps[j].first) + " plain formula not contained in opt at round " +
                   std::to_string(i + 1));
        }
      }

      // (e) every non-guard opt entry is sound in every world
      for (std::size_t i = 0; i < opt_snaps.size(); ++i) {
        for (const auto& [a, f] : opt_snaps[i]) {
          Atom atom = ctx.atom(a);
          if (is_guard(atom)) continue;
          ++lemma_checks;
          if (!implies(models.of(f), lookup_bits(truth, atom, none)))
            o.fail(qtag + atom.to_string() + " unsound at round " + std::to_string(i + 1));
        }
      }
    }
  }
  o.detail = std::to_string(programs.size()) + " programs, " + std::to_string(queries) + " ground queries, " +
             std::to_string(lemma_checks) + " per-round entry checks";
  return o;
}

Outcome anytime_bounds(const std::vector<ProbProgram>& programs) {
  Outcome o;
  std::size_t sequences = 0, steps = 0;
  auto check_sequence = [&](FormulaManager& fm, const WeightMap& weights, const std::vector<FormulaRef>& seq,
                            double exact, const std::string& tag) {
    ++sequences;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      ++steps;
      double a = fm.wmc(seq[i], weights), b = fm.wmc(seq[i + 1], weights);
      if (a > b + 1e-12 || b > exact + 1e-12)
        o.fail(tag + " bound not monotone at step " + std::to_string(i + 1));
      if (fm.or_(seq[i], seq[i + 1]) != seq[i + 1])
        o.fail(tag + " formula does not imply its successor at step " + std::to_string(i + 1));
    }
  };

  for (std::size_t k = 0; k < programs.size(); ++k) {
    const ProbProgram& p = programs[k];
    Context ctx(p);
    auto& fm = ctx.formulas();
    Evaluator ev(ctx, p.rules());
    std::vector<Snapshot> snaps;
    auto full = ev.scp_fixpoint(kUnbounded, [&](std::size_t, const ParamInterp& i) { snaps.push_back(i.entries()); });
    auto exact = oracle::enumerate_all(p);

    for (const auto& [a, f] : full.interp.entries()) {
      std::vector<FormulaRef> seq;
      for (const auto& s : snaps) {
        FormulaRef g = fm.bottom();
        for (const auto& [b, h] : s)
          if (b == a) g = h;
        seq.push_back(g);
      }
      Atom atom = ctx.atom(a);
      check_sequence(fm, ctx.weights(), seq, exact.at(atom), "program " + std::to_string(k) + " " + atom.to_string());
    }

    for (const Atom& q : queries_for(p, ctx, full.interp)) {
      const std::string tag = "program " + std::to_string(k) + " magic " + q.to_string();
      MagicProgram mp = magic_transform(p.rules(), q);
      std::vector<FormulaRef> seq;
      mcp_fixpoint(mp, ctx, kUnbounded, true, [&](std::size_t, const ParamInterp& i) {
        auto id = ctx.find(q);
        auto f = id ? i.lookup(*id) : std::nullopt;
        seq.push_back(f ? *f : fm.bottom());
      });
      double e = exact.contains(q) ? exact.at(q) : 0.0;
      check_sequence(fm, ctx.weights(), seq, e, tag);

      // Budgeted solves report nondecreasing lower bounds until they converge.
      double previous = 0.0;
      for (std::size_t d = 0;; ++d) {
        SolveReport r = solve(p, q, {SolveMode::MagicOpt, d});
        double v = r.answers.empty() ? 0.0 : r.answers[0].probability;
        if (v + 1e-12 < previous || v > e + 1e-12) o.fail(tag + " budget " + std::to_string(d) + " not a bound");
        if (!r.converged && !r.answers.empty() && r.answers[0].bound != BoundKind::Lower)
          o.fail(tag + " unconverged answer not marked lower");
        previous = v;
        if (r.converged) {
          if (std::abs(v - e) > 1e-9) o.fail(tag + " converged value differs from oracle");
          break;
        }
        if (d > 64) {
          o.fail(tag + " did not converge");
          break;
        }
      }
    }
  }
  o.detail = std::to_string(sequences) + " bound sequences, " + std::to_string(steps) + " consecutive pairs";
  return o;
}

Outcome chain_relevance() {
  Outcome o;
  ProbProgram p = testing::chain_program(20);
  Atom q = make_atom("path", {"v1", "v3"});
  Context ctx(p);
  Evaluator ev(ctx, p.rules());
  auto full = ev.scp_fixpoint(kUnbounded);
  auto count_paths = [&](const ParamInterp& i) {
    std::size_t n = 0;
    for (const auto& [a, f] : i.entries())
      if (ctx.atom(a).predicate == "path") ++n;
    return n;
  };
  const std::size_t full_paths = count_paths(full.interp);
  MagicProgram mp = magic_transform(p.rules(), q);
  auto magic = mcp_fixpoint(mp, ctx, kUnbounded, true);
  const std::size_t magic_paths = count_paths(magic.interp);

  // The same counts as the driver reports them.
  SolveReport all = solve(p, make_atom("path", {"X", "Y"}), {SolveMode::SemiNaive});
  SolveReport point = solve(p, q, {SolveMode::MagicOpt});
  const std::size_t reported_full = all.entries - p.facts().size();
  const std::size_t reported_magic = point.entries - p.facts().size() - 1;  // minus the goal atom

  if (full_paths != 190) o.fail("full fixpoint has " + std::to_string(full_paths) + " path entries");
  if (magic_paths * 10 > full_paths) o.fail("magic fixpoint has " + std::to_string(magic_paths) + " path entries");
  if (reported_full != full_paths || reported_magic != magic_paths) o.fail("reported entry counts disagree");
  if (point.answers.size() != 1 || std::abs(point.answers[0].probability - 0.81) > 1e-12)
    o.fail("path(v1,v3) probability wrong");
  o.detail = "path entries: full " + std::to_string(full_paths) + ", magic-opt " + std::to_string(magic_paths) +
             " (" + fmt("%.1f%%", 100.0 * magic_paths / full_paths) + "), " +
             std::to_string(magic.interp.size() - magic_paths - p.facts().size() - 1) + " guard atoms";
  return o;
}

std::size_t uncertain_facts(const ProbProgram& p) {
  std::size_t n = 0;
  for (double x : p.probabilities())
    if (x > 0.0 && x < 1.0) ++n;
  return n;
}

Outcome smokers() {
  Outcome o;
  const Atom q = make_atom("asthma", {"X"});
  double worst_time = 0.0;
  std::size_t lower = 0, answers = 0;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    SmokersConfig c;
    c.persons = 10;
    c.seed = seed;
    auto t = std::chrono::steady_clock::now();
    ProbProgram p = parse_program(generate_smokers(c));
    SolveReport r = solve(p, q, {SolveMode::MagicOpt, 3});
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
    worst_time = std::max(worst_time, secs);
    if (secs >= 5.0) o.fail("seed " + std::to_string(seed) + fmt(" took %.2f s", secs));
    if (r.answers.empty()) o.fail("seed " + std::to_string(seed) + " produced no answers");
    for (const auto& a : r.answers) {
      ++answers;
      if (a.bound == BoundKind::Lower) ++lower;
      if ((a.bound == BoundKind::Exact) != r.converged) o.fail("bound kind does not match convergence");
    }
  }

  // Trimmed instances: the first k persons of the same generator, small
  // enough to enumerate.
  double max_gap = 0.0;
  std::size_t checked = 0, instances = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (std::size_t k = 1; k <= 10; ++k) {
      SmokersConfig c;
      c.persons = k;
      c.seed = seed;
      ProbProgram p = parse_program(generate_smokers(c));
      if (uncertain_facts(p) > 15) break;
      ++instances;
      SolveReport r = solve(p, q, {SolveMode::MagicOpt, 3});
      std::map<Atom, double> reported;
      for (const auto& a : r.answers) reported[a.atom] = a.probability;
      for (std::size_t i = 1; i <= k; ++i) {
        Atom a = make_atom("asthma", {"p" + std::to_string(i)});
        double exact = oracle::enumerate_prob(p, a, {15});
        double bound = reported.contains(a) ? reported.at(a) : 0.0;
        ++checked;
        max_gap = std::max(max_gap, exact - bound);
        if (bound > exact + 1e-12 || exact - bound > 0.05)
          o.fail("seed " + std::to_string(seed) + " k=" + std::to_string(k) + " " + a.to_string() +
                 fmt(": bound %.6f", bound) + fmt(" exact %.6f", exact));
      }
    }
  }
  o.detail = "n=10 d=3: " + std::to_string(answers) + " answers over 3 seeds (" + std::to_string(lower) +
             " lower bounds), slowest " + fmt("%.3f s", worst_time) + "; trimmed: " + std::to_string(instances) +
             " instances, " + std::to_string(checked) + " bounds, max gap " + fmt("%.4f", max_gap);
  return o;
}

Outcome formula_engine() {
  Outcome o;
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t formulas = 0;

  // Canonicity: equal truth tables iff equal handles; store stays reduced.
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 1 + rng() % 8;
    FormulaManager fm;
    for (std::size_t i = 0; i < n; ++i) fm.register_var();
    std::vector<std::pair<std::vector<bool>, FormulaRef>> built;
    for (int j = 0; j < 30; ++j) {
      auto e = testing::random_expr(rng, n, 5);
      built.emplace_back(testing::truth_table(*e, n), e->build(fm));
      ++formulas;
    }
    for (const auto& [ta, fa] : built)
      for (const auto& [tb, fb] : built)
        if ((ta == tb) != (fa == fb)) o.fail("handle equality disagrees with truth tables");
    std::string why;
    if (!testing::audit_canonical(fm, &why)) o.fail("canonicity audit: " + why);
  }

  // Weighted counts against direct summation.
  double max_err = 0.0;
  for (int round = 0; round < 300; ++round) {
    const std::size_t n = 1 + rng() % 10;
    FormulaManager fm;
    WeightMap w;
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) {
      fm.register_var();
      p[i] = unit(rng);
      w.set_probability(static_cast<VarId>(i), p[i]);
    }
    auto e = testing::random_expr(rng, n, 6);
    FormulaRef f = e->build(fm);
    ++formulas;
    double expected = testing::tree_wmc(*e, p);
    double got = fm.wmc(f, w), brute = oracle::brute_wmc(fm, f, w);
    max_err = std::max({max_err, std::abs(got - expected), std::abs(brute - expected)});
    if (std::abs(got - expected) > 1e-12 || std::abs(brute - expected) > 1e-12) o.fail("wmc disagrees with summation");
  }

  // Boolean-algebra identities at the handle level.
  for (int round = 0; round < 200; ++round) {
    FormulaManager fm;
    for (int i = 0; i < 6; ++i) fm.register_var();
    FormulaRef x = testing::random_expr(rng, 6, 3)->build(fm);
    FormulaRef y = testing::random_expr(rng, 6, 3)->build(fm);
    FormulaRef z = testing::random_expr(rng, 6, 3)->build(fm);
    bool ok = fm.and_(x, y) == fm.and_(y, x) && fm.or_(x, y) == fm.or_(y, x) &&
              fm.and_(x, fm.and_(y, z)) == fm.and_(fm.and_(x, y), z) &&
              fm.or_(x, fm.or_(y, z)) == fm.or_(fm.or_(x, y), z) &&
              fm.and_(x, fm.or_(y, z)) == fm.or_(fm.and_(x, y), fm.and_(x, z)) &&
              fm.or_(x, fm.and_(y, z)) == fm.and_(fm.or_(x, y), fm.or_(x, z)) && fm.or_(x, fm.and_(x, y)) == x &&
              fm.and_(x, fm.or_(x, y)) == x && fm.and_(x, x) == x && fm.or_(x, x) == x &&
              fm.and_(x, fm.top()) == x && fm.or_(x, fm.bottom()) == x && fm.and_(x, fm.bottom()).is_false() &&
              fm.or_(x, fm.top()).is_true();
    if (!ok) o.fail("identity violated");
  }

  // Node ceiling.
  bool aborted = false;
  try {
    FormulaManager fm(8);
    for (int i = 0; i < 16; ++i) fm.register_var();
    FormulaRef f = fm.bottom();
    for (VarId i = 0; i < 16; i += 2) f = fm.or_(f, fm.and_(fm.mk_var(i), fm.mk_var(i + 1)));
  } catch (const Error& e) {
    aborted = e.code() == ErrorCode::NodeLimit;
  }
  if (!aborted) o.fail("node limit did not raise NodeLimit");

  o.detail = std::to_string(formulas) + " random formulas, max wmc error " + fmt("%.2e", max_err) +
             ", node limit raises " + to_string(ErrorCode::NodeLimit);
  return o;
}

}  // namespace

int main() {
  const auto programs = corpus();
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"oracle equivalence", [&] { return oracle_equivalence(programs); }},
      {"naive and semi-naive agree per iteration", [&] { return naive_vs_seminaive(programs); }},
      {"magic-sets correctness", [&] { return magic_correctness(programs); }},
      {"anytime lower bounds", [&] { return anytime_bounds(programs); }},
      {"relevance on a 20-node chain", [] { return chain_relevance(); }},
      {"desk-scale smokers", [] { return smokers(); }},
      {"formula engine", [] { return formula_engine(); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
    std::printf("%s  %zu  %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str(),
                secs);
    for (const auto& f : o.failures) std::printf("        %s\n", f.c_str());
    if (!o.pass) ++failed;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
