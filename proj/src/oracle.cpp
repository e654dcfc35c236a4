#include "vproblog/oracle.hpp"

#include <functional>

#include "vproblog/error.hpp"

namespace vpl::oracle {

namespace {

using Buckets = std::map<std::string, std::vector<const Atom*>>;

// Every substitution grounding the rule body against the model.
void for_each_grounding(const Rule& rule, const Buckets& model,
                        const std::function<void(const Substitution&, const std::vector<const Atom*>&)>& fn) {
  std::vector<const Atom*> chosen(rule.body().size(), nullptr);
  std::function<void(std::size_t, const Substitution&)> rec = [&](std::size_t k, const Substitution& theta) {
    if (k == rule.body().size()) {
      fn(theta, chosen);
      return;
    }
    auto it = model.find(rule.body()[k].predicate);
    if (it == model.end()) return;
    for (const Atom* g : it->second) {
      if (auto next = match_atom(rule.body()[k], *g, theta)) {
        chosen[k] = g;
        rec(k + 1, *next);
      }
    }
  };
  rec(0, {});
}

struct UncertainFacts {
  std::vector<std::size_t> index;  // into program facts
  std::vector<bool> base;          // certain facts preset
};

UncertainFacts split_facts(const ProbProgram& program, const Options& options) {
  UncertainFacts out;
  out.base.assign(program.facts().size(), false);
  for (std::size_t i = 0; i < program.facts().size(); ++i) {
    double p = program.probability(i);
    if (p <= 0.0) continue;
    if (p >= 1.0)
      out.base[i] = true;
    else
      out.index.push_back(i);
  }
  if (out.index.size() > options.cap)
    throw Error(ErrorCode::CapExceeded, std::to_string(out.index.size()) +
                                            " uncertain facts exceed the enumeration cap of " +
                                            std::to_string(options.cap));
  return out;
}

template <typename Visit>
void for_each_world(const ProbProgram& program, const UncertainFacts& facts, Visit&& visit) {
  const std::size_t n = facts.index.size();
  std::vector<bool> world = facts.base;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double weight = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t fi = facts.index[j];
      bool on = (mask >> j) & 1U;
      world[fi] = on;
      double p = program.probability(fi);
      weight *= on ? p : 1.0 - p;
    }
    visit(world, weight);
  }
}

}  // namespace

std::set<Atom> boolean_tp_least_model(const std::vector<Rule>& rules, const std::set<Atom>& facts) {
  std::set<Atom> model = facts;
  while (true) {
    Buckets buckets;
    for (const auto& a : model) buckets[a.predicate].push_back(&a);
    std::set<Atom> fresh;
    for (const auto& r : rules) {
      for_each_grounding(r, buckets, [&](const Substitution& theta, const std::vector<const Atom*>&) {
        Atom h = apply_subst(r.head(), theta);
        if (!model.contains(h)) fresh.insert(std::move(h));
      });
    }
    if (fresh.empty()) return model;
    model.insert(fresh.begin(), fresh.end());
  }
}

WorldModel::WorldModel(const ProbProgram& program) {
  std::set<Atom> all(program.facts().begin(), program.facts().end());
  std::set<Atom> model = boolean_tp_least_model(program.rules(), all);
  for (const auto& a : model) {
    ids_.emplace(a, atoms_.size());
    atoms_.push_back(a);
  }
  for (const auto& f : program.facts()) fact_ids_.push_back(ids_.at(f));

  Buckets buckets;
  for (const auto& a : atoms_) buckets[a.predicate].push_back(&a);
  std::set<std::pair<std::size_t, std::vector<std::size_t>>> seen;
  for (const auto& r : program.rules()) {
    for_each_grounding(r, buckets, [&](const Substitution& theta, const std::vector<const Atom*>& body) {
      GroundRule g{ids_.at(apply_subst(r.head(), theta)), {}};
      for (const Atom* b : body) g.body.push_back(ids_.at(*b));
      if (seen.emplace(g.head, g.body).second) ground_.push_back(std::move(g));
    });
  }
}

std::vector<bool> WorldModel::propagate(const std::vector<bool>& fact_true) const {
  std::vector<bool> truth(atoms_.size(), false);
  for (std::size_t i = 0; i < fact_ids_.size(); ++i)
    if (fact_true[i]) truth[fact_ids_[i]] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& g : ground_) {
      if (truth[g.head]) continue;
      bool fires = true;
      for (auto b : g.body) fires = fires && truth[b];
      if (fires) {
        truth[g.head] = true;
        changed = true;
      }
    }
  }
  return truth;
}

std::set<Atom> WorldModel::entailed(const std::vector<bool>& fact_true) const {
  std::set<Atom> out;
  auto truth = propagate(fact_true);
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (truth[i]) out.insert(atoms_[i]);
  return out;
}

bool WorldModel::entails(const std::vector<bool>& fact_true, const Atom& a) const {
  auto it = ids_.find(a);
  if (it == ids_.end()) return false;
  return propagate(fact_true)[it->second];
}

std::map<Atom, double> enumerate_all(const ProbProgram& program, const Options& options) {
  UncertainFacts facts = split_facts(program, options);
  WorldModel model(program);
  std::vector<double> mass(model.atoms().size(), 0.0);
  std::vector<bool> seen(model.atoms().size(), false);
  for_each_world(program, facts, [&](const std::vector<bool>& world, double weight) {
    auto truth = model.propagate(world);
    for (std::size_t i = 0; i < model.atoms().size(); ++i) {
      if (truth[i]) {
        mass[i] += weight;
        seen[i] = true;
      }
    }
  });
  std::map<Atom, double> out;
  for (std::size_t i = 0; i < model.atoms().size(); ++i)
    if (seen[i]) out.emplace(model.atoms()[i], mass[i]);
  return out;
}

double enumerate_prob(const ProbProgram& program, const Atom& a, const Options& options) {
  UncertainFacts facts = split_facts(program, options);
  WorldModel model(program);
  double total = 0.0;
  for_each_world(program, facts, [&](const std::vector<bool>& world, double weight) {
    if (model.entails(world, a)) total += weight;
  });
  return total;
}

double brute_wmc(const FormulaManager& fm, FormulaRef x, const WeightMap& w, std::size_t cap) {
  std::vector<VarId> vars = fm.support(x);
  if (vars.size() > cap)
    throw Error(ErrorCode::CapExceeded, "formula has " + std::to_string(vars.size()) +
                                            " variables, above the cap of " + std::to_string(cap));
  std::vector<LiteralWeights> lw;
  for (VarId v : vars) {
    auto weights = w.get(v);
    if (!weights) throw Error(ErrorCode::MissingWeight, "no weight for variable " + fm.label(v));
    lw.push_back(*weights);
  }
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vars.size()); ++mask) {
    TotalChoice choice;
    double weight = 1.0;
    for (std::size_t j = 0; j < vars.size(); ++j) {
      bool on = (mask >> j) & 1U;
      if (on) choice.insert(vars[j]);
      weight *= on ? lw[j].pos : lw[j].neg;
    }
    if (fm.eval(x, choice)) total += weight;
  }
  return total;
}

}  // namespace vpl::oracle
