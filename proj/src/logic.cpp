#include "vproblog/logic.hpp"

#include <cctype>
#include <utility>

#include "vproblog/error.hpp"

namespace vpl {

Term Term::variable(std::string name) {
  if (name.empty()) throw Error(ErrorCode::InvalidArgument, "empty variable name");
  return Term(Kind::Variable, std::move(name));
}

Term Term::constant(std::string symbol) {
  if (symbol.empty()) throw Error(ErrorCode::InvalidArgument, "empty constant symbol");
  return Term(Kind::Constant, std::move(symbol));
}

bool Atom::is_ground() const {
  for (const auto& t : terms)
    if (t.is_variable()) return false;
  return true;
}

std::set<std::string> Atom::variables() const {
  std::set<std::string> vars;
  for (const auto& t : terms)
    if (t.is_variable()) vars.insert(t.name());
  return vars;
}

std::string Atom::to_string() const {
  std::string out = predicate;
  if (terms.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += ',';
    out += terms[i].name();
  }
  out += ')';
  return out;
}

bool is_variable_name(const std::string& s) {
  return !s.empty() && (std::isupper(static_cast<unsigned char>(s[0])) || s[0] == '_');
}

Atom make_atom(std::string predicate, const std::vector<std::string>& args) {
  Atom a{std::move(predicate), {}};
  a.terms.reserve(args.size());
  for (const auto& s : args)
    a.terms.push_back(is_variable_name(s) ? Term::variable(s) : Term::constant(s));
  return a;
}

Rule::Rule(Atom head, std::vector<Atom> body) : head_(std::move(head)), body_(std::move(body)) {
  if (body_.empty())
    throw Error(ErrorCode::InvalidArgument, "rule " + head_.to_string() + " has an empty body");
  std::set<std::string> body_vars;
  for (const auto& b : body_) {
    auto vs = b.variables();
    body_vars.insert(vs.begin(), vs.end());
  }
  for (const auto& v : head_.variables()) {
    if (!body_vars.contains(v))
      throw Error(ErrorCode::RangeRestriction,
                  "variable " + v + " of head " + head_.to_string() + " does not occur in the body");
  }
}

std::string Rule::to_string() const {
  std::string out = head_.to_string() + " :- ";
  for (std::size_t i = 0; i < body_.size(); ++i) {
    if (i) out += ", ";
    out += body_[i].to_string();
  }
  out += '.';
  return out;
}

Atom apply_subst(const Atom& a, const Substitution& theta) {
  Atom out{a.predicate, {}};
  out.terms.reserve(a.terms.size());
  for (const auto& t : a.terms) {
    if (t.is_variable()) {
      auto it = theta.find(t.name());
      out.terms.push_back(it == theta.end() ? t : Term::constant(it->second));
    } else {
      out.terms.push_back(t);
    }
  }
  return out;
}

std::optional<Substitution> match_atom(const Atom& pattern, const Atom& ground,
                                       const Substitution& theta_in) {
  if (pattern.predicate != ground.predicate || pattern.arity() != ground.arity()) return std::nullopt;
  Substitution theta = theta_in;
  for (std::size_t i = 0; i < pattern.terms.size(); ++i) {
    const Term& p = pattern.terms[i];
    const Term& g = ground.terms[i];
    if (g.is_variable()) return std::nullopt;
    if (p.is_constant()) {
      if (p.name() != g.name()) return std::nullopt;
      continue;
    }
    auto [it, inserted] = theta.emplace(p.name(), g.name());
    if (!inserted && it->second != g.name()) return std::nullopt;
  }
  return theta;
}

void ArityChecker::check(const Atom& a) {
  auto [it, inserted] = arities_.emplace(a.predicate, a.arity());
  if (!inserted && it->second != a.arity())
    throw Error(ErrorCode::ArityConflict, "predicate " + a.predicate + " used with arities " +
                                              std::to_string(it->second) + " and " +
                                              std::to_string(a.arity()));
}

ProbProgram::ProbProgram(std::vector<Rule> rules, std::vector<Atom> facts,
                         std::vector<double> probabilities)
    : rules_(std::move(rules)), facts_(std::move(facts)), probabilities_(std::move(probabilities)) {
  if (facts_.size() != probabilities_.size())
    throw Error(ErrorCode::InvalidArgument, "every fact needs exactly one probability");

  ArityChecker arity;
  std::set<std::string> seen_constants;
  auto note_constants = [&](const Atom& a) {
    for (const auto& t : a.terms)
      if (t.is_constant() && seen_constants.insert(t.name()).second) constants_.push_back(t.name());
  };

  for (std::size_t i = 0; i < facts_.size(); ++i) {
    const Atom& f = facts_[i];
    if (!f.is_ground())
      throw Error(ErrorCode::NonGroundFact, "fact " + f.to_string() + " is not ground");
    double p = probabilities_[i];
    if (!(p >= 0.0 && p <= 1.0))
      throw Error(ErrorCode::ProbabilityRange,
                  "probability of " + f.to_string() + " is outside [0,1]");
    arity.check(f);
    if (!fact_index_.emplace(f, i).second)
      throw Error(ErrorCode::InvalidArgument, "duplicate fact " + f.to_string());
    fact_predicates_.insert(f.predicate);
    note_constants(f);
  }
  for (const auto& r : rules_) {
    arity.check(r.head());
    rule_predicates_.insert(r.head().predicate);
    note_constants(r.head());
    for (const auto& b : r.body()) {
      arity.check(b);
      note_constants(b);
    }
  }
  for (const auto& p : rule_predicates_) {
    if (fact_predicates_.contains(p))
      throw Error(ErrorCode::PredicateOverlap,
                  "predicate " + p + " is defined by both facts and rules");
  }
  arities_ = arity.arities();
}

std::optional<std::size_t> ProbProgram::fact_index(const Atom& a) const {
  auto it = fact_index_.find(a);
  if (it == fact_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> ProbProgram::arity(const std::string& p) const {
  auto it = arities_.find(p);
  if (it == arities_.end()) return std::nullopt;
  return it->second;
}

void for_each_herbrand_atom(const ProbProgram& p, const std::function<bool(const Atom&)>& visit) {
  const auto& consts = p.constants();
  for (const auto& [pred, n] : p.arities()) {
    if (n > 0 && consts.empty()) continue;
    std::vector<std::size_t> odometer(n, 0);
    while (true) {
      Atom a{pred, {}};
      a.terms.reserve(n);
      for (auto k : odometer) a.terms.push_back(Term::constant(consts[k]));
      if (!visit(a)) return;
      std::size_t pos = 0;
      while (pos < n && ++odometer[pos] == consts.size()) odometer[pos++] = 0;
      if (pos == n) break;
    }
  }
}

std::vector<Atom> herbrand_base(const ProbProgram& p) {
  std::vector<Atom> out;
  for_each_herbrand_atom(p, [&](const Atom& a) {
    out.push_back(a);
    return true;
  });
  return out;
}

}  // namespace vpl
