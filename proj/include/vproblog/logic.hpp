#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace vpl {

// A term is a variable or a constant. Variables start with an uppercase
// letter or an underscore in the surface syntax, but the type itself does not
// care about spelling.
class Term {
 public:
  enum class Kind { Variable, Constant };

  static Term variable(std::string name);
  static Term constant(std::string symbol);

  Kind kind() const { return kind_; }
  bool is_variable() const { return kind_ == Kind::Variable; }
  bool is_constant() const { return kind_ == Kind::Constant; }
  const std::string& name() const { return name_; }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;

 private:
  Term(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

  Kind kind_;
  std::string name_;
};

struct Atom {
  std::string predicate;
  std::vector<Term> terms;

  std::size_t arity() const { return terms.size(); }
  bool is_ground() const;
  std::set<std::string> variables() const;
  std::string to_string() const;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

// Convenience for tests and generated programs: "e", {"a", "X"} builds e(a,X)
// using the usual spelling convention to tell variables from constants.
Atom make_atom(std::string predicate, const std::vector<std::string>& args);
bool is_variable_name(const std::string& s);

// A definite clause with a nonempty body. Construction enforces range
// restriction: every head variable occurs in the body.
class Rule {
 public:
  Rule(Atom head, std::vector<Atom> body);

  const Atom& head() const { return head_; }
  const std::vector<Atom>& body() const { return body_; }
  std::string to_string() const;

  friend bool operator==(const Rule&, const Rule&) = default;

 private:
  Atom head_;
  std::vector<Atom> body_;
};

// Variable name -> constant symbol.
using Substitution = std::map<std::string, std::string>;

Atom apply_subst(const Atom& a, const Substitution& theta);

// Least extension of theta_in under which pattern becomes ground; nullopt on
// predicate/arity mismatch or conflicting bindings.
std::optional<Substitution> match_atom(const Atom& pattern, const Atom& ground,
                                       const Substitution& theta_in);

// The triple (R, F, pi). Facts keep their program order, which also fixes the
// decision-diagram variable order downstream.
class ProbProgram {
 public:
  ProbProgram() = default;
  ProbProgram(std::vector<Rule> rules, std::vector<Atom> facts,
              std::vector<double> probabilities);

  const std::vector<Rule>& rules() const { return rules_; }
  const std::vector<Atom>& facts() const { return facts_; }
  const std::vector<double>& probabilities() const { return probabilities_; }
  double probability(std::size_t fact_index) const { return probabilities_[fact_index]; }
  std::optional<std::size_t> fact_index(const Atom& a) const;

  bool is_fact_predicate(const std::string& p) const { return fact_predicates_.contains(p); }
  bool is_rule_predicate(const std::string& p) const { return rule_predicates_.contains(p); }
  bool has_predicate(const std::string& p) const { return arities_.contains(p); }
  std::optional<std::size_t> arity(const std::string& p) const;
  const std::map<std::string, std::size_t>& arities() const { return arities_; }

  // Constants in order of first appearance (facts first, then rules).
  const std::vector<std::string>& constants() const { return constants_; }

 private:
  std::vector<Rule> rules_;
  std::vector<Atom> facts_;
  std::vector<double> probabilities_;
  std::map<Atom, std::size_t> fact_index_;
  std::set<std::string> fact_predicates_;
  std::set<std::string> rule_predicates_;
  std::map<std::string, std::size_t> arities_;
  std::vector<std::string> constants_;
};

// Records predicate arities and rejects a predicate used with two different
// arities.
class ArityChecker {
 public:
  void check(const Atom& a);
  const std::map<std::string, std::size_t>& arities() const { return arities_; }

 private:
  std::map<std::string, std::size_t> arities_;
};

// Visits every ground atom constructible from the program's constants and
// predicates; stops early when the visitor returns false.
void for_each_herbrand_atom(const ProbProgram& p, const std::function<bool(const Atom&)>& visit);
std::vector<Atom> herbrand_base(const ProbProgram& p);

}  // namespace vpl
