#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "vproblog/formula.hpp"
#include "vproblog/logic.hpp"

// Brute-force ground truth. Nothing here uses the evaluator; the only shared
// code is the logic-core types and matching.
namespace vpl::oracle {

struct Options {
  // Maximum number of uncertain facts (0 < p < 1) to enumerate over.
  std::size_t cap = 20;
};

// Least Herbrand model of facts U rules by naive boolean iteration.
std::set<Atom> boolean_tp_least_model(const std::vector<Rule>& rules, const std::set<Atom>& facts);

// Sum over total choices C with C U R |= a of the probability of C. Facts with
// probability 0 or 1 are fixed instead of enumerated.
double enumerate_prob(const ProbProgram& program, const Atom& a, const Options& options = {});

// Marginals of every atom that holds in at least one world.
std::map<Atom, double> enumerate_all(const ProbProgram& program, const Options& options = {});

// Ground entailment tester for one program: grounds the rules once against
// the all-facts model, then answers "which atoms hold under this choice" by
// propagation. Choices are given as one flag per program fact.
class WorldModel {
 public:
  explicit WorldModel(const ProbProgram& program);

  // Atoms entailed when exactly the flagged facts are true.
  std::set<Atom> entailed(const std::vector<bool>& fact_true) const;
  bool entails(const std::vector<bool>& fact_true, const Atom& a) const;

  // Truth value of every atom of atoms() under the choice.
  std::vector<bool> propagate(const std::vector<bool>& fact_true) const;

  const std::vector<Atom>& atoms() const { return atoms_; }

 private:
  struct GroundRule {
    std::size_t head;
    std::vector<std::size_t> body;
  };
  std::vector<Atom> atoms_;
  std::map<Atom, std::size_t> ids_;
  std::vector<std::size_t> fact_ids_;
  std::vector<GroundRule> ground_;
};

// Direct summation of the weighted model count over all assignments to the
// formula's variables.
double brute_wmc(const FormulaManager& fm, FormulaRef x, const WeightMap& w, std::size_t cap = 20);

}  // namespace vpl::oracle
