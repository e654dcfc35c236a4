#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "vproblog/formula.hpp"
#include "vproblog/logic.hpp"

namespace vpl {

using SymbolId = std::uint32_t;
using PredId = std::uint32_t;
using AtomId = std::uint32_t;

class SymbolTable {
 public:
  SymbolId intern(const std::string& s);
  std::optional<SymbolId> find(const std::string& s) const;
  const std::string& name(SymbolId id) const { return names_[id]; }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, SymbolId> ids_;
};

// Interns ground atoms as (predicate, constant...) tuples.
class AtomTable {
 public:
  AtomId intern(PredId pred, std::span<const SymbolId> args);
  std::optional<AtomId> find(PredId pred, std::span<const SymbolId> args) const;

  PredId predicate(AtomId a) const { return preds_[a]; }
  std::span<const SymbolId> args(AtomId a) const {
    return {args_.data() + offsets_[a], offsets_[a + 1] - offsets_[a]};
  }
  std::size_t size() const { return preds_.size(); }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint32_t>& k) const noexcept;
  };
  static std::vector<std::uint32_t> key(PredId pred, std::span<const SymbolId> args);

  std::vector<PredId> preds_;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<SymbolId> args_;
  std::unordered_map<std::vector<std::uint32_t>, AtomId, KeyHash> ids_;
};

// An argument slot of a compiled atom: a constant or a rule-local variable.
struct Slot {
  bool is_var;
  std::uint32_t value;  // variable index or SymbolId
};

struct CompiledAtom {
  PredId pred;
  std::vector<Slot> args;
};

struct CompiledRule {
  CompiledAtom head;
  std::vector<CompiledAtom> body;
  std::uint32_t num_vars = 0;
};

struct FactVar {
  AtomId atom;
  VarId var;
  double probability;
};

// Per-program state shared by every evaluation strategy over that program:
// symbol interning, the ground atom table and the decision-diagram manager
// with one registered variable per fact (in program order). Solving the same
// program with different strategies on one Context yields comparable handles.
class Context {
 public:
  explicit Context(ProbProgram program, std::size_t node_limit = FormulaManager::kUnlimited);
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;

  const ProbProgram& program() const { return program_; }
  FormulaManager& formulas() { return formulas_; }
  const FormulaManager& formulas() const { return formulas_; }
  const AtomTable& atoms() const { return atoms_; }
  AtomTable& atoms() { return atoms_; }
  SymbolTable& predicates() { return predicates_; }
  const SymbolTable& predicates() const { return predicates_; }
  SymbolTable& constants() { return constants_; }
  const SymbolTable& constants() const { return constants_; }

  AtomId intern(const Atom& ground);
  std::optional<AtomId> find(const Atom& ground) const;
  Atom atom(AtomId id) const;
  std::string render(AtomId id) const { return atom(id).to_string(); }

  const std::vector<FactVar>& facts() const { return facts_; }
  std::optional<VarId> fact_var(AtomId a) const;
  std::optional<VarId> fact_var(const Atom& a) const;
  const WeightMap& weights() const { return weights_; }

  CompiledRule compile(const Rule& rule);
  CompiledAtom compile(const Atom& atom, std::unordered_map<std::string, std::uint32_t>& vars);

 private:
  ProbProgram program_;
  FormulaManager formulas_;
  SymbolTable predicates_;
  SymbolTable constants_;
  AtomTable atoms_;
  std::vector<FactVar> facts_;
  std::unordered_map<AtomId, VarId> fact_vars_;
  WeightMap weights_;
};

}  // namespace vpl
