#include "vproblog/context.hpp"

#include "vproblog/error.hpp"

namespace vpl {

SymbolId SymbolTable::intern(const std::string& s) {
  auto [it, inserted] = ids_.emplace(s, static_cast<SymbolId>(names_.size()));
  if (inserted) names_.push_back(s);
  return it->second;
}

std::optional<SymbolId> SymbolTable::find(const std::string& s) const {
  auto it = ids_.find(s);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::size_t AtomTable::KeyHash::operator()(const std::vector<std::uint32_t>& k) const noexcept {
  std::size_t h = k.size();
  for (auto v : k) h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::vector<std::uint32_t> AtomTable::key(PredId pred, std::span<const SymbolId> args) {
  std::vector<std::uint32_t> k;
  k.reserve(args.size() + 1);
  k.push_back(pred);
  k.insert(k.end(), args.begin(), args.end());
  return k;
}

AtomId AtomTable::intern(PredId pred, std::span<const SymbolId> args) {
  auto [it, inserted] = ids_.emplace(key(pred, args), static_cast<AtomId>(preds_.size()));
  if (inserted) {
    preds_.push_back(pred);
    args_.insert(args_.end(), args.begin(), args.end());
    offsets_.push_back(static_cast<std::uint32_t>(args_.size()));
  }
  return it->second;
}

std::optional<AtomId> AtomTable::find(PredId pred, std::span<const SymbolId> args) const {
  auto it = ids_.find(key(pred, args));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

Context::Context(ProbProgram program, std::size_t node_limit)
    : program_(std::move(program)), formulas_(node_limit) {
  const auto& facts = program_.facts();
  facts_.reserve(facts.size());
  for (std::size_t i = 0; i < facts.size(); ++i) {
    AtomId a = intern(facts[i]);
    VarId v = formulas_.register_var();
    double p = program_.probability(i);
    facts_.push_back({a, v, p});
    fact_vars_.emplace(a, v);
    weights_.set_probability(v, p);
  }
}

AtomId Context::intern(const Atom& ground) {
  if (!ground.is_ground())
    throw Error(ErrorCode::InvalidArgument, "cannot intern non-ground atom " + ground.to_string());
  PredId p = predicates_.intern(ground.predicate);
  std::vector<SymbolId> args;
  args.reserve(ground.arity());
  for (const auto& t : ground.terms) args.push_back(constants_.intern(t.name()));
  return atoms_.intern(p, args);
}

std::optional<AtomId> Context::find(const Atom& ground) const {
  if (!ground.is_ground()) return std::nullopt;
  auto p = predicates_.find(ground.predicate);
  if (!p) return std::nullopt;
  std::vector<SymbolId> args;
  for (const auto& t : ground.terms) {
    auto c = constants_.find(t.name());
    if (!c) return std::nullopt;
    args.push_back(*c);
  }
  return atoms_.find(*p, args);
}

Atom Context::atom(AtomId id) const {
  Atom a{predicates_.name(atoms_.predicate(id)), {}};
  for (auto c : atoms_.args(id)) a.terms.push_back(Term::constant(constants_.name(c)));
  return a;
}

std::optional<VarId> Context::fact_var(AtomId a) const {
  auto it = fact_vars_.find(a);
  if (it == fact_vars_.end()) return std::nullopt;
  return it->second;
}

std::optional<VarId> Context::fact_var(const Atom& a) const {
  auto id = find(a);
  if (!id) return std::nullopt;
  return fact_var(*id);
}

CompiledAtom Context::compile(const Atom& atom,
                              std::unordered_map<std::string, std::uint32_t>& vars) {
  if (atom.arity() > 64)
    throw Error(ErrorCode::InvalidArgument, "predicate " + atom.predicate + " has more than 64 arguments");
  CompiledAtom out{predicates_.intern(atom.predicate), {}};
  out.args.reserve(atom.arity());
  for (const auto& t : atom.terms) {
    if (t.is_variable()) {
      auto [it, inserted] = vars.emplace(t.name(), static_cast<std::uint32_t>(vars.size()));
      out.args.push_back({true, it->second});
    } else {
      out.args.push_back({false, constants_.intern(t.name())});
    }
  }
  return out;
}

CompiledRule Context::compile(const Rule& rule) {
  std::unordered_map<std::string, std::uint32_t> vars;
  CompiledRule out;
  // Body first so that variable numbering follows join order.
  for (const auto& b : rule.body()) out.body.push_back(compile(b, vars));
  out.head = compile(rule.head(), vars);
  out.num_vars = static_cast<std::uint32_t>(vars.size());
  return out;
}

}  // namespace vpl
