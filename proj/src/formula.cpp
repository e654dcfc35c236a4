#include "vproblog/formula.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>

#include "vproblog/error.hpp"

namespace vpl {

namespace {

std::atomic<std::uint32_t> next_manager_id{1};

inline std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

void WeightMap::set(VarId v, double pos, double neg) {
  if (v >= weights_.size()) weights_.resize(v + 1);
  weights_[v] = LiteralWeights{pos, neg};
}

std::optional<LiteralWeights> WeightMap::get(VarId v) const {
  if (v >= weights_.size()) return std::nullopt;
  return weights_[v];
}

double WeightMap::max_sum_deviation() const {
  double worst = 0.0;
  for (const auto& w : weights_)
    if (w) worst = std::max(worst, std::abs(w->pos + w->neg - 1.0));
  return worst;
}

std::size_t FormulaManager::NodeKeyHash::operator()(const NodeKey& k) const noexcept {
  return mix(mix(std::hash<std::uint32_t>{}(k.var), k.low), k.high);
}

std::size_t FormulaManager::OpKeyHash::operator()(const OpKey& k) const noexcept {
  return mix(mix(static_cast<std::size_t>(k.op), k.a), k.b);
}

FormulaManager::FormulaManager(std::size_t node_limit)
    : id_(next_manager_id.fetch_add(1)), node_limit_(node_limit) {
  nodes_.push_back({kTerminalVar, FormulaRef::kFalseNode, FormulaRef::kFalseNode});
  nodes_.push_back({kTerminalVar, FormulaRef::kTrueNode, FormulaRef::kTrueNode});
}

VarId FormulaManager::register_var(std::string label) {
  VarId v = static_cast<VarId>(labels_.size());
  if (label.empty()) label = "v" + std::to_string(v);
  labels_.push_back(std::move(label));
  return v;
}

void FormulaManager::check_owner(FormulaRef x) const {
  if (x.manager_id() != id_)
    throw Error(ErrorCode::CrossManager, "formula handle belongs to a different manager");
}

FormulaManager::NodeView FormulaManager::node(NodeId n) const {
  const Node& nd = nodes_.at(n);
  return {nd.var, nd.low, nd.high};
}

NodeId FormulaManager::make_node(VarId var, NodeId low, NodeId high) {
  if (low == high) return low;
  NodeKey key{var, low, high};
  if (auto it = unique_.find(key); it != unique_.end()) return it->second;
  if (node_limit_ != kUnlimited && node_count() >= node_limit_)
    throw Error(ErrorCode::NodeLimit,
                "decision diagram exceeded the node limit of " + std::to_string(node_limit_));
  NodeId id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back({var, low, high});
  unique_.emplace(key, id);
  return id;
}

FormulaRef FormulaManager::mk_var(VarId v) {
  if (v >= labels_.size())
    throw Error(ErrorCode::UnregisteredVariable, "variable " + std::to_string(v) + " is not registered");
  return {id_, make_node(v, FormulaRef::kFalseNode, FormulaRef::kTrueNode)};
}

NodeId FormulaManager::apply(Op op, NodeId a, NodeId b) {
  constexpr NodeId F = FormulaRef::kFalseNode;
  constexpr NodeId T = FormulaRef::kTrueNode;
  if (op == Op::And) {
    if (a == F || b == F) return F;
    if (a == T) return b;
    if (b == T) return a;
  } else {
    if (a == T || b == T) return T;
    if (a == F) return b;
    if (b == F) return a;
  }
  if (a == b) return a;
  if (a > b) std::swap(a, b);

  OpKey key{op, a, b};
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  const Node na = nodes_[a];
  const Node nb = nodes_[b];
  VarId top = std::min(na.var, nb.var);
  NodeId a_lo = na.var == top ? na.low : a;
  NodeId a_hi = na.var == top ? na.high : a;
  NodeId b_lo = nb.var == top ? nb.low : b;
  NodeId b_hi = nb.var == top ? nb.high : b;

  NodeId low = apply(op, a_lo, b_lo);
  NodeId high = apply(op, a_hi, b_hi);
  NodeId result = make_node(top, low, high);
  cache_.emplace(key, result);
  return result;
}

FormulaRef FormulaManager::and_(FormulaRef x, FormulaRef y) {
  check_owner(x);
  check_owner(y);
  return {id_, apply(Op::And, x.node(), y.node())};
}

FormulaRef FormulaManager::or_(FormulaRef x, FormulaRef y) {
  check_owner(x);
  check_owner(y);
  return {id_, apply(Op::Or, x.node(), y.node())};
}

bool FormulaManager::equivalent(FormulaRef x, FormulaRef y) const {
  check_owner(x);
  check_owner(y);
  return x.node() == y.node();
}

bool FormulaManager::eval(FormulaRef x, const TotalChoice& choice) const {
  check_owner(x);
  NodeId n = x.node();
  while (n > FormulaRef::kTrueNode) {
    const Node& nd = nodes_[n];
    n = choice.contains(nd.var) ? nd.high : nd.low;
  }
  return n == FormulaRef::kTrueNode;
}

double FormulaManager::wmc(FormulaRef x, const WeightMap& weights) const {
  check_owner(x);
  if (weights.max_sum_deviation() > 1e-9)
    throw Error(ErrorCode::WeightSum, "literal weights of some variable do not sum to one");

  std::unordered_map<NodeId, double> memo;
  auto rec = [&](auto&& self, NodeId n) -> double {
    if (n == FormulaRef::kFalseNode) return 0.0;
    if (n == FormulaRef::kTrueNode) return 1.0;
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    const Node& nd = nodes_[n];
    auto w = weights.get(nd.var);
    if (!w) throw Error(ErrorCode::MissingWeight, "no weight for variable " + labels_[nd.var]);
    double value = w->neg * self(self, nd.low) + w->pos * self(self, nd.high);
    memo.emplace(n, value);
    return value;
  };
  return rec(rec, x.node());
}

std::vector<VarId> FormulaManager::support(FormulaRef x) const {
  check_owner(x);
  std::set<VarId> vars;
  std::vector<NodeId> stack{x.node()};
  std::unordered_map<NodeId, bool> seen;
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    if (n <= FormulaRef::kTrueNode || !seen.emplace(n, true).second) continue;
    vars.insert(nodes_[n].var);
    stack.push_back(nodes_[n].low);
    stack.push_back(nodes_[n].high);
  }
  return {vars.begin(), vars.end()};
}

std::size_t FormulaManager::size(FormulaRef x) const {
  check_owner(x);
  std::unordered_map<NodeId, bool> seen;
  std::vector<NodeId> stack{x.node()};
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    if (n <= FormulaRef::kTrueNode || !seen.emplace(n, true).second) continue;
    stack.push_back(nodes_[n].low);
    stack.push_back(nodes_[n].high);
  }
  return seen.size();
}

std::string FormulaManager::to_expr(FormulaRef x) const {
  check_owner(x);
  // Monotone Shannon expansion: f = low | (v & high).
  auto rec = [&](auto&& self, NodeId n) -> std::string {
    if (n == FormulaRef::kFalseNode) return "false";
    if (n == FormulaRef::kTrueNode) return "true";
    const Node& nd = nodes_[n];
    std::string var = labels_[nd.var];
    std::string pos = nd.high == FormulaRef::kTrueNode ? var : "and(" + var + ", " + self(self, nd.high) + ")";
    if (nd.low == FormulaRef::kFalseNode) return pos;
    return "or(" + pos + ", " + self(self, nd.low) + ")";
  };
  return rec(rec, x.node());
}

}  // namespace vpl
