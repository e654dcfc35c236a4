#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace vpl {

using VarId = std::uint32_t;
using NodeId = std::uint32_t;

// Handle into a FormulaManager. Two handles from the same manager are equal
// iff the formulas they denote are logically equivalent.
class FormulaRef {
 public:
  FormulaRef() = default;

  NodeId node() const { return node_; }
  std::uint32_t manager_id() const { return manager_; }
  bool is_true() const { return node_ == kTrueNode; }
  bool is_false() const { return node_ == kFalseNode; }
  bool is_constant() const { return node_ <= kTrueNode; }

  friend bool operator==(const FormulaRef&, const FormulaRef&) = default;

  static constexpr NodeId kFalseNode = 0;
  static constexpr NodeId kTrueNode = 1;

 private:
  friend class FormulaManager;
  FormulaRef(std::uint32_t manager, NodeId node) : manager_(manager), node_(node) {}

  std::uint32_t manager_ = 0;
  NodeId node_ = kFalseNode;
};

struct FormulaRefHash {
  std::size_t operator()(const FormulaRef& f) const noexcept {
    return std::hash<std::uint64_t>{}((std::uint64_t{f.manager_id()} << 32) | f.node());
  }
};

// Truth assignment over fact variables: listed variables are true.
class TotalChoice {
 public:
  TotalChoice() = default;
  TotalChoice(std::initializer_list<VarId> vars) {
    for (auto v : vars) insert(v);
  }

  void insert(VarId v) {
    if (v >= bits_.size()) bits_.resize(v + 1, false);
    bits_[v] = true;
  }
  bool contains(VarId v) const { return v < bits_.size() && bits_[v]; }

 private:
  std::vector<bool> bits_;
};

struct LiteralWeights {
  double pos = 0.0;
  double neg = 0.0;
};

class WeightMap {
 public:
  void set(VarId v, double pos, double neg);
  void set_probability(VarId v, double p) { set(v, p, 1.0 - p); }
  std::optional<LiteralWeights> get(VarId v) const;
  std::size_t size() const { return weights_.size(); }

  // Largest |pos + neg - 1| over all recorded pairs.
  double max_sum_deviation() const;

 private:
  std::vector<std::optional<LiteralWeights>> weights_;
};

// Reduced ordered binary decision diagram store. Variable order is
// registration order. Only conjunction and disjunction are offered since the
// programs handled here are monotone.
class FormulaManager {
 public:
  static constexpr std::size_t kUnlimited = 0;

  explicit FormulaManager(std::size_t node_limit = kUnlimited);
  FormulaManager(const FormulaManager&) = delete;
  FormulaManager& operator=(const FormulaManager&) = delete;

  VarId register_var(std::string label = {});
  std::size_t num_vars() const { return labels_.size(); }
  const std::string& label(VarId v) const { return labels_.at(v); }

  FormulaRef top() const { return {id_, FormulaRef::kTrueNode}; }
  FormulaRef bottom() const { return {id_, FormulaRef::kFalseNode}; }
  FormulaRef mk_var(VarId v);

  FormulaRef and_(FormulaRef x, FormulaRef y);
  FormulaRef or_(FormulaRef x, FormulaRef y);
  bool equivalent(FormulaRef x, FormulaRef y) const;

  bool eval(FormulaRef x, const TotalChoice& choice) const;
  double wmc(FormulaRef x, const WeightMap& weights) const;

  // Variables the formula depends on, ascending.
  std::vector<VarId> support(FormulaRef x) const;
  // Internal nodes reachable from x.
  std::size_t size(FormulaRef x) const;
  // Internal nodes allocated so far.
  std::size_t node_count() const { return nodes_.size() - 2; }
  std::size_t node_limit() const { return node_limit_; }

  // Debug rendering as nested or(...)/and(...)/vN; assumes a monotone formula.
  std::string to_expr(FormulaRef x) const;

  struct NodeView {
    VarId var;
    NodeId low;
    NodeId high;
  };
  NodeView node(NodeId n) const;
  std::size_t unique_table_size() const { return unique_.size(); }
  std::uint32_t id() const { return id_; }

  static constexpr VarId kTerminalVar = 0xffffffffu;

 private:
  enum class Op : std::uint8_t { And, Or };

  struct Node {
    VarId var;
    NodeId low;
    NodeId high;
  };
  struct NodeKey {
    VarId var;
    NodeId low;
    NodeId high;
    friend bool operator==(const NodeKey&, const NodeKey&) = default;
  };
  struct NodeKeyHash {
    std::size_t operator()(const NodeKey& k) const noexcept;
  };
  struct OpKey {
    Op op;
    NodeId a;
    NodeId b;
    friend bool operator==(const OpKey&, const OpKey&) = default;
  };
  struct OpKeyHash {
    std::size_t operator()(const OpKey& k) const noexcept;
  };

  void check_owner(FormulaRef x) const;
  NodeId make_node(VarId var, NodeId low, NodeId high);
  NodeId apply(Op op, NodeId a, NodeId b);

  std::uint32_t id_;
  std::size_t node_limit_;
  std::vector<Node> nodes_;
  std::vector<std::string> labels_;
  std::unordered_map<NodeKey, NodeId, NodeKeyHash> unique_;
  std::unordered_map<OpKey, NodeId, OpKeyHash> cache_;
};

}  // namespace vpl
