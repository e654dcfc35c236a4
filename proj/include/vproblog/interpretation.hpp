#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vproblog/context.hpp"
#include "vproblog/formula.hpp"

namespace vpl {

using VersionId = std::uint32_t;

// Parameterized interpretation: ground atom -> most recent formula.
//
// Every assignment creates a new version; the version it supersedes is
// marked outdated rather than erased, so the store only ever grows until
// finalize() projects the outdated versions away. Atoms never lose their
// entry once they have one, which lets the per-predicate join indexes be
// maintained by insertion only.
class ParamInterp {
 public:
  explicit ParamInterp(const AtomTable& atoms) : atoms_(&atoms) {}

  std::optional<FormulaRef> lookup(AtomId a) const;
  bool contains(AtomId a) const { return current_.contains(a); }

  // Records a new formula for a. FALSE is rejected: atoms whose formula is
  // equivalent to false are simply absent.
  VersionId set(AtomId a, FormulaRef formula);

  std::size_t size() const { return current_.size(); }
  // Current entries ordered by atom id.
  std::vector<std::pair<AtomId, FormulaRef>> entries() const;

  // Atoms of a predicate that have an entry, in insertion order.
  std::span<const AtomId> atoms_of(PredId pred) const;

  // Atoms with an entry whose constants at the positions in `mask` equal
  // `key` (in position order). mask == 0 is the full relation.
  std::span<const AtomId> probe(PredId pred, std::uint64_t mask,
                                std::span<const SymbolId> key) const;

  // Atoms whose formula changed in the latest step.
  const std::vector<AtomId>& delta() const { return delta_; }
  void set_delta(std::vector<AtomId> delta) { delta_ = std::move(delta); }

  std::size_t version_count() const { return versions_.size(); }
  std::size_t outdated_count() const { return outdated_count_; }
  bool is_outdated(VersionId v) const { return versions_.at(v).outdated; }
  std::optional<VersionId> current_version(AtomId a) const;

  // Drops outdated versions and renumbers the survivors.
  void finalize();

  // Same atom set, handle-equal formulas.
  bool same_entries(const ParamInterp& other) const;

 private:
  struct Version {
    AtomId atom;
    FormulaRef formula;
    bool outdated;
  };
  struct KeyHash {
    std::size_t operator()(const std::vector<SymbolId>& k) const noexcept;
  };
  using Index = std::unordered_map<std::vector<SymbolId>, std::vector<AtomId>, KeyHash>;

  std::vector<SymbolId> project(AtomId a, std::uint64_t mask) const;

  const AtomTable* atoms_;
  std::vector<Version> versions_;
  std::unordered_map<AtomId, VersionId> current_;
  std::size_t outdated_count_ = 0;
  std::vector<AtomId> delta_;
  std::unordered_map<PredId, std::vector<AtomId>> by_pred_;
  mutable std::map<std::pair<PredId, std::uint64_t>, Index> indexes_;
};

}  // namespace vpl
