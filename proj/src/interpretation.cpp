#include "vproblog/interpretation.hpp"

#include <algorithm>

#include "vproblog/error.hpp"

namespace vpl {

std::size_t ParamInterp::KeyHash::operator()(const std::vector<SymbolId>& k) const noexcept {
  std::size_t h = k.size();
  for (auto v : k) h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::optional<FormulaRef> ParamInterp::lookup(AtomId a) const {
  auto it = current_.find(a);
  if (it == current_.end()) return std::nullopt;
  return versions_[it->second].formula;
}

std::optional<VersionId> ParamInterp::current_version(AtomId a) const {
  auto it = current_.find(a);
  if (it == current_.end()) return std::nullopt;
  return it->second;
}

std::vector<SymbolId> ParamInterp::project(AtomId a, std::uint64_t mask) const {
  std::vector<SymbolId> key;
  auto args = atoms_->args(a);
  for (std::size_t i = 0; i < args.size(); ++i)
    if (mask & (std::uint64_t{1} << i)) key.push_back(args[i]);
  return key;
}

VersionId ParamInterp::set(AtomId a, FormulaRef formula) {
  if (formula.is_false())
    throw Error(ErrorCode::InvalidArgument, "interpretations never store a false formula");
  VersionId v = static_cast<VersionId>(versions_.size());
  versions_.push_back({a, formula, false});
  auto [it, inserted] = current_.emplace(a, v);
  if (!inserted) {
    versions_[it->second].outdated = true;
    ++outdated_count_;
    it->second = v;
    return v;
  }
  PredId pred = atoms_->predicate(a);
  by_pred_[pred].push_back(a);
  for (auto& [k, index] : indexes_)
    if (k.first == pred) index[project(a, k.second)].push_back(a);
  return v;
}

std::vector<std::pair<AtomId, FormulaRef>> ParamInterp::entries() const {
  std::vector<std::pair<AtomId, FormulaRef>> out;
  out.reserve(current_.size());
  for (const auto& [a, v] : current_) out.emplace_back(a, versions_[v].formula);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

std::span<const AtomId> ParamInterp::atoms_of(PredId pred) const {
  auto it = by_pred_.find(pred);
  if (it == by_pred_.end()) return {};
  return it->second;
}

std::span<const AtomId> ParamInterp::probe(PredId pred, std::uint64_t mask,
                                           std::span<const SymbolId> key) const {
  if (mask == 0) return atoms_of(pred);
  auto [it, inserted] = indexes_.try_emplace({pred, mask});
  Index& index = it->second;
  if (inserted)
    for (AtomId a : atoms_of(pred)) index[project(a, mask)].push_back(a);
  auto hit = index.find(std::vector<SymbolId>(key.begin(), key.end()));
  if (hit == index.end()) return {};
  return hit->second;
}

void ParamInterp::finalize() {
  if (outdated_count_ == 0) return;
  std::vector<Version> kept;
  kept.reserve(current_.size());
  for (const auto& v : versions_)
    if (!v.outdated) kept.push_back(v);
  versions_ = std::move(kept);
  for (VersionId i = 0; i < versions_.size(); ++i) current_[versions_[i].atom] = i;
  outdated_count_ = 0;
}

bool ParamInterp::same_entries(const ParamInterp& other) const {
  if (size() != other.size()) return false;
  for (const auto& [a, v] : current_) {
    auto f = other.lookup(a);
    if (!f || *f != versions_[v].formula) return false;
  }
  return true;
}

}  // namespace vpl
