#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "hylo/game.hpp"

namespace hylo {

class LhfsId {
public:
  LhfsId() : v_(UINT32_MAX) {}
  explicit LhfsId(std::uint32_t v) : v_(v) {}
  std::uint32_t value() const { return v_; }
  bool operator==(const LhfsId& o) const { return v_ == o.v_; }
  bool operator!=(const LhfsId& o) const { return v_ != o.v_; }
  bool operator<(const LhfsId& o) const { return v_ < o.v_; }

private:
  std::uint32_t v_;
};

/// Interning arena of labeled hereditarily finite sets: each node is a pair
/// of a set of nodes and a label. Realizes the cofree game on the label set.
/// An explicit alphabet may be declared; interning then rejects other labels.
template <class Label>
class LabeledHfsArena {
public:
  LabeledHfsArena() = default;
  explicit LabeledHfsArena(std::set<Label> alphabet) : alphabet_(std::move(alphabet)) {}

  LhfsId intern(std::vector<LhfsId> children, Label label) {
    if (alphabet_ && !alphabet_->count(label)) throw BuildError("labeled_intern: unknown label");
    std::sort(children.begin(), children.end());
    children.erase(std::unique(children.begin(), children.end()), children.end());
    for (LhfsId c : children)
      if (c.value() >= nodes_.size()) throw BuildError("labeled_intern: unknown child id");
    Key key{children, label};
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    LhfsId id(static_cast<std::uint32_t>(nodes_.size()));
    index_.emplace(std::move(key), id);
    nodes_.push_back({std::move(children), label});
    return id;
  }

  std::span<const LhfsId> children(LhfsId id) const {
    const auto& c = nodes_[id.value()].children;
    return {c.data(), c.size()};
  }

  const Label& label(LhfsId id) const { return nodes_[id.value()].label; }

  std::size_t size() const { return nodes_.size(); }

private:
  struct Node {
    std::vector<LhfsId> children;
    Label label;
  };
  using Key = std::pair<std::vector<LhfsId>, Label>;

  std::vector<Node> nodes_;
  std::map<Key, LhfsId> index_;
  std::optional<std::set<Label>> alphabet_;
};

using TruthArena = LabeledHfsArena<bool>;

inline std::string to_string(const TruthArena& arena, LhfsId id) {
  std::string out = arena.label(id) ? "T{" : "F{";
  bool first = true;
  for (LhfsId c : arena.children(id)) {
    if (!first) out += ",";
    first = false;
    out += to_string(arena, c);
  }
  return out + "}";
}

/// The characteristic map of a state set S:
///   chi_S(x) = ({ chi_S(x') | x -> x' }, x in S),
/// computed bottom-up. S classifies a subgame exactly when every value is
/// truth-closed.
inline std::vector<LhfsId> characteristic_map(TruthArena& arena, const ValidatedGame& g,
                                              const std::vector<StateId>& set) {
  std::vector<char> in(g.n_states(), 0);
  for (StateId x : set) in[x] = 1;
  std::vector<LhfsId> chi(g.n_states());
  for (StateId x : g.topological_order()) {
    std::vector<LhfsId> children;
    children.reserve(g.options(x).size());
    for (StateId y : g.options(x)) children.push_back(chi[y]);
    chi[x] = arena.intern(std::move(children), in[x] != 0);
  }
  return chi;
}

/// True iff every true-labeled node below id (inclusive) has only
/// true-labeled elements. Child ids precede parents, so one ascending pass
/// over the reachable nodes settles everything.
inline bool is_truth_closed(const TruthArena& arena, LhfsId id) {
  std::set<LhfsId> reachable;
  std::vector<LhfsId> stack{id};
  while (!stack.empty()) {
    LhfsId x = stack.back();
    stack.pop_back();
    if (!reachable.insert(x).second) continue;
    for (LhfsId c : arena.children(x)) stack.push_back(c);
  }
  std::map<LhfsId, bool> closed;
  for (LhfsId x : reachable) {  // ascending id order
    bool ok = true;
    for (LhfsId c : arena.children(x)) {
      if (arena.label(x) && !arena.label(c)) ok = false;
      if (!closed.at(c)) ok = false;
    }
    closed.emplace(x, ok);
  }
  return closed.at(id);
}

}  // namespace hylo
