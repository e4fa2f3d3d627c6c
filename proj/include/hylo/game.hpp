#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hylo/error.hpp"

namespace hylo {

/// A finite directed graph with dense state indices 0..n-1 and per-state
/// option sets (sorted ascending, deduplicated). Construction checks index
/// ranges and canonicalizes options; well-foundedness is a separate pass
/// (validate_well_founded).
class Game {
public:
  Game() = default;

  Game(std::vector<std::vector<StateId>> options, std::vector<std::string> names = {},
       std::string label = {})
      : options_(std::move(options)), names_(std::move(names)), label_(std::move(label)) {
    const std::size_t n = options_.size();
    if (!names_.empty() && names_.size() != n)
      throw BuildError("state name table size does not match state count");
    for (auto& opts : options_) {
      for (StateId t : opts)
        if (t >= n) throw BuildError("option index " + std::to_string(t) + " out of range");
      std::sort(opts.begin(), opts.end());
      opts.erase(std::unique(opts.begin(), opts.end()), opts.end());
    }
  }

  std::size_t n_states() const { return options_.size(); }

  std::span<const StateId> options(StateId x) const {
    return {options_[x].data(), options_[x].size()};
  }

  std::size_t n_edges() const {
    std::size_t m = 0;
    for (const auto& o : options_) m += o.size();
    return m;
  }

  /// Display name of a state; falls back to the decimal index.
  std::string state_name(StateId x) const {
    if (x < names_.size() && !names_[x].empty()) return names_[x];
    return std::to_string(x);
  }

  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  bool operator==(const Game& other) const { return options_ == other.options_; }

private:
  std::vector<std::vector<StateId>> options_;
  std::vector<std::string> names_;
  std::string label_;
};

/// Convenience builder; avoids list-initialization ambiguity at call sites.
inline Game make_game(std::vector<std::vector<StateId>> options,
                      std::vector<std::string> names = {}, std::string label = {}) {
  return Game(std::move(options), std::move(names), std::move(label));
}

/// A game that passed the well-foundedness check, together with a topological
/// evaluation order (every state appears after all of its options).
///
/// Validated games are immutable. Morphisms and subgames refer to their games
/// positionally; callers keep the games alive for as long as those are used.
class ValidatedGame {
public:
  ValidatedGame() = default;

  const Game& game() const { return game_; }
  std::size_t n_states() const { return game_.n_states(); }
  std::span<const StateId> options(StateId x) const { return game_.options(x); }
  std::string state_name(StateId x) const { return game_.state_name(x); }
  const std::string& label() const { return game_.label(); }

  /// Options-before-predecessors order; hylomorphisms evaluate along it.
  std::span<const StateId> topological_order() const { return {topo_.data(), topo_.size()}; }

  friend ValidatedGame validate_well_founded(Game g);

private:
  ValidatedGame(Game g, std::vector<StateId> topo)
      : game_(std::move(g)), topo_(std::move(topo)) {}

  Game game_;
  std::vector<StateId> topo_;
};

namespace detail {

/// Locates one directed cycle among `alive` states (every alive state is
/// known to keep at least one alive option). Returns it as v0 -> ... -> v0.
inline std::vector<StateId> find_cycle(const Game& g, const std::vector<char>& alive) {
  StateId start = 0;
  while (!alive[start]) ++start;
  std::vector<StateId> path;
  std::vector<std::uint32_t> seen_at(g.n_states(), UINT32_MAX);
  StateId cur = start;
  for (;;) {
    if (seen_at[cur] != UINT32_MAX) {
      std::vector<StateId> cycle(path.begin() + seen_at[cur], path.end());
      cycle.push_back(cur);
      return cycle;
    }
    seen_at[cur] = static_cast<std::uint32_t>(path.size());
    path.push_back(cur);
    for (StateId nxt : g.options(cur))
      if (alive[nxt]) {
        cur = nxt;
        break;
      }
  }
}

}  // namespace detail

/// Checks that the option relation has no directed cycle (for finite graphs
/// this is exactly the no-infinite-path condition) and computes a
/// deterministic topological order, terminal states first.
///
/// Throws WellFoundednessError with one witness cycle.
inline ValidatedGame validate_well_founded(Game g) {
  const std::size_t n = g.n_states();
  std::vector<std::uint32_t> pending(n);  // options not yet emitted
  std::vector<std::vector<StateId>> preds(n);
  for (StateId x = 0; x < n; ++x) {
    pending[x] = static_cast<std::uint32_t>(g.options(x).size());
    for (StateId y : g.options(x)) preds[y].push_back(x);
  }
  std::priority_queue<StateId, std::vector<StateId>, std::greater<>> ready;
  for (StateId x = 0; x < n; ++x)
    if (pending[x] == 0) ready.push(x);
  std::vector<StateId> topo;
  topo.reserve(n);
  while (!ready.empty()) {
    StateId x = ready.top();
    ready.pop();
    topo.push_back(x);
    for (StateId p : preds[x])
      if (--pending[p] == 0) ready.push(p);
  }
  if (topo.size() != n) {
    std::vector<char> alive(n, 0);
    for (StateId x = 0; x < n; ++x) alive[x] = pending[x] != 0;
    auto cycle = detail::find_cycle(g, alive);
    std::string what = "option relation is not well-founded; witness cycle:";
    for (StateId v : cycle) what += " " + g.state_name(v);
    throw WellFoundednessError(what, cycle);
  }
  return ValidatedGame(std::move(g), std::move(topo));
}

/// Builds a game from (state, successor-list) declarations. Successor names
/// that are never declared become terminal states. Duplicate declarations are
/// an error; duplicate edges collapse.
inline Game build_finite_game(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& spec,
    std::string label = {}) {
  std::map<std::string, StateId> index;
  std::vector<std::string> names;
  auto lookup = [&](const std::string& name) {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    StateId id = static_cast<StateId>(names.size());
    index.emplace(name, id);
    names.push_back(name);
    return id;
  };
  for (const auto& [state, succs] : spec) {
    auto it = index.find(state);
    if (it == index.end()) {
      lookup(state);
    }
    (void)succs;
  }
  std::vector<char> declared(names.size(), 0);
  std::vector<std::vector<StateId>> options(names.size());
  for (const auto& [state, succs] : spec) {
    StateId s = index.at(state);
    if (declared[s]) throw BuildError("duplicate state declaration: " + state);
    declared[s] = 1;
    for (const auto& succ : succs) {
      StateId t = lookup(succ);
      if (t >= options.size()) options.resize(t + 1);
      options[s].push_back(t);
    }
  }
  options.resize(names.size());
  return Game(std::move(options), std::move(names), std::move(label));
}

/// True iff there is a directed path (possibly empty) from x to y.
inline bool accessible(const ValidatedGame& g, StateId x, StateId y) {
  if (x == y) return true;
  std::vector<char> seen(g.n_states(), 0);
  std::vector<StateId> stack{x};
  seen[x] = 1;
  while (!stack.empty()) {
    StateId cur = stack.back();
    stack.pop_back();
    for (StateId nxt : g.options(cur)) {
      if (nxt == y) return true;
      if (!seen[nxt]) {
        seen[nxt] = 1;
        stack.push_back(nxt);
      }
    }
  }
  return false;
}

/// A downward-closed state set of some game; members sorted ascending.
struct Subgame {
  std::vector<StateId> members;

  bool contains(StateId x) const {
    return std::binary_search(members.begin(), members.end(), x);
  }
  std::size_t size() const { return members.size(); }
  bool operator==(const Subgame& other) const { return members == other.members; }
};

namespace detail {
inline std::vector<StateId> normalize_states(std::vector<StateId> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}
}  // namespace detail

/// True iff S is downward closed: x in S and x->x' imply x' in S.
inline bool is_subgame(const ValidatedGame& g, const std::vector<StateId>& states) {
  auto s = detail::normalize_states(states);
  Subgame sub{std::move(s)};
  for (StateId x : sub.members)
    for (StateId y : g.options(x))
      if (!sub.contains(y)) return false;
  return true;
}

/// The minimum subgame containing S: everything S can reach.
inline Subgame generated_subgame(const ValidatedGame& g, const std::vector<StateId>& seed) {
  std::vector<char> in(g.n_states(), 0);
  std::vector<StateId> stack;
  for (StateId x : seed)
    if (!in[x]) {
      in[x] = 1;
      stack.push_back(x);
    }
  while (!stack.empty()) {
    StateId cur = stack.back();
    stack.pop_back();
    for (StateId nxt : g.options(cur))
      if (!in[nxt]) {
        in[nxt] = 1;
        stack.push_back(nxt);
      }
  }
  Subgame out;
  for (StateId x = 0; x < g.n_states(); ++x)
    if (in[x]) out.members.push_back(x);
  return out;
}

/// The maximum subgame contained in S: states all of whose reachable states
/// stay inside S.
inline Subgame cogenerated_subgame(const ValidatedGame& g, const std::vector<StateId>& set) {
  std::vector<char> in(g.n_states(), 0);
  for (StateId x : set) in[x] = 1;
  // Along the topological order every option is settled before its
  // predecessors, so one pass decides membership.
  std::vector<char> keep(g.n_states(), 0);
  for (StateId x : g.topological_order()) {
    if (!in[x]) continue;
    bool ok = true;
    for (StateId y : g.options(x))
      if (!keep[y]) {
        ok = false;
        break;
      }
    keep[x] = ok;
  }
  Subgame out;
  for (StateId x = 0; x < g.n_states(); ++x)
    if (keep[x]) out.members.push_back(x);
  return out;
}

/// Extracts a subgame as a standalone validated game. new_to_old maps the
/// dense indices of the result back to parent states; old_to_new is the
/// partial inverse (UINT32_MAX outside the subgame).
struct SubgameGame {
  ValidatedGame game;
  std::vector<StateId> new_to_old;
  std::vector<StateId> old_to_new;
};

inline SubgameGame restrict_to_subgame(const ValidatedGame& g, const Subgame& sub) {
  std::vector<StateId> old_to_new(g.n_states(), UINT32_MAX);
  for (std::size_t i = 0; i < sub.members.size(); ++i)
    old_to_new[sub.members[i]] = static_cast<StateId>(i);
  std::vector<std::vector<StateId>> options(sub.members.size());
  std::vector<std::string> names(sub.members.size());
  for (std::size_t i = 0; i < sub.members.size(); ++i) {
    StateId x = sub.members[i];
    names[i] = g.state_name(x);
    for (StateId y : g.options(x)) {
      if (old_to_new[y] == UINT32_MAX)
        throw BuildError("restrict_to_subgame: set is not downward closed");
      options[i].push_back(old_to_new[y]);
    }
  }
  SubgameGame out;
  out.game = validate_well_founded(Game(std::move(options), std::move(names), g.label()));
  out.new_to_old = sub.members;
  out.old_to_new = std::move(old_to_new);
  return out;
}

}  // namespace hylo
