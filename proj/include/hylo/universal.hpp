#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hylo/game.hpp"
#include "hylo/hfs.hpp"
#include "hylo/labeled_hfs.hpp"
#include "hylo/morphism.hpp"

namespace hylo {

/// Equalizer of a parallel pair: the states all of whose reachable states
/// agree under f and g; equivalently the maximum subgame inside the
/// set-equalizer.
inline Subgame equalizer(const GameMorphism& f, const GameMorphism& g,
                         const ValidatedGame& source, const ValidatedGame& target) {
  if (f.map.size() != source.n_states() || g.map.size() != source.n_states())
    throw SourceMismatch("equalizer: morphisms disagree on the source");
  for (StateId x = 0; x < source.n_states(); ++x)
    if (f(x) >= target.n_states() || g(x) >= target.n_states())
      throw SourceMismatch("equalizer: morphisms disagree on the target");
  std::vector<StateId> agree;
  for (StateId x = 0; x < source.n_states(); ++x)
    if (f(x) == g(x)) agree.push_back(x);
  return cogenerated_subgame(source, agree);
}

/// Disjoint union of games; X keeps its indices, Y is shifted by |X|.
struct Coproduct {
  ValidatedGame game;
  GameMorphism inject_x, inject_y;
};

inline Coproduct coproduct(const ValidatedGame& x_game, const ValidatedGame& y_game) {
  const std::size_t nx = x_game.n_states(), ny = y_game.n_states();
  std::vector<std::vector<StateId>> options(nx + ny);
  std::vector<std::string> names(nx + ny);
  for (StateId x = 0; x < nx; ++x) {
    names[x] = "L" + x_game.state_name(x);
    for (StateId xp : x_game.options(x)) options[x].push_back(xp);
  }
  for (StateId y = 0; y < ny; ++y) {
    names[nx + y] = "R" + y_game.state_name(y);
    for (StateId yp : y_game.options(y)) options[nx + y].push_back(static_cast<StateId>(nx + yp));
  }
  Coproduct out;
  out.game = validate_well_founded(
      Game(std::move(options), std::move(names), x_game.label() + "+" + y_game.label()));
  std::vector<StateId> ix(nx), iy(ny);
  for (StateId x = 0; x < nx; ++x) ix[x] = x;
  for (StateId y = 0; y < ny; ++y) iy[y] = static_cast<StateId>(nx + y);
  out.inject_x = check_morphism(ix, x_game, out.game);
  out.inject_y = check_morphism(iy, y_game, out.game);
  return out;
}

/// Quotient by the equivalence closure of a pair list. Quotient options are
/// the images of source options. The result must stay well-founded; a cycle
/// in the induced graph is an error (arbitrary pair lists are strictly more
/// general than coequalizers of game morphisms, which always stay games).
struct QuotientGame {
  std::vector<StateId> class_of;  // source state -> quotient state
  ValidatedGame quotient;
};

inline QuotientGame quotient_coequalizer(const ValidatedGame& g,
                                         const std::vector<std::pair<StateId, StateId>>& pairs) {
  const std::size_t n = g.n_states();
  std::vector<StateId> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](StateId v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) throw BuildError("quotient_coequalizer: state out of range");
    StateId ra = find(a), rb = find(b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  QuotientGame out;
  out.class_of.assign(n, UINT32_MAX);
  std::vector<StateId> rep;  // quotient state -> least source representative
  for (StateId x = 0; x < n; ++x) {
    StateId r = find(x);
    if (out.class_of[r] == UINT32_MAX) {
      out.class_of[r] = static_cast<StateId>(rep.size());
      rep.push_back(r);
    }
    out.class_of[x] = out.class_of[r];
  }
  std::vector<std::vector<StateId>> options(rep.size());
  std::vector<std::string> names(rep.size());
  for (StateId x = 0; x < n; ++x)
    for (StateId y : g.options(x)) options[out.class_of[x]].push_back(out.class_of[y]);
  for (std::size_t c = 0; c < rep.size(); ++c) names[c] = "(" + g.state_name(rep[c]) + ")";
  out.quotient = validate_well_founded(
      Game(std::move(options), std::move(names), g.label() + "/~"));
  return out;
}

// ---------------------------------------------------------------------------
// Hom-set enumeration and isomorphism.

/// All game morphisms X -> Y, by backtracking in ascending state order with
/// ascending target candidates (so the output order is deterministic).
/// Throws BudgetExceeded when more than `limit` morphisms exist.
inline std::vector<GameMorphism> enumerate_homs(const ValidatedGame& x_game,
                                                const ValidatedGame& y_game,
                                                std::size_t limit = 1000000) {
  const std::size_t nx = x_game.n_states(), ny = y_game.n_states();
  std::vector<GameMorphism> found;
  if (nx == 0) {
    found.push_back(GameMorphism{});
    return found;
  }
  if (ny == 0) return found;

  std::vector<StateId> assign(nx, UINT32_MAX);
  // Quick structural filter: terminal states must map to terminal states,
  // non-terminal to non-terminal.
  auto candidate_ok = [&](StateId x, StateId y) {
    if (x_game.options(x).empty() != y_game.options(y).empty()) return false;
    // Graph condition + no unliftable move, restricted to assigned states.
    auto yopts = y_game.options(y);
    for (StateId xp : x_game.options(x))
      if (assign[xp] != UINT32_MAX &&
          !std::binary_search(yopts.begin(), yopts.end(), assign[xp]))
        return false;
    // Edges into x from already-assigned predecessors.
    for (StateId w = 0; w < x; ++w) {
      if (assign[w] == UINT32_MAX) continue;
      auto wopts = x_game.options(w);
      if (std::binary_search(wopts.begin(), wopts.end(), x)) {
        auto wtopts = y_game.options(assign[w]);
        if (!std::binary_search(wtopts.begin(), wtopts.end(), y)) return false;
      }
    }
    return true;
  };
  auto complete_ok = [&](StateId x) {
    // Once all options of x are assigned, the image must be exactly the
    // option set of the image state.
    for (StateId xp : x_game.options(x))
      if (assign[xp] == UINT32_MAX) return true;
    std::vector<StateId> image;
    for (StateId xp : x_game.options(x)) image.push_back(assign[xp]);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    auto yopts = y_game.options(assign[x]);
    return image.size() == yopts.size() &&
           std::equal(image.begin(), image.end(), yopts.begin());
  };
  auto rec = [&](auto&& self, StateId x) -> void {
    if (x == nx) {
      if (is_morphism(assign, x_game, y_game)) {
        if (found.size() >= limit)
          throw BudgetExceeded("enumerate_homs: more than " + std::to_string(limit) +
                               " morphisms");
        found.push_back(GameMorphism{assign});
      }
      return;
    }
    for (StateId y = 0; y < ny; ++y) {
      if (!candidate_ok(x, y)) continue;
      assign[x] = y;
      bool ok = true;
      for (StateId w = 0; w <= x && ok; ++w)
        if (assign[w] != UINT32_MAX) ok = complete_ok(w);
      if (ok) self(self, x + 1);
      assign[x] = UINT32_MAX;
    }
  };
  rec(rec, 0);
  return found;
}

inline std::size_t hom_count(const ValidatedGame& x_game, const ValidatedGame& y_game,
                             std::size_t limit = 1000000) {
  return enumerate_homs(x_game, y_game, limit).size();
}

/// Isomorphism test: a bijective assignment whose forward and inverse maps
/// both pass check_morphism; equivalently an edge-preserving-and-reflecting
/// bijection. Candidates are pruned by the reduction map, which every
/// isomorphism preserves.
struct IsomorphismWitness {
  bool isomorphic = false;
  GameMorphism forward;  // valid only when isomorphic
};

inline IsomorphismWitness are_isomorphic(const ValidatedGame& x_game,
                                         const ValidatedGame& y_game) {
  IsomorphismWitness out;
  const std::size_t n = x_game.n_states();
  if (y_game.n_states() != n) return out;
  if (n == 0) {
    out.isomorphic = true;
    return out;
  }
  HfsArena arena;
  auto xi_x = xi_reduce(arena, x_game);
  auto xi_y = xi_reduce(arena, y_game);
  {
    auto mx = xi_x, my = xi_y;
    std::sort(mx.begin(), mx.end());
    std::sort(my.begin(), my.end());
    if (mx != my) return out;  // xi multisets differ
  }
  // Assign X states in topological order so every option is already placed.
  std::vector<StateId> order(x_game.topological_order().begin(),
                             x_game.topological_order().end());
  std::vector<StateId> assign(n, UINT32_MAX);
  std::vector<char> used(n, 0);
  std::vector<std::vector<StateId>> y_preds(n);
  for (StateId y = 0; y < n; ++y)
    for (StateId yp : y_game.options(y)) y_preds[yp].push_back(y);

  auto rec = [&](auto&& self, std::size_t k) -> bool {
    if (k == n) return true;
    StateId x = order[k];
    for (StateId y = 0; y < n; ++y) {
      if (used[y]) continue;
      if (!(xi_x[x] == xi_y[y])) continue;
      if (x_game.options(x).size() != y_game.options(y).size()) continue;
      // Options of x are assigned already; their images must be exactly the
      // options of y.
      std::vector<StateId> image;
      for (StateId xp : x_game.options(x)) image.push_back(assign[xp]);
      std::sort(image.begin(), image.end());
      auto yopts = y_game.options(y);
      if (!std::equal(image.begin(), image.end(), yopts.begin(), yopts.end())) continue;
      assign[x] = y;
      used[y] = 1;
      if (self(self, k + 1)) return true;
      assign[x] = UINT32_MAX;
      used[y] = 0;
    }
    return false;
  };
  if (!rec(rec, 0)) return out;
  // The search maintains edge preservation in both directions; keep the
  // final check anyway.
  std::vector<StateId> inverse(n);
  for (StateId x = 0; x < n; ++x) inverse[assign[x]] = x;
  out.forward = check_morphism(assign, x_game, y_game);
  check_morphism(inverse, y_game, x_game);
  out.isomorphic = true;
  return out;
}

// ---------------------------------------------------------------------------
// Binary products.

/// The categorical product, built as the subgame of the cofree game on
/// X x Y spanned by the enumerative nodes: a node (S, (x, y)) is admitted
/// exactly when S is a set of admitted nodes whose first labels are the
/// options of x and second labels the options of y, both exactly.
struct ProductGame {
  ValidatedGame game;
  std::vector<std::pair<StateId, StateId>> labels;  // product state -> (x, y)
  GameMorphism proj_x, proj_y;

  // Node identity bookkeeping for pairing morphisms into the product.
  std::map<std::uint32_t, StateId> state_of_node;  // labeled-arena id -> state
};

namespace detail {

struct ProductBuilder {
  using Label = std::pair<StateId, StateId>;

  const ValidatedGame& gx;
  const ValidatedGame& gy;
  std::size_t budget;
  LabeledHfsArena<Label> arena;
  std::vector<std::vector<LhfsId>> by_label;  // admitted nodes per (x, y)
  std::vector<LhfsId> admitted;               // in creation (= id) order
  std::size_t candidates_spent = 0;

  ProductBuilder(const ValidatedGame& x, const ValidatedGame& y, std::size_t b)
      : gx(x), gy(y), budget(b), by_label(x.n_states() * y.n_states()) {}

  std::size_t label_index(StateId x, StateId y) const { return x * gy.n_states() + y; }

  void spend() {
    if (++candidates_spent > budget)
      throw BudgetExceeded("product: candidate budget exceeded");
  }

  /// Enumerates admitted nodes labeled (x, y); all labels dominated by the
  /// options of x and y are already done.
  void build_label(StateId x, StateId y) {
    auto xopts = gx.options(x);
    auto yopts = gy.options(y);
    if (xopts.empty() && yopts.empty()) {
      spend();
      by_label[label_index(x, y)].push_back(arena.intern({}, {x, y}));
      admitted.push_back(by_label[label_index(x, y)].back());
      return;
    }
    if (xopts.empty() != yopts.empty()) return;  // no way to cover both exactly
    // Pool of candidate children: admitted nodes labeled in xopts x yopts.
    std::vector<LhfsId> pool;
    for (StateId xp : xopts)
      for (StateId yp : yopts)
        for (LhfsId node : by_label[label_index(xp, yp)]) pool.push_back(node);
    std::sort(pool.begin(), pool.end());
    if (pool.size() > 63)
      throw BudgetExceeded("product: candidate pool too large (" +
                           std::to_string(pool.size()) + " nodes)");
    const std::uint64_t masks = std::uint64_t{1} << pool.size();
    for (std::uint64_t mask = 1; mask < masks; ++mask) {
      spend();
      std::vector<StateId> xs, ys;
      std::vector<LhfsId> children;
      for (std::size_t i = 0; i < pool.size(); ++i)
        if (mask & (std::uint64_t{1} << i)) {
          children.push_back(pool[i]);
          xs.push_back(arena.label(pool[i]).first);
          ys.push_back(arena.label(pool[i]).second);
        }
      xs = normalize_states(std::move(xs));
      ys = normalize_states(std::move(ys));
      if (!std::equal(xs.begin(), xs.end(), xopts.begin(), xopts.end())) continue;
      if (!std::equal(ys.begin(), ys.end(), yopts.begin(), yopts.end())) continue;
      LhfsId node = arena.intern(std::move(children), {x, y});
      by_label[label_index(x, y)].push_back(node);
      admitted.push_back(node);
      if (admitted.size() > budget)
        throw BudgetExceeded("product: admitted node budget exceeded");
    }
  }
};

}  // namespace detail

inline ProductGame product(const ValidatedGame& x_game, const ValidatedGame& y_game,
                           std::size_t budget = 1000000) {
  detail::ProductBuilder b(x_game, y_game, budget);
  // Process label pairs bottom-up: both coordinates along their topological
  // orders, so every child label is finished first.
  for (StateId x : x_game.topological_order())
    for (StateId y : y_game.topological_order()) b.build_label(x, y);

  ProductGame out;
  // Admitted nodes were created children-first; arena ids are ascending, so
  // creation order is already a valid state order.
  std::vector<StateId> state_of(b.arena.size(), UINT32_MAX);
  for (std::size_t i = 0; i < b.admitted.size(); ++i) {
    state_of[b.admitted[i].value()] = static_cast<StateId>(i);
    out.state_of_node[b.admitted[i].value()] = static_cast<StateId>(i);
  }
  std::vector<std::vector<StateId>> options(b.admitted.size());
  std::vector<std::string> names(b.admitted.size());
  out.labels.resize(b.admitted.size());
  std::map<std::pair<StateId, StateId>, std::size_t> label_counter;
  for (std::size_t i = 0; i < b.admitted.size(); ++i) {
    LhfsId node = b.admitted[i];
    auto label = b.arena.label(node);
    out.labels[i] = label;
    std::size_t serial = label_counter[label]++;
    names[i] = "(" + x_game.state_name(label.first) + "-" + y_game.state_name(label.second) +
               ")_" + std::to_string(serial);
    for (LhfsId c : b.arena.children(node)) options[i].push_back(state_of[c.value()]);
  }
  out.game = validate_well_founded(Game(std::move(options), std::move(names),
                                        x_game.label() + "x" + y_game.label()));
  std::vector<StateId> px(b.admitted.size()), py(b.admitted.size());
  for (std::size_t i = 0; i < b.admitted.size(); ++i) {
    px[i] = out.labels[i].first;
    py[i] = out.labels[i].second;
  }
  out.proj_x = check_morphism(px, out.game, x_game);
  out.proj_y = check_morphism(py, out.game, y_game);
  return out;
}

/// The pairing <f, g>: W -> X x Y of a cone; the unique morphism whose
/// composites with the projections are f and g.
inline GameMorphism pair_into_product(const ProductGame& prod, const ValidatedGame& w_game,
                                      const GameMorphism& f, const GameMorphism& g) {
  // h(w) = the product state whose children set is {h(w') | w -> w'} and
  // whose label is (f(w), g(w)). Product states are uniquely determined by
  // (children set, label), so a map keyed on that pair suffices.
  std::map<std::pair<std::vector<StateId>, std::pair<StateId, StateId>>, StateId> node_index;
  for (StateId s = 0; s < prod.game.n_states(); ++s) {
    std::vector<StateId> kids(prod.game.options(s).begin(), prod.game.options(s).end());
    node_index[{std::move(kids), prod.labels[s]}] = s;
  }
  std::vector<StateId> h(w_game.n_states(), UINT32_MAX);
  for (StateId w : w_game.topological_order()) {
    std::vector<StateId> kids;
    for (StateId wp : w_game.options(w)) kids.push_back(h[wp]);
    kids = detail::normalize_states(std::move(kids));
    auto it = node_index.find({kids, {f(w), g(w)}});
    if (it == node_index.end())
      throw BuildError("pair_into_product: cone does not land in the product");
    h[w] = it->second;
  }
  return check_morphism(h, w_game, prod.game);
}

}  // namespace hylo
