#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hylo/algebra.hpp"
#include "hylo/game.hpp"
#include "hylo/hfs.hpp"

namespace hylo {

/// The three built-in monoidal sums. A move acts in exactly one component
/// (conway), at least one (selective), or every component (conjunctive).
/// Conjunctive has no unit game; all three are commutative.
struct SumKind {
  enum class Tag : std::uint8_t { conway, selective, conjunctive } tag;
  bool unital;
  bool commutative;

  const char* name() const {
    switch (tag) {
      case Tag::conway: return "conway";
      case Tag::selective: return "selective";
      default: return "conjunctive";
    }
  }
  bool operator==(const SumKind& o) const { return tag == o.tag; }
};

inline constexpr SumKind kConwaySum{SumKind::Tag::conway, true, true};
inline constexpr SumKind kSelectiveSum{SumKind::Tag::selective, true, true};
inline constexpr SumKind kConjunctiveSum{SumKind::Tag::conjunctive, false, true};

inline SumKind sum_kind_from_name(const std::string& name) {
  if (name == "conway") return kConwaySum;
  if (name == "selective") return kSelectiveSum;
  if (name == "conjunctive") return kConjunctiveSum;
  throw BuildError("unknown sum kind: " + name);
}

/// Row-major pair indexing: state (x, y) of a sum is x * |Y| + y.
inline StateId pair_state(StateId x, StateId y, std::size_t n_y) {
  return static_cast<StateId>(x * n_y + y);
}

/// The sum game on the pair set X x Y. The comparison map is the identity on
/// pairs for all built-in kinds.
inline ValidatedGame game_sum(SumKind kind, const ValidatedGame& x_game,
                              const ValidatedGame& y_game) {
  const std::size_t nx = x_game.n_states(), ny = y_game.n_states();
  std::vector<std::vector<StateId>> options(nx * ny);
  std::vector<std::string> names(nx * ny);
  for (StateId x = 0; x < nx; ++x) {
    for (StateId y = 0; y < ny; ++y) {
      StateId s = pair_state(x, y, ny);
      names[s] = "(" + x_game.state_name(x) + "-" + y_game.state_name(y) + ")";
      auto& opts = options[s];
      if (kind.tag != SumKind::Tag::conjunctive) {
        for (StateId xp : x_game.options(x)) opts.push_back(pair_state(xp, y, ny));
        for (StateId yp : y_game.options(y)) opts.push_back(pair_state(x, yp, ny));
      }
      if (kind.tag != SumKind::Tag::conway) {
        for (StateId xp : x_game.options(x))
          for (StateId yp : y_game.options(y)) opts.push_back(pair_state(xp, yp, ny));
      }
    }
  }
  std::string label =
      x_game.label() + " " + kind.name() + " " + y_game.label();
  return validate_well_founded(Game(std::move(options), std::move(names), std::move(label)));
}

/// Bitwise exclusive or; the Grundy value of a Conway sum.
inline std::uint64_t nim_sum(std::uint64_t m, std::uint64_t n) { return m ^ n; }

/// Memoizing evaluator for the miniature monoid of a sum on hereditarily
/// finite sets:
///   A +_H B = {a +_H B | a in A} u {A +_H b | b in B}
///   A v_H B = {a v_H B | a in A} u {a v_H b | a in A, b in B} u {A v_H b | b in B}
///   A ^_H B = {a ^_H b | a in A, b in B}
/// Memo keys are unordered pairs when the kind is commutative.
class HfsSumEngine {
public:
  HfsSumEngine(SumKind kind, HfsArena& arena) : kind_(kind), arena_(&arena) {}

  SumKind kind() const { return kind_; }

  HfsId sum(HfsId a, HfsId b) {
    std::vector<std::pair<HfsId, HfsId>> stack{{a, b}};
    while (!stack.empty()) {
      auto [x, y] = stack.back();
      if (memo_.count(normalize(x, y))) {
        stack.pop_back();
        continue;
      }
      auto deps = dependencies(x, y);
      bool ready = true;
      for (auto dep : deps)
        if (!memo_.count(normalize(dep.first, dep.second))) {
          stack.push_back(dep);
          ready = false;
        }
      if (!ready) continue;
      std::vector<HfsId> out;
      out.reserve(deps.size());
      for (auto dep : deps) out.push_back(memo_.at(normalize(dep.first, dep.second)));
      memo_.emplace(normalize(x, y), arena_->intern(std::move(out)));
      stack.pop_back();
    }
    return memo_.at(normalize(a, b));
  }

private:
  std::pair<HfsId, HfsId> normalize(HfsId a, HfsId b) const {
    if (kind_.commutative && b < a) return {b, a};
    return {a, b};
  }

  /// The sub-sums whose values are the elements of a * b.
  std::vector<std::pair<HfsId, HfsId>> dependencies(HfsId a, HfsId b) const {
    auto a_children = arena_->children(a);
    auto b_children = arena_->children(b);
    std::vector<std::pair<HfsId, HfsId>> deps;
    if (kind_.tag != SumKind::Tag::conjunctive) {
      for (HfsId ac : a_children) deps.emplace_back(ac, b);
      for (HfsId bc : b_children) deps.emplace_back(a, bc);
    }
    if (kind_.tag != SumKind::Tag::conway) {
      for (HfsId ac : a_children)
        for (HfsId bc : b_children) deps.emplace_back(ac, bc);
    }
    return deps;
  }

  SumKind kind_;
  HfsArena* arena_;
  std::map<std::pair<HfsId, HfsId>, HfsId> memo_;
};

inline HfsId hfs_sum(SumKind kind, HfsArena& arena, HfsId a, HfsId b) {
  return HfsSumEngine(kind, arena).sum(a, b);
}

/// The Rota-Baxter identity of mex and the nim-sum:
///   mex(S) ^ mex(T) == mex( (S ^ mex(T)) u (mex(S) ^ T) )
/// where n ^ S is the pointwise nim-sum.
inline bool rota_baxter_check(const std::vector<std::uint32_t>& s_in,
                              const std::vector<std::uint32_t>& t_in) {
  auto s = detail::normalize_states(s_in);
  auto t = detail::normalize_states(t_in);
  const std::uint32_t mex_s = mex(s), mex_t = mex(t);
  std::vector<std::uint32_t> mixed;
  mixed.reserve(s.size() + t.size());
  for (std::uint32_t v : s) mixed.push_back(v ^ mex_t);
  for (std::uint32_t v : t) mixed.push_back(mex_s ^ v);
  mixed = detail::normalize_states(std::move(mixed));
  return (mex_s ^ mex_t) == mex(mixed);
}

}  // namespace hylo
