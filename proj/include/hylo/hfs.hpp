#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hylo/game.hpp"

namespace hylo {

using BigNat = boost::multiprecision::cpp_int;

/// Default bit budget for Ackermann codes (overridable; the CLI reads
/// HYLO_DEPTH_GUARD). Codes whose bit width would exceed this are refused.
inline constexpr std::uint64_t kDefaultCodeBitBudget = std::uint64_t{1} << 20;

/// Handle to a hereditarily finite set in some arena. Ids are arena-local;
/// equal sets have equal ids and child ids always precede parents.
class HfsId {
public:
  HfsId() : v_(UINT32_MAX) {}
  explicit HfsId(std::uint32_t v) : v_(v) {}
  std::uint32_t value() const { return v_; }
  bool operator==(const HfsId& o) const { return v_ == o.v_; }
  bool operator!=(const HfsId& o) const { return v_ != o.v_; }
  bool operator<(const HfsId& o) const { return v_ < o.v_; }

private:
  std::uint32_t v_;
};

/// Canonically interning arena of hereditarily finite sets. Children lists
/// are kept strictly increasing, so set equality is id equality.
class HfsArena {
public:
  HfsArena() { intern({}); }

  /// Interns a set of already-interned children; idempotent.
  HfsId intern(std::vector<HfsId> children) {
    std::sort(children.begin(), children.end());
    children.erase(std::unique(children.begin(), children.end()), children.end());
    for (HfsId c : children)
      if (c.value() >= nodes_.size()) throw BuildError("intern: unknown child id");
    auto it = index_.find(children);
    if (it != index_.end()) return it->second;
    HfsId id(static_cast<std::uint32_t>(nodes_.size()));
    std::uint32_t bd = 0;
    for (HfsId c : children) bd = std::max(bd, birthday_[c.value()] + 1);
    index_.emplace(children, id);
    nodes_.push_back(std::move(children));
    birthday_.push_back(bd);
    return id;
  }

  HfsId empty() const { return HfsId(0); }

  std::span<const HfsId> children(HfsId id) const {
    const auto& c = nodes_[id.value()];
    return {c.data(), c.size()};
  }

  /// Length of the longest membership chain below id.
  std::uint32_t birthday(HfsId id) const { return birthday_[id.value()]; }

  std::size_t size() const { return nodes_.size(); }

  /// Nested-braces rendering, children in id order. Built bottom-up (ids of
  /// children are smaller), so arbitrarily deep sets do not recurse.
  std::string to_string(HfsId id) const {
    std::map<HfsId, std::string> text;
    std::vector<HfsId> stack{id};
    while (!stack.empty()) {
      HfsId x = stack.back();
      if (text.count(x)) {
        stack.pop_back();
        continue;
      }
      bool ready = true;
      for (HfsId c : children(x))
        if (!text.count(c)) {
          stack.push_back(c);
          ready = false;
        }
      if (!ready) continue;
      std::string out = "{";
      bool first = true;
      for (HfsId c : children(x)) {
        if (!first) out += ",";
        first = false;
        out += text.at(c);
      }
      out += "}";
      text.emplace(x, std::move(out));
      stack.pop_back();
    }
    return text.at(id);
  }

private:
  std::vector<std::vector<HfsId>> nodes_;
  std::vector<std::uint32_t> birthday_;
  std::map<std::vector<HfsId>, HfsId> index_;
};

/// The Ackermann code: code(S) = sum over children c of 2^code(c).
/// Injective, and bijective onto the naturals together with ackermann_decode.
/// Throws DepthGuardError once a code would need more than bit_budget bits.
inline BigNat ackermann_encode(const HfsArena& arena, HfsId id,
                               std::uint64_t bit_budget = kDefaultCodeBitBudget) {
  std::map<HfsId, BigNat> memo;
  std::vector<HfsId> stack{id};
  while (!stack.empty()) {
    HfsId x = stack.back();
    if (memo.count(x)) {
      stack.pop_back();
      continue;
    }
    bool ready = true;
    for (HfsId c : arena.children(x))
      if (!memo.count(c)) {
        stack.push_back(c);
        ready = false;
      }
    if (!ready) continue;
    BigNat code = 0;
    for (HfsId c : arena.children(x)) {
      const BigNat& ccode = memo.at(c);
      if (ccode >= bit_budget)
        throw DepthGuardError("ackermann code exceeds the " + std::to_string(bit_budget) +
                              "-bit budget");
      bit_set(code, static_cast<unsigned>(ccode));
    }
    memo.emplace(x, std::move(code));
    stack.pop_back();
  }
  return memo.at(id);
}

/// Inverse of ackermann_encode: children codes are the binary exponents of n.
inline HfsId ackermann_decode(HfsArena& arena, const BigNat& n) {
  if (n == 0) return arena.empty();
  std::vector<HfsId> children;
  for (unsigned bit = 0, top = msb(n); bit <= top; ++bit)
    if (bit_test(n, bit)) children.push_back(ackermann_decode(arena, BigNat(bit)));
  return arena.intern(std::move(children));
}

inline HfsId ackermann_decode(HfsArena& arena, std::uint64_t n) {
  return ackermann_decode(arena, BigNat(n));
}

/// The von Neumann natural n = {0, 1, ..., n-1}.
inline HfsId von_neumann(HfsArena& arena, std::uint32_t n) {
  std::vector<HfsId> below;
  HfsId cur = arena.empty();
  for (std::uint32_t k = 0; k < n; ++k) {
    below.push_back(cur);
    cur = arena.intern(below);
  }
  return cur;
}

/// All hereditarily finite sets of birthday at most k, sorted by arena id.
/// Level sizes are 1, 2, 4, 16, 65536 for k = 0..4; k = 5 would have 2^65536
/// elements and is rejected.
inline std::vector<HfsId> enumerate_universe(HfsArena& arena, std::uint32_t k) {
  if (k > 4)
    throw SizeGuardError("enumerate_universe: birthday bound " + std::to_string(k) +
                         " exceeds the hard cap of 4");
  std::vector<HfsId> level{arena.empty()};
  for (std::uint32_t step = 0; step < k; ++step) {
    std::vector<HfsId> next;
    next.reserve(std::size_t{1} << level.size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << level.size()); ++mask) {
      std::vector<HfsId> children;
      for (std::size_t i = 0; i < level.size(); ++i)
        if (mask & (std::uint64_t{1} << i)) children.push_back(level[i]);
      next.push_back(arena.intern(std::move(children)));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    level = std::move(next);
  }
  std::sort(level.begin(), level.end());
  return level;
}

/// The reduction map xi: the unique game morphism into the terminal game.
/// xi(x) = { xi(x') | x -> x' }, interned bottom-up along the evaluation
/// order; terminal states map to the empty set.
inline std::vector<HfsId> xi_reduce(HfsArena& arena, const ValidatedGame& g) {
  std::vector<HfsId> xi(g.n_states(), arena.empty());
  for (StateId x : g.topological_order()) {
    std::vector<HfsId> children;
    children.reserve(g.options(x).size());
    for (StateId y : g.options(x)) children.push_back(xi[y]);
    xi[x] = arena.intern(std::move(children));
  }
  return xi;
}

/// The membership fragment below the given roots, as a validated game.
/// States are the reachable sets sorted by id, edges are membership.
struct HfsFragment {
  ValidatedGame game;
  std::vector<HfsId> ids;           // state -> arena id
  std::map<HfsId, StateId> state_of;

  StateId state(HfsId id) const { return state_of.at(id); }
};

inline HfsFragment hfs_fragment_game(const HfsArena& arena, const std::vector<HfsId>& roots) {
  std::vector<char> seen;
  std::vector<HfsId> stack = roots;
  HfsFragment out;
  auto mark = [&](HfsId id) {
    if (id.value() >= seen.size()) seen.resize(id.value() + 1, 0);
    if (seen[id.value()]) return false;
    seen[id.value()] = 1;
    return true;
  };
  std::vector<HfsId> found;
  for (HfsId r : roots)
    if (mark(r)) found.push_back(r);
  stack = found;
  while (!stack.empty()) {
    HfsId cur = stack.back();
    stack.pop_back();
    for (HfsId c : arena.children(cur))
      if (mark(c)) {
        found.push_back(c);
        stack.push_back(c);
      }
  }
  std::sort(found.begin(), found.end());
  out.ids = found;
  for (std::size_t i = 0; i < found.size(); ++i)
    out.state_of[found[i]] = static_cast<StateId>(i);
  std::vector<std::vector<StateId>> options(found.size());
  std::vector<std::string> names(found.size());
  for (std::size_t i = 0; i < found.size(); ++i) {
    // Name by Ackermann code when small enough, so exported files stay in
    // the identifier grammar.
    try {
      names[i] = ackermann_encode(arena, found[i], 64).str();
    } catch (const DepthGuardError&) {
      names[i] = "s" + std::to_string(i);
    }
    for (HfsId c : arena.children(found[i])) options[i].push_back(out.state_of.at(c));
  }
  out.game = validate_well_founded(Game(std::move(options), std::move(names), "hfs-fragment"));
  return out;
}

}  // namespace hylo
