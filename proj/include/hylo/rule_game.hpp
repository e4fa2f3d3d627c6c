#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hylo/game.hpp"

namespace hylo {

/// A lazily presented game on opaque 64-bit tokens. expand must be
/// deterministic: equal tokens yield equal option lists.
struct RuleGame {
  std::string description;
  std::function<std::vector<std::uint64_t>(std::uint64_t)> expand;
};

/// A finite fragment of a rule game: the breadth-first closure of a start
/// token converted to a validated game, with the state<->token tables.
struct GameFragment {
  ValidatedGame game;
  std::vector<std::uint64_t> tokens;           // state -> token
  std::map<std::uint64_t, StateId> state_of;   // token -> state

  StateId state(std::uint64_t token) const { return state_of.at(token); }
};

/// Expands `start` under the rule until closed, assigning dense state ids in
/// discovery order. Throws BudgetExceeded when more than max_states tokens
/// appear (the practical reading of an effectively infinite option set), and
/// propagates WellFoundednessError from validation.
inline GameFragment reachable_fragment(const RuleGame& rule, std::uint64_t start,
                                       std::size_t max_states) {
  if (max_states < 1) throw BudgetExceeded("reachable_fragment: max_states must be at least 1");
  GameFragment out;
  std::vector<std::vector<std::uint64_t>> raw_options;
  std::vector<std::uint64_t> queue{start};
  out.state_of[start] = 0;
  out.tokens.push_back(start);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::uint64_t tok = queue[head];
    auto opts = rule.expand(tok);
    for (std::uint64_t t : opts) {
      if (out.state_of.count(t)) continue;
      if (out.tokens.size() >= max_states)
        throw BudgetExceeded("reachable_fragment: closure of " + std::to_string(start) +
                             " exceeds " + std::to_string(max_states) + " states");
      out.state_of[t] = static_cast<StateId>(out.tokens.size());
      out.tokens.push_back(t);
      queue.push_back(t);
    }
    raw_options.push_back(std::move(opts));
  }
  std::vector<std::vector<StateId>> options(out.tokens.size());
  std::vector<std::string> names(out.tokens.size());
  for (StateId s = 0; s < out.tokens.size(); ++s) {
    names[s] = std::to_string(out.tokens[s]);
    for (std::uint64_t t : raw_options[s]) options[s].push_back(out.state_of.at(t));
  }
  out.game =
      validate_well_founded(Game(std::move(options), std::move(names), rule.description));
  return out;
}

// ---------------------------------------------------------------------------
// Built-in rules and small game builders.

/// One-heap nim: from n every smaller heap is reachable.
inline RuleGame nim_heap_rule() {
  RuleGame r;
  r.description = "nim:1-heap";
  r.expand = [](std::uint64_t n) {
    std::vector<std::uint64_t> out;
    out.reserve(n);
    for (std::uint64_t m = 0; m < n; ++m) out.push_back(m);
    return out;
  };
  return r;
}

/// Multi-heap nim with up to 8 heaps of at most 255 stones, one heap per
/// byte of the token.
inline RuleGame nim_rule(std::size_t heaps) {
  if (heaps == 0 || heaps > 8) throw BuildError("nim_rule: 1..8 heaps supported");
  RuleGame r;
  r.description = "nim:" + std::to_string(heaps) + "-heap";
  r.expand = [heaps](std::uint64_t tok) {
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < heaps; ++i) {
      std::uint64_t h = (tok >> (8 * i)) & 0xff;
      std::uint64_t rest = tok & ~(std::uint64_t{0xff} << (8 * i));
      for (std::uint64_t m = 0; m < h; ++m) out.push_back(rest | (m << (8 * i)));
    }
    return out;
  };
  return r;
}

inline std::uint64_t nim_token(const std::vector<std::uint64_t>& heaps) {
  if (heaps.size() > 8) throw BuildError("nim_token: at most 8 heaps");
  std::uint64_t tok = 0;
  for (std::size_t i = 0; i < heaps.size(); ++i) {
    if (heaps[i] > 255) throw BuildError("nim_token: heap sizes up to 255");
    tok |= heaps[i] << (8 * i);
  }
  return tok;
}

/// Subtraction nim: n -> n - s for each s in the subtraction set.
inline RuleGame subtraction_rule(std::vector<std::uint64_t> subtract) {
  RuleGame r;
  r.description = "sub";
  r.expand = [set = std::move(subtract)](std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t s : set)
      if (s <= n) out.push_back(n - s);
    return out;
  };
  return r;
}

/// "Effeuiller la marguerite": n -> n-1.
inline RuleGame elm_rule() {
  RuleGame r;
  r.description = "elm";
  r.expand = [](std::uint64_t n) {
    std::vector<std::uint64_t> out;
    if (n > 0) out.push_back(n - 1);
    return out;
  };
  return r;
}

/// Binary exponent nim: n -> k for every bit 2^k of n.
inline RuleGame binexp_rule() {
  RuleGame r;
  r.description = "binexp";
  r.expand = [](std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t k = 0; k < 64; ++k)
      if (n & (std::uint64_t{1} << k)) out.push_back(k);
    return out;
  };
  return r;
}

/// The star game S_n: one top state with n terminal options.
inline ValidatedGame star_game(std::size_t n) {
  std::vector<std::vector<StateId>> options(n + 1);
  std::vector<std::string> names(n + 1);
  names[0] = "top";
  for (StateId i = 1; i <= n; ++i) {
    options[0].push_back(i);
    names[i] = "b" + std::to_string(i);
  }
  return validate_well_founded(
      Game(std::move(options), std::move(names), "S" + std::to_string(n)));
}

/// The chain n -> n-1 -> ... -> 0 (the ElM fragment below n), state i = i.
inline ValidatedGame chain_game(std::size_t n) {
  std::vector<std::vector<StateId>> options(n + 1);
  std::vector<std::string> names(n + 1);
  for (StateId i = 0; i <= n; ++i) {
    names[i] = std::to_string(i);
    if (i > 0) options[i].push_back(i - 1);
  }
  return validate_well_founded(
      Game(std::move(options), std::move(names), "chain" + std::to_string(n)));
}

/// The one-heap nim fragment below n, state i = heap i with options 0..i-1.
inline ValidatedGame nim_heap_game(std::size_t n) {
  std::vector<std::vector<StateId>> options(n + 1);
  std::vector<std::string> names(n + 1);
  for (StateId i = 0; i <= n; ++i) {
    names[i] = std::to_string(i);
    for (StateId j = 0; j < i; ++j) options[i].push_back(j);
  }
  return validate_well_founded(
      Game(std::move(options), std::move(names), "nim" + std::to_string(n)));
}

}  // namespace hylo
