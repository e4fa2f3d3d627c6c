#pragma once

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hylo/algebra.hpp"
#include "hylo/game.hpp"

namespace hylo {

/// The engine's reply from state x: a move to a P-state when one exists
/// (winning play), the lowest-index option otherwise. Returns nothing on
/// terminal states.
inline std::optional<StateId> engine_move(const ValidatedGame& g,
                                          const std::vector<Outcome>& outcome, StateId x) {
  auto opts = g.options(x);
  if (opts.empty()) return std::nullopt;
  for (StateId y : opts)
    if (outcome[y] == Outcome::P) return y;
  return opts.front();
}

/// Alternating text play loop, human first. Each turn prints the current
/// state and its options annotated with outcome and Grundy value; the human
/// picks an option by list index. Whoever cannot move loses. Malformed input
/// re-prompts; end of input aborts with the partial transcript written out.
inline void run_play_loop(const ValidatedGame& g, StateId start, std::istream& in,
                          std::ostream& out) {
  if (start >= g.n_states()) throw BuildError("play: start state out of range");
  const auto outcome = outcome_values(g);
  const auto grundy = grundy_values(g);
  StateId cur = start;
  bool human_to_move = true;
  for (;;) {
    out << "state " << g.state_name(cur) << "  [outcome " << to_string(outcome[cur])
        << ", grundy " << grundy[cur] << "]\n";
    auto opts = g.options(cur);
    if (opts.empty()) {
      out << (human_to_move ? "you have no move: you lose.\n"
                            : "engine has no move: engine loses.\n");
      return;
    }
    if (human_to_move) {
      for (std::size_t i = 0; i < opts.size(); ++i)
        out << "  " << i << ") " << g.state_name(opts[i]) << "  [outcome "
            << to_string(outcome[opts[i]]) << ", grundy " << grundy[opts[i]] << "]\n";
      std::size_t choice = opts.size();
      for (;;) {
        out << "your move> ";
        std::string lineIn;
        if (!std::getline(in, lineIn)) {
          out << "\n(end of input; aborting game)\n";
          return;
        }
        try {
          choice = std::stoul(lineIn);
        } catch (...) {
          choice = opts.size();
        }
        if (choice < opts.size()) break;
        out << "enter an option index between 0 and " << opts.size() - 1 << "\n";
      }
      cur = opts[choice];
      out << "you move to " << g.state_name(cur) << "\n";
    } else {
      StateId next = *engine_move(g, outcome, cur);
      out << "engine moves to " << g.state_name(next) << "\n";
      cur = next;
    }
    human_to_move = !human_to_move;
  }
}

}  // namespace hylo
