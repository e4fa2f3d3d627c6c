#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hylo/algebra.hpp"
#include "hylo/game.hpp"
#include "hylo/hfs.hpp"
#include "hylo/rule_game.hpp"

namespace hylo {

inline bool is_identifier_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '(' || ch == ')' ||
         ch == '-';
}

inline bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!is_identifier_char(ch)) return false;
  return true;
}

/// Game file grammar: '#' comments, an optional `game <name>` header, then
/// one `state : succ succ ...` line per state. Identifiers are
/// [A-Za-z0-9_()-]+; names that only appear as successors are terminal
/// states; redeclaring a state is an error.
inline ValidatedGame parse_game_file(const std::string& text) {
  std::vector<std::pair<std::string, std::vector<std::string>>> spec;
  std::string label;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens[0] == "game") {
      if (!label.empty()) throw ParseError("duplicate game header", lineno);
      if (tokens.size() != 2) throw ParseError("game header wants exactly one name", lineno);
      label = tokens[1];
      continue;
    }
    // state : succ succ ...   (the colon may be glued to the state name)
    std::string state = tokens[0];
    std::size_t next = 1;
    if (auto colon = state.find(':'); colon != std::string::npos) {
      if (colon == 0) throw ParseError("missing state name", lineno);
      std::string rest = state.substr(colon + 1);
      state.erase(colon);
      if (!rest.empty()) tokens.insert(tokens.begin() + 1, rest);
    } else {
      if (next >= tokens.size() || tokens[next].front() != ':')
        throw ParseError("expected ':' after state name", lineno);
      std::string rest = tokens[next].substr(1);
      ++next;
      if (!rest.empty()) tokens.insert(tokens.begin() + next, rest);
    }
    if (!is_identifier(state)) throw ParseError("bad state identifier: " + state, lineno);
    for (const auto& [seen, _] : spec)
      if (seen == state) throw ParseError("duplicate state declaration: " + state, lineno);
    std::vector<std::string> succs;
    for (; next < tokens.size(); ++next) {
      if (!is_identifier(tokens[next]))
        throw ParseError("bad successor identifier: " + tokens[next], lineno);
      succs.push_back(tokens[next]);
    }
    spec.emplace_back(std::move(state), std::move(succs));
  }
  Game g;
  try {
    g = build_finite_game(spec, label);
  } catch (const BuildError& e) {
    throw ParseError(e.what(), lineno);
  }
  return validate_well_founded(std::move(g));
}

/// Inverse of parse_game_file up to state renaming: names that fall outside
/// the identifier grammar are replaced by s<index>.
inline std::string export_game_file(const ValidatedGame& g) {
  std::ostringstream out;
  if (!g.label().empty() && is_identifier(g.label())) out << "game " << g.label() << "\n";
  std::vector<std::string> names(g.n_states());
  std::map<std::string, StateId> taken;
  for (StateId x = 0; x < g.n_states(); ++x) {
    std::string name = g.state_name(x);
    if (!is_identifier(name) || taken.count(name)) name = "s" + std::to_string(x);
    taken[name] = x;
    names[x] = std::move(name);
  }
  for (StateId x = 0; x < g.n_states(); ++x) {
    out << names[x] << " :";
    for (StateId y : g.options(x)) out << " " << names[y];
    out << "\n";
  }
  return out.str();
}

/// Deterministic DOT rendering, states in index order. With an annotation,
/// each node shows its value; P-states are blue and N-states red, following
/// the usual coloring of outcome diagrams.
inline std::string export_dot(const ValidatedGame& g,
                              const std::vector<std::string>& annotations = {},
                              const std::vector<Outcome>& outcomes = {}) {
  std::ostringstream out;
  out << "digraph \"" << (g.label().empty() ? "game" : g.label()) << "\" {\n";
  for (StateId x = 0; x < g.n_states(); ++x) {
    out << "  n" << x << " [label=\"" << g.state_name(x);
    if (x < annotations.size()) out << "\\n" << annotations[x];
    out << "\"";
    if (x < outcomes.size())
      out << (outcomes[x] == Outcome::P ? " color=blue fontcolor=blue"
                                        : " color=red fontcolor=red");
    out << "];\n";
  }
  for (StateId x = 0; x < g.n_states(); ++x)
    for (StateId y : g.options(x)) out << "  n" << x << " -> n" << y << ";\n";
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Generator expressions.

namespace detail {

inline std::vector<std::uint64_t> parse_number_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) throw BuildError("empty number in list");
    out.push_back(std::stoull(cur));
    cur.clear();
  };
  for (char ch : s) {
    if (ch == ',') {
      flush();
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      cur.push_back(ch);
    } else {
      throw BuildError(std::string("bad character in number list: ") + ch);
    }
  }
  flush();
  return out;
}

}  // namespace detail

/// Built-in generator expressions:
///   nim:<a1>,<a2>,...    multi-heap nim from the given heaps
///   sub:<n>:<s1>,<s2>,.. subtraction nim from n
///   elm:<n>              the chain n -> n-1 -> ... -> 0
///   binexp:<n>           binary exponent nim below n
///   star:<n>             the star game S_n
///   code:<n>             the membership fragment of the set with Ackermann
///                        code n
inline std::optional<ValidatedGame> game_from_generator(const std::string& expr,
                                                        std::size_t budget = 1u << 20) {
  auto colon = expr.find(':');
  if (colon == std::string::npos) return std::nullopt;
  std::string kind = expr.substr(0, colon);
  std::string arg = expr.substr(colon + 1);
  if (kind == "nim") {
    auto heaps = detail::parse_number_list(arg);
    auto frag = reachable_fragment(nim_rule(heaps.size()), nim_token(heaps), budget);
    return frag.game;
  }
  if (kind == "sub") {
    auto second = arg.find(':');
    if (second == std::string::npos) throw BuildError("sub:<n>:<s1>,<s2>,...");
    std::uint64_t start = std::stoull(arg.substr(0, second));
    auto set = detail::parse_number_list(arg.substr(second + 1));
    return reachable_fragment(subtraction_rule(set), start, budget).game;
  }
  if (kind == "elm") return reachable_fragment(elm_rule(), std::stoull(arg), budget).game;
  if (kind == "binexp") return reachable_fragment(binexp_rule(), std::stoull(arg), budget).game;
  if (kind == "star") return star_game(std::stoull(arg));
  if (kind == "code") {
    HfsArena arena;
    HfsId id = ackermann_decode(arena, BigNat(arg));
    return hfs_fragment_game(arena, {id}).game;
  }
  return std::nullopt;
}

}  // namespace hylo
