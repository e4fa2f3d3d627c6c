// hylo: a combinatorial-game workbench built on one idea: games are exactly
// the graphs that support bottom-up recursive evaluation. The CLI exposes
// validation, game values, reductions to hereditarily finite sets, sums,
// morphism checks, products and quotients, hom counting, Bouton tables,
// a property-suite runner, DOT export, and a text play loop.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hylo/hylo.hpp"

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t code_bit_budget() {
  if (const char* env = std::getenv("HYLO_DEPTH_GUARD")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw UsageError("HYLO_DEPTH_GUARD must be a bit count");
    }
  }
  return hylo::kDefaultCodeBitBudget;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

hylo::ValidatedGame load_game(const std::string& spec) {
  if (auto generated = hylo::game_from_generator(spec)) return *generated;
  return hylo::parse_game_file(read_file(spec));
}

hylo::StateId state_by_name(const hylo::ValidatedGame& g, const std::string& name) {
  for (hylo::StateId x = 0; x < g.n_states(); ++x)
    if (g.state_name(x) == name) return x;
  try {
    std::size_t idx = std::stoul(name);
    if (idx < g.n_states()) return static_cast<hylo::StateId>(idx);
  } catch (...) {
  }
  throw UsageError("no state named " + name);
}

/// Runs fn with the named built-in algebra.
template <class Fn>
void with_algebra(const std::string& name, Fn&& fn) {
  if (name == "mex" || name == "grundy") return fn(hylo::MexAlgebra{});
  if (name == "np" || name == "outcome") return fn(hylo::NpAlgebra{});
  if (name == "empty" || name == "end") return fn(hylo::EmptyAlgebra{});
  if (name == "xem" || name == "birthday") return fn(hylo::XemAlgebra{});
  if (name == "mnp" || name == "misere") return fn(hylo::MnpAlgebra{});
  if (name == "remoteness") return fn(hylo::RemotenessAlgebra{});
  if (name == "bin") return fn(hylo::BinAlgebra{code_bit_budget()});
  throw UsageError("unknown algebra: " + name +
                   " (expected mex|np|empty|xem|mnp|remoteness|bin)");
}

std::string code_or_guard(const hylo::HfsArena& arena, hylo::HfsId id) {
  try {
    return ackermann_encode(arena, id, code_bit_budget()).str();
  } catch (const hylo::DepthGuardError&) {
    return "(code above the bit guard)";
  }
}

// ---------------------------------------------------------------------------
// Commands.

void cmd_check(const std::string& spec) {
  hylo::ValidatedGame g = load_game(spec);
  auto birthday = hylo_eval(g, hylo::XemAlgebra{});
  std::uint32_t max_birthday = 0;
  for (auto b : birthday) max_birthday = std::max(max_birthday, b);
  std::cout << "ok: " << g.n_states() << " states, " << g.game().n_edges()
            << " edges, longest play " << max_birthday << "\n";
}

void cmd_value(const std::string& spec, const std::string& alg) {
  hylo::ValidatedGame g = load_game(spec);
  with_algebra(alg, [&](auto algebra) {
    auto values = hylo_eval(g, algebra);
    for (hylo::StateId x = 0; x < g.n_states(); ++x)
      std::cout << g.state_name(x) << ": " << hylo::to_string(values[x]) << "\n";
  });
}

void cmd_xi(const std::string& spec) {
  hylo::ValidatedGame g = load_game(spec);
  hylo::HfsArena arena;
  auto xi = xi_reduce(arena, g);
  for (hylo::StateId x = 0; x < g.n_states(); ++x)
    std::cout << g.state_name(x) << ": " << arena.to_string(xi[x])
              << " code=" << code_or_guard(arena, xi[x]) << "\n";
}

void cmd_code(const std::string& arg) {
  bool numeric = !arg.empty();
  for (char ch : arg)
    if (!std::isdigit(static_cast<unsigned char>(ch))) numeric = false;
  hylo::HfsArena arena;
  if (numeric) {
    hylo::HfsId id = ackermann_decode(arena, hylo::BigNat(arg));
    std::cout << arg << " = " << arena.to_string(id) << "\n";
    std::cout << "birthday " << arena.birthday(id) << ", children codes:";
    for (hylo::HfsId c : arena.children(id)) std::cout << " " << code_or_guard(arena, c);
    std::cout << "\n";
    return;
  }
  hylo::ValidatedGame g = load_game(arg);
  auto xi = xi_reduce(arena, g);
  for (hylo::StateId x = 0; x < g.n_states(); ++x)
    std::cout << g.state_name(x) << ": " << code_or_guard(arena, xi[x]) << "\n";
}

void cmd_sum(const std::string& kind, const std::string& a, const std::string& b) {
  hylo::ValidatedGame x_game = load_game(a);
  hylo::ValidatedGame y_game = load_game(b);
  auto sum = game_sum(hylo::sum_kind_from_name(kind), x_game, y_game);
  std::cout << export_game_file(sum);
}

void cmd_morphism(const std::string& map_path, const std::string& a, const std::string& b) {
  hylo::ValidatedGame x_game = load_game(a);
  hylo::ValidatedGame y_game = load_game(b);
  std::vector<hylo::StateId> assignment(x_game.n_states(), UINT32_MAX);
  std::istringstream in(read_file(map_path));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string from, to, extra;
    if (!(ls >> from)) continue;
    if (!(ls >> to) || (ls >> extra))
      throw hylo::ParseError("map lines are `source target`", lineno);
    assignment[state_by_name(x_game, from)] = state_by_name(y_game, to);
  }
  for (hylo::StateId x = 0; x < x_game.n_states(); ++x)
    if (assignment[x] == UINT32_MAX)
      throw hylo::BuildError("map does not cover state " + x_game.state_name(x));
  check_morphism(assignment, x_game, y_game);
  std::cout << "ok: a game morphism on " << x_game.n_states() << " states\n";
}

void cmd_product(const std::string& a, const std::string& b, std::size_t budget) {
  hylo::ValidatedGame x_game = load_game(a);
  hylo::ValidatedGame y_game = load_game(b);
  auto prod = product(x_game, y_game, budget);
  std::cout << export_game_file(prod.game);
}

void cmd_homcount(const std::string& a, const std::string& b, std::size_t limit) {
  hylo::ValidatedGame x_game = load_game(a);
  hylo::ValidatedGame y_game = load_game(b);
  std::cout << hom_count(x_game, y_game, limit) << "\n";
}

void cmd_quotient(const std::string& pairs_path, const std::string& spec) {
  hylo::ValidatedGame g = load_game(spec);
  std::vector<std::pair<hylo::StateId, hylo::StateId>> pairs;
  std::istringstream in(read_file(pairs_path));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;
    if (!(ls >> b) || (ls >> extra))
      throw hylo::ParseError("pair lines are `state state`", lineno);
    pairs.emplace_back(state_by_name(g, a), state_by_name(g, b));
  }
  auto q = quotient_coequalizer(g, pairs);
  std::cout << export_game_file(q.quotient);
}

template <class Algebra>
void print_bouton(hylo::SumKind kind, Algebra algebra, std::uint32_t k, std::uint32_t d) {
  auto approx = bouton_approximation(kind, std::move(algebra), k, d);
  std::cout << "universe " << approx.universe().size() << " (birthday <= " << k
            << "), contexts " << approx.contexts().size() << " (birthday <= " << d << ")\n";
  std::cout << "classes: " << approx.n_classes() << "\n";
  for (std::uint32_t c = 0; c < approx.n_classes(); ++c) {
    hylo::HfsId rep = approx.class_representative(c);
    std::cout << "  class " << c << ": value " << hylo::to_string(approx.class_value(c))
              << ", representative " << approx.arena().to_string(rep)
              << " code=" << code_or_guard(approx.arena(), rep) << "\n";
  }
  std::cout << "table:\n";
  for (std::uint32_t a = 0; a < approx.n_classes(); ++a) {
    std::cout << " ";
    for (std::uint32_t b = 0; b < approx.n_classes(); ++b) {
      if (approx.table(a, b) == UINT32_MAX)
        std::cout << " ?";
      else
        std::cout << " " << approx.table(a, b);
    }
    std::cout << "\n";
  }
  if (approx.stable()) {
    std::cout << "stable: yes\n";
  } else {
    auto witness = *approx.instability_witness();
    std::cout << "stable: NO  witness " << approx.arena().to_string(witness.first) << " * "
              << approx.arena().to_string(witness.second) << " (raise k or d)\n";
    throw hylo::InstabilityError("approximation unstable");
  }
}

void cmd_bouton(const std::string& kind, const std::string& alg, std::uint32_t k,
                std::uint32_t d) {
  with_algebra(alg, [&](auto algebra) {
    print_bouton(hylo::sum_kind_from_name(kind), std::move(algebra), k, d);
  });
}

void cmd_dot(const std::string& spec, const std::string& alg) {
  hylo::ValidatedGame g = load_game(spec);
  if (alg.empty()) {
    std::cout << export_dot(g);
    return;
  }
  with_algebra(alg, [&](auto algebra) {
    auto values = hylo_eval(g, algebra);
    std::vector<std::string> labels;
    labels.reserve(values.size());
    for (const auto& v : values) labels.push_back(hylo::to_string(v));
    std::cout << export_dot(g, labels, outcome_values(g));
  });
}

void cmd_play(const std::string& spec, const std::string& start) {
  hylo::ValidatedGame g = load_game(spec);
  hylo::StateId s = 0;
  if (start.empty()) {
    // Default to a deepest state, where there is the most game to play.
    auto birthday = hylo_eval(g, hylo::XemAlgebra{});
    for (hylo::StateId x = 0; x < g.n_states(); ++x)
      if (birthday[x] > birthday[s]) s = x;
  } else {
    s = state_by_name(g, start);
  }
  run_play_loop(g, s, std::cin, std::cout);
}

// ---------------------------------------------------------------------------
// The property-suite runner.

struct SuiteRunner {
  int failures = 0;

  void check(const std::string& name, bool ok) {
    std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  }
};

void suite_game_core(SuiteRunner& r) {
  std::mt19937 rng(1);
  bool topo_ok = true, closure_ok = true;
  for (int trial = 0; trial < 10; ++trial) {
    std::uniform_int_distribution<std::size_t> size(1, 20);
    auto g = *hylo::game_from_generator("nim:" + std::to_string(1 + trial % 4) + "," +
                                        std::to_string(1 + trial % 3));
    std::vector<std::size_t> position(g.n_states());
    auto order = g.topological_order();
    for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
    for (hylo::StateId x = 0; x < g.n_states(); ++x)
      for (hylo::StateId y : g.options(x))
        if (position[y] >= position[x]) topo_ok = false;
    auto sub = generated_subgame(g, {0});
    if (!is_subgame(g, sub.members)) closure_ok = false;
  }
  r.check("game_core: topological order evaluates options first", topo_ok);
  r.check("game_core: generated subgames are downward closed", closure_ok);
}

void suite_hfs(SuiteRunner& r) {
  hylo::HfsArena arena;
  bool bijective = true;
  for (std::uint64_t n = 0; n < 4096; ++n)
    if (ackermann_encode(arena, ackermann_decode(arena, n)) != n) bijective = false;
  r.check("hfs: encode/decode bijective below 4096", bijective);
  bool sizes = enumerate_universe(arena, 3).size() == 16 &&
               enumerate_universe(arena, 2).size() == 4;
  r.check("hfs: universe sizes 4 and 16 at birthdays 2 and 3", sizes);
}

void suite_values(SuiteRunner& r) {
  bool galois = true;
  for (std::uint32_t n = 0; n <= 16; ++n)
    for (std::uint32_t mask = 0; mask < (1u << 8); ++mask) {
      std::vector<std::uint32_t> s;
      for (std::uint32_t v = 0; v < 8; ++v)
        if (mask & (1u << v)) s.push_back(v);
      bool prefix = true;
      for (std::uint32_t v = 0; v < n; ++v)
        if (!std::binary_search(s.begin(), s.end(), v)) prefix = false;
      bool inside = s.empty() || s.back() < n;
      if ((n <= hylo::mex(s)) != prefix || (hylo::xem(s) <= n) != inside) galois = false;
    }
  r.check("values: galois laws of mex and xem", galois);
  auto g = hylo::nim_heap_game(20);
  auto grundy = grundy_values(g);
  bool identity = true;
  for (hylo::StateId n = 0; n <= 20; ++n)
    if (grundy[n] != n) identity = false;
  r.check("values: grundy is the identity on nim heaps", identity);
}

void suite_sums(SuiteRunner& r) {
  bool rb = true;
  for (std::uint32_t ms = 0; ms < (1u << 6); ++ms)
    for (std::uint32_t mt = 0; mt < (1u << 6); ++mt) {
      std::vector<std::uint32_t> s, t;
      for (std::uint32_t v = 0; v < 6; ++v) {
        if (ms & (1u << v)) s.push_back(v);
        if (mt & (1u << v)) t.push_back(v);
      }
      if (!hylo::rota_baxter_check(s, t)) rb = false;
    }
  r.check("sums: rota-baxter identity on subsets of {0..5}", rb);

  bool nimrule = true;
  for (std::uint32_t a = 1; a <= 3 && nimrule; ++a)
    for (std::uint32_t b = 1; b <= 3; ++b) {
      auto sum = game_sum(hylo::kConwaySum, hylo::nim_heap_game(a), hylo::nim_heap_game(b));
      auto grundy = grundy_values(sum);
      for (hylo::StateId x = 0; x <= a; ++x)
        for (hylo::StateId y = 0; y <= b; ++y)
          if (grundy[hylo::pair_state(x, y, b + 1)] != (x ^ y)) nimrule = false;
    }
  r.check("sums: the nim-sum rule on heap pairs", nimrule);
}

void suite_universal(SuiteRunner& r) {
  bool stirling = true;
  for (std::uint32_t n = 1; n <= 4; ++n)
    for (std::uint32_t k = 1; k <= 3; ++k) {
      std::uint64_t fact = 1;
      for (std::uint32_t i = 2; i <= k; ++i) fact *= i;
      std::uint64_t s2[6][5] = {};
      s2[0][0] = 1;
      for (std::uint32_t i = 1; i <= n; ++i)
        for (std::uint32_t j = 1; j <= k; ++j)
          s2[i][j] = j * s2[i - 1][j] + s2[i - 1][j - 1];
      if (hom_count(hylo::star_game(n), hylo::star_game(k)) != fact * s2[n][k])
        stirling = false;
    }
  r.check("universal: hom counts match the stirling recurrence", stirling);
  auto prod = product(hylo::star_game(2), hylo::star_game(3));
  r.check("universal: |S2 x S3| = 31", prod.game.n_states() == 31);
}

void suite_bouton(SuiteRunner& r) {
  auto conway = bouton_approximation(hylo::kConwaySum, hylo::NpAlgebra{}, 3, 3);
  bool xor_table = conway.stable() && conway.n_classes() == 4;
  for (std::uint32_t a = 0; a < 4 && xor_table; ++a)
    for (std::uint32_t b = 0; b < 4; ++b)
      if (conway.table(a, b) != (a ^ b)) xor_table = false;
  r.check("bouton: conway/outcome is the nim-sum on four classes", xor_table);
  auto selective = bouton_approximation(hylo::kSelectiveSum, hylo::NpAlgebra{}, 3, 3);
  r.check("bouton: selective/outcome has two classes",
          selective.stable() && selective.n_classes() == 2);
  auto conj = bouton_approximation(hylo::kConjunctiveSum, hylo::NpAlgebra{}, 3, 3);
  bool min_table = conj.stable() && conj.n_classes() == 4;
  for (std::uint32_t a = 0; a < 4 && min_table; ++a)
    for (std::uint32_t b = 0; b < 4; ++b)
      if (conj.table(a, b) != std::min(a, b)) min_table = false;
  r.check("bouton: conjunctive/outcome is min on remoteness classes", min_table);
}

int cmd_verify(const std::string& suite) {
  SuiteRunner r;
  bool all = suite == "all";
  if (all || suite == "game_core") suite_game_core(r);
  if (all || suite == "hfs") suite_hfs(r);
  if (all || suite == "values") suite_values(r);
  if (all || suite == "sums") suite_sums(r);
  if (all || suite == "universal") suite_universal(r);
  if (all || suite == "bouton") suite_bouton(r);
  if (!all && suite != "game_core" && suite != "hfs" && suite != "values" &&
      suite != "sums" && suite != "universal" && suite != "bouton")
    throw UsageError("unknown suite: " + suite +
                     " (game_core|hfs|values|sums|universal|bouton|all)");
  return r.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"combinatorial game engine on well-founded graphs"};
  app.require_subcommand(1);

  std::string game_a, game_b, alg, kind = "conway", map_path, pairs_path, suite, start;
  std::size_t budget = 1000000, limit = 1000000;
  std::uint32_t bouton_k = 3, bouton_d = 3;

  auto* check = app.add_subcommand("check", "validate a game and report its size");
  check->add_option("game", game_a)->required();

  auto* value = app.add_subcommand("value", "evaluate a built-in game value per state");
  value->add_option("game", game_a)->required();
  value->add_option("--alg", alg, "mex|np|empty|xem|mnp|remoteness|bin")->required();

  auto* xi = app.add_subcommand("xi", "reduce states to hereditarily finite sets");
  xi->add_option("game", game_a)->required();

  auto* code = app.add_subcommand("code", "decode an Ackermann code, or code a game");
  code->add_option("arg", game_a)->required();

  auto* sum = app.add_subcommand("sum", "sum two games");
  sum->add_option("--kind", kind, "conway|selective|conjunctive");
  sum->add_option("gameA", game_a)->required();
  sum->add_option("gameB", game_b)->required();

  auto* morphism = app.add_subcommand("morphism", "check a state map for the two conditions");
  morphism->add_option("--map", map_path, "file of `source target` lines")->required();
  morphism->add_option("gameA", game_a)->required();
  morphism->add_option("gameB", game_b)->required();

  auto* prod = app.add_subcommand("product", "categorical product of two games");
  prod->add_option("gameA", game_a)->required();
  prod->add_option("gameB", game_b)->required();
  prod->add_option("--budget", budget);

  auto* homcount = app.add_subcommand("homcount", "count game morphisms A -> B");
  homcount->add_option("gameA", game_a)->required();
  homcount->add_option("gameB", game_b)->required();
  homcount->add_option("--limit", limit);

  auto* quotient = app.add_subcommand("quotient", "coequalize a list of state pairs");
  quotient->add_option("--pairs", pairs_path, "file of `state state` lines")->required();
  quotient->add_option("game", game_a)->required();

  auto* bouton = app.add_subcommand("bouton", "bounded Bouton-monoid approximation");
  bouton->add_option("--kind", kind, "conway|selective|conjunctive");
  bouton->add_option("--alg", alg, "target game value")->default_val("np");
  bouton->add_option("--k", bouton_k, "universe birthday bound");
  bouton->add_option("--d", bouton_d, "context birthday bound");

  auto* verify = app.add_subcommand("verify", "run a property suite");
  verify->add_option("suite", suite, "game_core|hfs|values|sums|universal|bouton|all")
      ->required();

  auto* dot = app.add_subcommand("dot", "export graphviz");
  dot->add_option("game", game_a)->required();
  dot->add_option("--alg", alg, "annotate with a game value");

  auto* play = app.add_subcommand("play", "interactive play against the engine");
  play->add_option("game", game_a)->required();
  play->add_option("--start", start, "start state (default: a deepest state)");

  try {
    app.parse(argc, argv);
    if (check->parsed()) cmd_check(game_a);
    if (value->parsed()) cmd_value(game_a, alg);
    if (xi->parsed()) cmd_xi(game_a);
    if (code->parsed()) cmd_code(game_a);
    if (sum->parsed()) cmd_sum(kind, game_a, game_b);
    if (morphism->parsed()) cmd_morphism(map_path, game_a, game_b);
    if (prod->parsed()) cmd_product(game_a, game_b, budget);
    if (homcount->parsed()) cmd_homcount(game_a, game_b, limit);
    if (quotient->parsed()) cmd_quotient(pairs_path, game_a);
    if (bouton->parsed()) cmd_bouton(kind, alg, bouton_k, bouton_d);
    if (verify->parsed()) return cmd_verify(suite);
    if (dot->parsed()) cmd_dot(game_a, alg);
    if (play->parsed()) cmd_play(game_a, start);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const hylo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
