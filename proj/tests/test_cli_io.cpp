#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "hylo/io.hpp"
#include "hylo/play.hpp"
#include "hylo/rule_game.hpp"
#include "hylo/universal.hpp"
#include "oracles.hpp"

using namespace hylo;

TEST_CASE("parse_game_file") {
  SECTION("three states, one implicit edge back") {
    ValidatedGame g = parse_game_file("a : b c\nb :\nc : b\n");
    REQUIRE(g.n_states() == 3);
    REQUIRE(g.options(0).size() == 2);
    REQUIRE(g.options(1).empty());
    REQUIRE(g.options(2).size() == 1);
  }
  SECTION("comments, header, glued colon") {
    ValidatedGame g = parse_game_file(
        "# a comment\n"
        "game demo\n"
        "top: mid  # trailing comment\n"
        "mid : bottom\n");
    REQUIRE(g.label() == "demo");
    REQUIRE(g.n_states() == 3);
  }
  SECTION("a self-loop fails validation") {
    REQUIRE_THROWS_AS(parse_game_file("x : x\n"), WellFoundednessError);
  }
  SECTION("undeclared successors become terminal states") {
    ValidatedGame g = parse_game_file("a : b\n");
    REQUIRE(g.n_states() == 2);
    REQUIRE(g.options(1).empty());
  }
  SECTION("duplicate declarations carry the line number") {
    try {
      parse_game_file("a : b\nb :\na : c\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      REQUIRE(e.line() == 3);
    }
  }
  SECTION("missing colon is a parse error") {
    REQUIRE_THROWS_AS(parse_game_file("a b c\n"), ParseError);
  }
  SECTION("bad identifiers are rejected") {
    REQUIRE_THROWS_AS(parse_game_file("a : b,c\n"), ParseError);
  }
}

TEST_CASE("export round-trips modulo renaming") {
  std::vector<ValidatedGame> generated;
  generated.push_back(*game_from_generator("nim:2,2"));
  generated.push_back(*game_from_generator("sub:6:1,2,3"));
  generated.push_back(*game_from_generator("elm:5"));
  generated.push_back(*game_from_generator("binexp:10000"));
  generated.push_back(*game_from_generator("star:4"));
  generated.push_back(*game_from_generator("code:10000"));
  std::mt19937 rng(101);
  generated.push_back(oracles::random_game(rng, 20));
  for (const auto& g : generated) {
    ValidatedGame reparsed = parse_game_file(export_game_file(g));
    REQUIRE(are_isomorphic(g, reparsed).isomorphic);
  }
}

TEST_CASE("generator expressions") {
  SECTION("nim:3 is the 4-state heap fragment") {
    auto g = game_from_generator("nim:3");
    REQUIRE(g);
    REQUIRE(are_isomorphic(*g, nim_heap_game(3)).isomorphic);
  }
  SECTION("code:6 matches the membership fragment of {{0},{{0}}}") {
    auto g = game_from_generator("code:6");
    REQUIRE(g->n_states() == 4);  // 6, its children 1 and 2, and 0
  }
  SECTION("star:5") { REQUIRE(game_from_generator("star:5")->n_states() == 6); }
  SECTION("file paths are left to the caller") {
    REQUIRE_FALSE(game_from_generator("somefile.game").has_value());
  }
}

TEST_CASE("export_dot") {
  SECTION("the empty game renders an empty body") {
    ValidatedGame empty = validate_well_founded(make_game({}));
    REQUIRE(export_dot(empty) == "digraph \"game\" {\n}\n");
  }
  SECTION("chain(2) renders 3 nodes and 2 edges") {
    std::string dot = export_dot(chain_game(2));
    std::size_t nodes = 0, edges = 0;
    std::istringstream in(dot);
    std::string line;
    while (std::getline(in, line)) {
      if (line.find("label=") != std::string::npos) ++nodes;
      if (line.find("->") != std::string::npos) ++edges;
    }
    REQUIRE(nodes == 3);
    REQUIRE(edges == 2);
  }
  SECTION("outcome annotations color P-states blue") {
    ValidatedGame g = nim_heap_game(3);
    auto outcome = outcome_values(g);
    std::vector<std::string> labels;
    for (StateId x = 0; x < g.n_states(); ++x) labels.push_back(to_string(outcome[x]));
    std::string dot = export_dot(g, labels, outcome);
    REQUIRE(dot.find("n0 [label=\"0\\nP\" color=blue") != std::string::npos);
    REQUIRE(dot.find("n1 [label=\"1\\nN\" color=red") != std::string::npos);
  }
}

TEST_CASE("play loop") {
  SECTION("nim heap 1: the human takes the last stone and wins") {
    ValidatedGame g = nim_heap_game(1);
    std::istringstream in("0\n");
    std::ostringstream out;
    run_play_loop(g, 1, in, out);
    REQUIRE(out.str().find("engine has no move: engine loses.") != std::string::npos);
  }
  SECTION("subtraction nim from 4: the engine returns to multiples of 4 and wins") {
    auto frag = reachable_fragment(subtraction_rule({1, 2, 3}), 4, 100);
    for (int human_choice = 0; human_choice < 3; ++human_choice) {
      std::istringstream in(std::to_string(human_choice) + "\n0\n0\n0\n");
      std::ostringstream out;
      run_play_loop(frag.game, frag.state(4), in, out);
      REQUIRE(out.str().find("engine moves to 0") != std::string::npos);
      REQUIRE(out.str().find("you have no move: you lose.") != std::string::npos);
    }
  }
  SECTION("starting at a terminal state is an immediate loss") {
    ValidatedGame g = chain_game(2);
    std::istringstream in("");
    std::ostringstream out;
    run_play_loop(g, 0, in, out);
    REQUIRE(out.str().find("you have no move: you lose.") != std::string::npos);
  }
  SECTION("malformed input re-prompts") {
    ValidatedGame g = nim_heap_game(1);
    std::istringstream in("banana\n7\n0\n");
    std::ostringstream out;
    run_play_loop(g, 1, in, out);
    REQUIRE(out.str().find("enter an option index") != std::string::npos);
    REQUIRE(out.str().find("engine has no move") != std::string::npos);
  }
  SECTION("end of input aborts with a partial transcript") {
    ValidatedGame g = nim_heap_game(2);
    std::istringstream in("");
    std::ostringstream out;
    run_play_loop(g, 2, in, out);
    REQUIRE(out.str().find("end of input") != std::string::npos);
  }
  SECTION("the engine never passes up a winning move") {
    std::mt19937 rng(103);
    for (int trial = 0; trial < 20; ++trial) {
      ValidatedGame g = oracles::random_game(rng, 10);
      auto outcome = outcome_values(g);
      for (StateId x = 0; x < g.n_states(); ++x) {
        auto move = engine_move(g, outcome, x);
        if (!move) continue;
        if (outcome[x] == Outcome::N) {
          REQUIRE(outcome[*move] == Outcome::P);
        } else {
          // from a P-state every option is an N-state; P -> P cannot happen
          REQUIRE(outcome[*move] == Outcome::N);
        }
      }
    }
  }
}
