#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hylo/algebra.hpp"
#include "hylo/hfs.hpp"
#include "hylo/rule_game.hpp"
#include "hylo/sums.hpp"
#include "hylo/universal.hpp"
#include "oracles.hpp"

using namespace hylo;

namespace {

std::uint32_t hfs_grundy(HfsArena& arena, HfsId id) {
  auto frag = hfs_fragment_game(arena, {id});
  return grundy_values(frag.game)[frag.state(id)];
}

}  // namespace

TEST_CASE("sum kinds") {
  REQUIRE(kConwaySum.unital);
  REQUIRE(kSelectiveSum.unital);
  REQUIRE_FALSE(kConjunctiveSum.unital);
  REQUIRE(kConwaySum.commutative);
  REQUIRE(kSelectiveSum.commutative);
  REQUIRE(kConjunctiveSum.commutative);
  REQUIRE(sum_kind_from_name("conway") == kConwaySum);
  REQUIRE_THROWS_AS(sum_kind_from_name("tensor"), BuildError);
}

TEST_CASE("game_sum") {
  SECTION("conway sum of chains is the grid") {
    auto sum = game_sum(kConwaySum, chain_game(3), chain_game(4));
    REQUIRE(sum.n_states() == 20);
    REQUIRE(sum.game().n_edges() == 31);  // 3*5 + 4*4
  }
  SECTION("selective option counts add and multiply") {
    std::mt19937 rng(61);
    ValidatedGame x_game = oracles::random_game(rng, 6);
    ValidatedGame y_game = oracles::random_game(rng, 6);
    auto sum = game_sum(kSelectiveSum, x_game, y_game);
    for (StateId x = 0; x < x_game.n_states(); ++x)
      for (StateId y = 0; y < y_game.n_states(); ++y) {
        std::size_t dx = x_game.options(x).size(), dy = y_game.options(y).size();
        REQUIRE(sum.options(pair_state(x, y, y_game.n_states())).size() ==
                dx + dx * dy + dy);
      }
  }
  SECTION("conjunctive sum freezes when either side is terminal") {
    auto sum = game_sum(kConjunctiveSum, star_game(2), chain_game(3));
    // terminal x anything has no joint move
    for (StateId y = 0; y <= 3; ++y)
      REQUIRE(sum.options(pair_state(1, y, 4)).empty());
  }
}

TEST_CASE("nim_sum") {
  REQUIRE(nim_sum(3, 5) == 6);
  REQUIRE(nim_sum(7, 5) == 2);
  for (std::uint64_t n = 0; n < 64; ++n) REQUIRE(nim_sum(n, n) == 0);
}

TEST_CASE("hfs_sum") {
  HfsArena arena;
  HfsId zero = arena.empty();
  SECTION("empty plus empty is empty") {
    REQUIRE(hfs_sum(kConwaySum, arena, zero, zero) == zero);
  }
  SECTION("1 + 1 = {{0}}: the two-move chain") {
    HfsId one = von_neumann(arena, 1);
    HfsId expect = arena.intern({arena.intern({zero})});
    REQUIRE(hfs_sum(kConwaySum, arena, one, one) == expect);
  }
  SECTION("conjunctive with the empty set is empty") {
    for (HfsId x : enumerate_universe(arena, 2))
      REQUIRE(hfs_sum(kConjunctiveSum, arena, zero, x) == zero);
  }
}

TEST_CASE("rota-baxter identity of mex and xor") {
  SECTION("empty sets") { REQUIRE(rota_baxter_check({}, {})); }
  SECTION("worked example {0,1} and {0}") {
    // lhs 2 xor 1 = 3, rhs mex({1,0} u {2}) = 3
    REQUIRE(rota_baxter_check({0, 1}, {0}));
  }
  SECTION("exhaustive over subsets of {0..6}") {
    for (std::uint32_t ms = 0; ms < (1u << 7); ++ms)
      for (std::uint32_t mt = 0; mt < (1u << 7); ++mt) {
        std::vector<std::uint32_t> s, t;
        for (std::uint32_t v = 0; v < 7; ++v) {
          if (ms & (1u << v)) s.push_back(v);
          if (mt & (1u << v)) t.push_back(v);
        }
        REQUIRE(rota_baxter_check(s, t));
      }
  }
}

TEST_CASE("xi carries sums of games to the miniature monoid") {
  std::mt19937 rng(67);
  for (SumKind kind : {kConwaySum, kSelectiveSum, kConjunctiveSum}) {
    for (int trial = 0; trial < 8; ++trial) {
      ValidatedGame x_game = oracles::random_game(rng, 20, 4);
      ValidatedGame y_game = oracles::random_game(rng, 20, 4);
      auto sum = game_sum(kind, x_game, y_game);
      HfsArena arena;
      HfsSumEngine engine(kind, arena);
      auto xi_x = xi_reduce(arena, x_game);
      auto xi_y = xi_reduce(arena, y_game);
      auto xi_sum = xi_reduce(arena, sum);
      for (StateId x = 0; x < x_game.n_states(); ++x)
        for (StateId y = 0; y < y_game.n_states(); ++y)
          REQUIRE(xi_sum[pair_state(x, y, y_game.n_states())] ==
                  engine.sum(xi_x[x], xi_y[y]));
    }
  }
}

TEST_CASE("the nim-sum rule for conway sums") {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    ValidatedGame x_game = oracles::random_game(rng, 15, 5);
    ValidatedGame y_game = oracles::random_game(rng, 15, 5);
    auto sum = game_sum(kConwaySum, x_game, y_game);
    auto gx = grundy_values(x_game);
    auto gy = grundy_values(y_game);
    auto gs = grundy_values(sum);
    for (StateId x = 0; x < x_game.n_states(); ++x)
      for (StateId y = 0; y < y_game.n_states(); ++y)
        REQUIRE(gs[pair_state(x, y, y_game.n_states())] == (gx[x] ^ gy[y]));
  }
}

TEST_CASE("grundy decomposes over the miniature conway sum") {
  HfsArena arena;
  HfsSumEngine engine(kConwaySum, arena);
  auto universe = enumerate_universe(arena, 3);
  for (HfsId a : universe)
    for (HfsId b : universe)
      REQUIRE(hfs_grundy(arena, engine.sum(a, b)) ==
              (hfs_grundy(arena, a) ^ hfs_grundy(arena, b)));
}

TEST_CASE("miniature monoid laws on universe(2)") {
  for (SumKind kind : {kConwaySum, kSelectiveSum, kConjunctiveSum}) {
    HfsArena arena;
    HfsSumEngine engine(kind, arena);
    auto universe = enumerate_universe(arena, 2);
    SECTION(std::string("commutativity and associativity: ") + kind.name()) {
      for (HfsId a : universe)
        for (HfsId b : universe) {
          REQUIRE(engine.sum(a, b) == engine.sum(b, a));
          for (HfsId c : universe)
            REQUIRE(engine.sum(engine.sum(a, b), c) == engine.sum(a, engine.sum(b, c)));
        }
    }
    if (kind.unital) {
      SECTION(std::string("the empty set is the unit: ") + kind.name()) {
        for (HfsId a : universe) {
          REQUIRE(engine.sum(a, arena.empty()) == a);
          REQUIRE(engine.sum(arena.empty(), a) == a);
        }
      }
    }
  }
}

TEST_CASE("multi-heap nim is the iterated conway sum of heaps") {
  SECTION("two heaps of 2") {
    auto frag = reachable_fragment(nim_rule(2), nim_token({2, 2}), 100);
    auto sum = game_sum(kConwaySum, nim_heap_game(2), nim_heap_game(2));
    REQUIRE(are_isomorphic(frag.game, sum).isomorphic);
  }
  SECTION("two heaps of 3") {
    auto frag = reachable_fragment(nim_rule(2), nim_token({3, 3}), 100);
    auto sum = game_sum(kConwaySum, nim_heap_game(3), nim_heap_game(3));
    REQUIRE(are_isomorphic(frag.game, sum).isomorphic);
  }
  SECTION("three heaps of 2 and 3") {
    auto frag = reachable_fragment(nim_rule(3), nim_token({3, 2, 3}), 100);
    auto pair_sum = game_sum(kConwaySum, nim_heap_game(3), nim_heap_game(2));
    auto triple = game_sum(kConwaySum, pair_sum, nim_heap_game(3));
    REQUIRE(are_isomorphic(frag.game, triple).isomorphic);
  }
}
