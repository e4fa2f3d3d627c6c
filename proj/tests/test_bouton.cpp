#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hylo/algebra.hpp"
#include "hylo/bouton.hpp"
#include "hylo/monoid.hpp"
#include "hylo/rule_game.hpp"
#include "oracles.hpp"

using namespace hylo;

namespace {

/// All partitions of {0..n-1} as restricted growth strings.
std::vector<std::vector<std::uint32_t>> all_partitions(std::uint32_t n) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> rgs(n, 0);
  auto rec = [&](auto&& self, std::uint32_t i, std::uint32_t maxc) -> void {
    if (i == n) {
      out.push_back(rgs);
      return;
    }
    for (std::uint32_t c = 0; c <= maxc + 1 && c <= i; ++c) {
      rgs[i] = c;
      self(self, i + 1, std::max(maxc, c));
    }
  };
  if (n == 0) return out;
  rgs[0] = 0;
  rec(rec, 1, 0);
  if (n == 1) out.push_back(rgs);
  return out;
}

}  // namespace

TEST_CASE("finite monoid validation") {
  SECTION("a non-associative table is rejected") {
    // 2-element table with x*y chosen to break (0*0)*1 = 0*(0*1)
    REQUIRE_THROWS_AS(FiniteMonoid(2, {1, 0, 0, 0}, std::nullopt), BuildError);
  }
  SECTION("a bad unit is rejected") {
    // multiplication is constant zero; 1 is not a unit
    REQUIRE_THROWS_AS(FiniteMonoid(2, {0, 0, 0, 0}, 1), BuildError);
  }
  SECTION("a semigroup needs no unit") {
    // left-zero semigroup: a * b = a
    REQUIRE_NOTHROW(FiniteMonoid(2, {0, 0, 1, 1}, std::nullopt));
  }
}

TEST_CASE("syntactic factorization") {
  SECTION("a constant function collapses everything") {
    auto m = cyclic_monoid(5);
    auto fact = syntactic_factorization(m, std::vector<int>(5, 7));
    REQUIRE(fact.n_classes() == 1);
  }
  SECTION("detecting zero in Z/4 needs all four classes") {
    auto m = cyclic_monoid(4);
    std::vector<bool> f{true, false, false, false};
    auto fact = syntactic_factorization(m, f);
    REQUIRE(fact.n_classes() == 4);
    for (std::uint32_t a = 0; a < 4; ++a)
      for (std::uint32_t b = 0; b < 4; ++b)
        REQUIRE(fact.quotient.mul(a, b) == m.mul(a, b));
  }
  SECTION("parity on Z/4 factors through Z/2") {
    auto m = cyclic_monoid(4);
    std::vector<int> parity{0, 1, 0, 1};
    auto fact = syntactic_factorization(m, parity);
    REQUIRE(fact.n_classes() == 2);
    REQUIRE(fact.class_of == std::vector<std::uint32_t>{0, 1, 0, 1});
    REQUIRE(fact.quotient.mul(1, 1) == 0);
    REQUIRE(fact.quotient.unit() == 0);
  }
  SECTION("q is a homomorphism and a after q recovers f") {
    std::mt19937 rng(73);
    for (int trial = 0; trial < 20; ++trial) {
      auto m = oracles::random_monoid(rng, 8);
      std::uniform_int_distribution<int> vals(0, 2);
      std::vector<int> f(m.size());
      for (auto& v : f) v = vals(rng);
      auto fact = syntactic_factorization(m, f);
      for (std::uint32_t a = 0; a < m.size(); ++a) {
        REQUIRE(fact.class_value[fact.class_of[a]] == f[a]);
        for (std::uint32_t b = 0; b < m.size(); ++b)
          REQUIRE(fact.quotient.mul(fact.class_of[a], fact.class_of[b]) ==
                  fact.class_of[m.mul(a, b)]);
      }
    }
  }
  SECTION("partition refinement equals brute force over all contexts") {
    std::mt19937 rng(79);
    for (int trial = 0; trial < 25; ++trial) {
      auto m = oracles::random_monoid(rng, 8);
      std::uniform_int_distribution<int> vals(0, 2);
      std::vector<int> f(m.size());
      for (auto& v : f) v = vals(rng);
      auto fact = syntactic_factorization(m, f);
      auto brute = oracles::brute_force_congruence(m, f);
      REQUIRE(fact.class_of == brute);
    }
  }
  SECTION("no coarser partition is both a congruence and f-consistent") {
    std::mt19937 rng(83);
    for (int trial = 0; trial < 8; ++trial) {
      auto m = oracles::random_monoid(rng, 6);
      std::uniform_int_distribution<int> vals(0, 1);
      std::vector<int> f(m.size());
      for (auto& v : f) v = vals(rng);
      auto fact = syntactic_factorization(m, f);
      for (const auto& part : all_partitions(static_cast<std::uint32_t>(m.size()))) {
        // f-consistent?
        bool consistent = true;
        for (std::size_t a = 0; a < m.size() && consistent; ++a)
          for (std::size_t b = 0; b < m.size(); ++b)
            if (part[a] == part[b] && f[a] != f[b]) {
              consistent = false;
              break;
            }
        if (!consistent || !is_congruence(m, part)) continue;
        // ... then it refines the syntactic partition.
        for (std::size_t a = 0; a < m.size(); ++a)
          for (std::size_t b = 0; b < m.size(); ++b)
            if (part[a] == part[b]) REQUIRE(fact.class_of[a] == fact.class_of[b]);
      }
    }
  }
}

TEST_CASE("bouton approximation: conway + outcome") {
  auto approx = bouton_approximation(kConwaySum, NpAlgebra{}, 3, 3);
  REQUIRE(approx.stable());
  REQUIRE(approx.n_classes() == 4);
  SECTION("classes are the grundy values 0..3") {
    for (std::uint32_t n = 0; n <= 3; ++n)
      REQUIRE(approx.classify(von_neumann(approx.arena(), n)) == n);
  }
  SECTION("the table is xor") {
    for (std::uint32_t a = 0; a < 4; ++a)
      for (std::uint32_t b = 0; b < 4; ++b) REQUIRE(approx.table(a, b) == (a ^ b));
  }
  SECTION("only class 0 maps to P") {
    for (std::uint32_t c = 0; c < 4; ++c)
      REQUIRE(approx.class_value(c) == (c == 0 ? Outcome::P : Outcome::N));
  }
  SECTION("classes coincide with the grundy kernel on the universe") {
    HfsArena& arena = approx.arena();
    for (std::size_t i = 0; i < approx.universe().size(); ++i)
      for (std::size_t j = 0; j < approx.universe().size(); ++j) {
        auto frag_i = hfs_fragment_game(arena, {approx.universe()[i]});
        auto frag_j = hfs_fragment_game(arena, {approx.universe()[j]});
        auto gi = grundy_values(frag_i.game)[frag_i.state(approx.universe()[i])];
        auto gj = grundy_values(frag_j.game)[frag_j.state(approx.universe()[j])];
        REQUIRE((approx.class_of_universe(i) == approx.class_of_universe(j)) == (gi == gj));
      }
  }
  SECTION("classification works outside the universe") {
    HfsArena& arena = approx.arena();
    HfsId one = von_neumann(arena, 1);
    REQUIRE(approx.classify(approx.sum(one, one)) == 0);  // 1 xor 1
    REQUIRE(approx.classify(arena.empty()) == 0);
  }
}

TEST_CASE("bouton approximation: selective + outcome") {
  auto approx = bouton_approximation(kSelectiveSum, NpAlgebra{}, 3, 3);
  REQUIRE(approx.stable());
  REQUIRE(approx.n_classes() == 2);
  SECTION("class 0 is P, class 1 is N, and the table is min under N < P") {
    REQUIRE(approx.class_value(0) == Outcome::P);
    REQUIRE(approx.class_value(1) == Outcome::N);
    REQUIRE(approx.table(0, 0) == 0);
    REQUIRE(approx.table(0, 1) == 1);
    REQUIRE(approx.table(1, 0) == 1);
    REQUIRE(approx.table(1, 1) == 1);
  }
}

TEST_CASE("bouton approximation: conjunctive + outcome") {
  auto approx = bouton_approximation(kConjunctiveSum, NpAlgebra{}, 3, 3);
  REQUIRE(approx.stable());
  REQUIRE(approx.n_classes() == 4);
  SECTION("classes are remoteness values P0 < N1 < P2 < N3") {
    for (std::uint32_t c = 0; c < 4; ++c) {
      auto frag = hfs_fragment_game(approx.arena(), {approx.class_representative(c)});
      auto remote = hylo_eval(frag.game, RemotenessAlgebra{});
      REQUIRE(remote[frag.state(approx.class_representative(c))].index == c);
      REQUIRE(approx.class_value(c) == (c % 2 == 0 ? Outcome::P : Outcome::N));
    }
  }
  SECTION("the table is min on the index") {
    for (std::uint32_t a = 0; a < 4; ++a)
      for (std::uint32_t b = 0; b < 4; ++b)
        REQUIRE(approx.table(a, b) == std::min(a, b));
  }
}

TEST_CASE("bouton with richer target values") {
  SECTION("conway + grundy: the nim-sum monoid with the identity value map") {
    auto approx = bouton_approximation(kConwaySum, MexAlgebra{}, 3, 3);
    REQUIRE(approx.stable());
    REQUIRE(approx.n_classes() == 4);
    for (std::uint32_t c = 0; c < 4; ++c) REQUIRE(approx.class_value(c) == c);
    for (std::uint32_t a = 0; a < 4; ++a)
      for (std::uint32_t b = 0; b < 4; ++b) REQUIRE(approx.table(a, b) == (a ^ b));
  }
  SECTION("conjunctive + remoteness: remoteness is its own decomposition value") {
    auto approx = bouton_approximation(kConjunctiveSum, RemotenessAlgebra{}, 3, 3);
    REQUIRE(approx.stable());
    REQUIRE(approx.n_classes() == 4);
    for (std::uint32_t c = 0; c < 4; ++c) REQUIRE(approx.class_value(c) == Remoteness{c});
    for (std::uint32_t a = 0; a < 4; ++a)
      for (std::uint32_t b = 0; b < 4; ++b)
        REQUIRE(approx.table(a, b) == std::min(a, b));
  }
}

TEST_CASE("bouton engine guards and errors") {
  SECTION("bounds above the guard are rejected") {
    REQUIRE_THROWS_AS(bouton_approximation(kConwaySum, NpAlgebra{}, 4, 3), SizeGuardError);
  }
  SECTION("conway/outcome needs grundy-3 contexts: unstable below k = d = 3") {
    BoutonApproximation<NpAlgebra> small(kConwaySum, NpAlgebra{}, 2, 2);
    REQUIRE_FALSE(small.stable());
    REQUIRE(small.instability_witness().has_value());
    REQUIRE_THROWS_AS(small.classify(small.arena().empty()), InstabilityError);
  }
  SECTION("two-sided contexts agree with one-sided for a commutative sum") {
    BoutonApproximation<NpAlgebra> two(kSelectiveSum, NpAlgebra{}, 2, 2, 3, true);
    BoutonApproximation<NpAlgebra> one(kSelectiveSum, NpAlgebra{}, 2, 2, 3, false);
    REQUIRE(two.stable());
    REQUIRE(two.n_classes() == one.n_classes());
    for (std::size_t i = 0; i < two.universe().size(); ++i)
      REQUIRE(two.class_of_universe(i) == one.class_of_universe(i));
  }
  SECTION("an element beyond a too-small universe has no class") {
    auto approx = bouton_approximation(kConwaySum, NpAlgebra{}, 1, 1);
    REQUIRE(approx.stable());
    REQUIRE(approx.n_classes() == 2);
    REQUIRE_THROWS_AS(approx.classify(von_neumann(approx.arena(), 2)), UnknownSignature);
  }
}

TEST_CASE("bouton game values") {
  auto approx = bouton_approximation(kConwaySum, NpAlgebra{}, 3, 3);
  SECTION("nim heap states classify by their grundy value") {
    auto classes = bouton_game_value(nim_heap_game(3), approx);
    for (StateId n = 0; n <= 3; ++n) REQUIRE(classes[n] == n);
  }
  SECTION("terminal states take the class of the empty set") {
    auto classes = bouton_game_value(star_game(3), approx);
    for (StateId x = 1; x <= 3; ++x) REQUIRE(classes[x] == 0);
    REQUIRE(approx.class_value(classes[0]) == Outcome::N);
  }
  SECTION("a conway pair state lands in the table cell of its parts") {
    std::mt19937 rng(89);
    for (int trial = 0; trial < 6; ++trial) {
      ValidatedGame x_game = oracles::random_game(rng, 8, 3);
      ValidatedGame y_game = oracles::random_game(rng, 8, 3);
      auto sum = game_sum(kConwaySum, x_game, y_game);
      auto cx = bouton_game_value(x_game, approx);
      auto cy = bouton_game_value(y_game, approx);
      auto cs = bouton_game_value(sum, approx);
      for (StateId x = 0; x < x_game.n_states(); ++x)
        for (StateId y = 0; y < y_game.n_states(); ++y)
          REQUIRE(cs[pair_state(x, y, y_game.n_states())] ==
                  approx.table(cx[x], cy[y]));
    }
  }
  SECTION("informativeness: the class value is the outcome, pointwise") {
    std::mt19937 rng(97);
    ValidatedGame g = oracles::random_game(rng, 10, 3);
    auto classes = bouton_game_value(g, approx);
    auto outcome = outcome_values(g);
    for (StateId x = 0; x < g.n_states(); ++x)
      REQUIRE(approx.class_value(classes[x]) == outcome[x]);
  }
}
