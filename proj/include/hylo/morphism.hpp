#pragma once

#include <algorithm>
#include <vector>

#include "hylo/game.hpp"

namespace hylo {

/// A total state assignment that passed check_morphism against a concrete
/// source/target pair. Operations on morphisms take those games explicitly.
struct GameMorphism {
  std::vector<StateId> map;  // map[x] is a target state

  StateId operator()(StateId x) const { return map[x]; }
  bool operator==(const GameMorphism& other) const { return map == other.map; }
};

/// Verifies the two game-morphism conditions and returns the assignment as a
/// GameMorphism. Together they say that the set-image of the options of x
/// equals the options of f(x).
///
///   (1) graph condition:  x -> x'     implies  f(x) -> f(x')
///   (2) path-lifting:     f(x) -> y   implies  some x -> x' with f(x') = y
inline GameMorphism check_morphism(const std::vector<StateId>& assignment,
                                   const ValidatedGame& source, const ValidatedGame& target) {
  if (assignment.size() != source.n_states())
    throw BuildError("morphism assignment is not total on the source");
  for (StateId v : assignment)
    if (v >= target.n_states()) throw BuildError("morphism assignment leaves the target");

  for (StateId x = 0; x < source.n_states(); ++x) {
    auto topts = target.options(assignment[x]);
    std::vector<StateId> image;
    image.reserve(source.options(x).size());
    for (StateId xp : source.options(x)) {
      if (!std::binary_search(topts.begin(), topts.end(), assignment[xp]))
        throw GraphConditionError("graph condition fails on edge " + source.state_name(x) +
                                      " -> " + source.state_name(xp),
                                  x, xp);
      image.push_back(assignment[xp]);
    }
    std::sort(image.begin(), image.end());
    for (StateId y : topts)
      if (!std::binary_search(image.begin(), image.end(), y))
        throw PathLiftingError("path-lifting fails at " + source.state_name(x) +
                                   ": target move to " + target.state_name(y) + " has no lift",
                               x, y);
  }
  return GameMorphism{assignment};
}

inline bool is_morphism(const std::vector<StateId>& assignment, const ValidatedGame& source,
                        const ValidatedGame& target) {
  try {
    check_morphism(assignment, source, target);
    return true;
  } catch (const Error&) {
    return false;
  }
}

inline GameMorphism identity_morphism(const ValidatedGame& g) {
  std::vector<StateId> id(g.n_states());
  for (StateId x = 0; x < g.n_states(); ++x) id[x] = x;
  return GameMorphism{std::move(id)};
}

/// The set-image of a morphism, which is always a subgame of the target.
inline Subgame image_subgame(const GameMorphism& f, const ValidatedGame& target) {
  std::vector<char> hit(target.n_states(), 0);
  for (StateId y : f.map) hit[y] = 1;
  Subgame out;
  for (StateId y = 0; y < target.n_states(); ++y)
    if (hit[y]) out.members.push_back(y);
  return out;
}

/// f = (inclusion of the image) o (surjection onto the image).
struct EpiMonoFactorization {
  SubgameGame image;          // the image as a standalone game
  GameMorphism surjection;    // source -> image.game, surjective
  GameMorphism inclusion;     // image.game -> target, injective
};

inline EpiMonoFactorization epi_mono_factorize(const GameMorphism& f,
                                               const ValidatedGame& source,
                                               const ValidatedGame& target) {
  EpiMonoFactorization out;
  out.image = restrict_to_subgame(target, image_subgame(f, target));
  std::vector<StateId> surj(source.n_states());
  for (StateId x = 0; x < source.n_states(); ++x) surj[x] = out.image.old_to_new[f(x)];
  out.surjection = check_morphism(surj, source, out.image.game);
  out.inclusion = check_morphism(out.image.new_to_old, out.image.game, target);
  return out;
}

/// Preimage of a subgame of the target; the pullback of the inclusion along f.
inline Subgame inverse_image(const GameMorphism& f, const ValidatedGame& source,
                             const Subgame& target_subgame) {
  Subgame out;
  for (StateId x = 0; x < source.n_states(); ++x)
    if (target_subgame.contains(f(x))) out.members.push_back(x);
  return out;
}

/// Composition g o f of checked morphisms.
inline GameMorphism compose(const GameMorphism& g, const GameMorphism& f) {
  std::vector<StateId> m(f.map.size());
  for (std::size_t i = 0; i < f.map.size(); ++i) m[i] = g.map[f.map[i]];
  return GameMorphism{std::move(m)};
}

}  // namespace hylo
