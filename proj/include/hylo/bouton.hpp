#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hylo/algebra.hpp"
#include "hylo/game.hpp"
#include "hylo/hfs.hpp"
#include "hylo/sums.hpp"

namespace hylo {

/// A finite approximation of the Bouton monoid of a sum kind and a game
/// value, computed on the birthday-bounded universe U(k) with contexts from
/// U(d). Elements are classified by their signatures
///
///   sig(z) = ( v(z), v(c_1 * z), ..., v(c_m * z) )
///
/// over all contexts c_i. One-sided contexts suffice for the built-in sums,
/// which are all commutative; two_sided switches to v(c_i * z * c_j)
/// coordinates for user-supplied non-commutative sums.
/// Coordinate 0 keeps classes informative even for the non-unital sum.
/// The class table multiplies representatives and classifies the products;
/// `stable` records whether that classification is consistent across the
/// whole universe (decomposability), with a witness pair when it is not.
///
/// The true Bouton monoid lives on all hereditarily finite sets; this engine
/// reports instability instead of silently truncating when the bounds are
/// too small.
template <class Algebra>
class BoutonApproximation {
public:
  using Value = typename Algebra::Value;

  BoutonApproximation(SumKind kind, Algebra algebra, std::uint32_t k, std::uint32_t d,
                      std::uint32_t guard = 3, bool two_sided = false)
      : kind_(kind),
        algebra_(std::move(algebra)),
        k_(k),
        d_(d),
        two_sided_(two_sided),
        arena_(std::make_unique<HfsArena>()),
        sums_(kind, *arena_) {
    if (k > guard || d > guard)
      throw SizeGuardError("bouton_approximation: bounds exceed the guard of " +
                           std::to_string(guard));
    universe_ = enumerate_universe(*arena_, k);
    contexts_ = enumerate_universe(*arena_, d);
    sort_by_code(universe_);
    sort_by_code(contexts_);

    signatures_.reserve(universe_.size());
    for (HfsId z : universe_) signatures_.push_back(signature(z));

    class_of_.assign(universe_.size(), UINT32_MAX);
    for (std::size_t i = 0; i < universe_.size(); ++i) {
      for (std::size_t c = 0; c < class_sig_.size(); ++c)
        if (signatures_[i] == class_sig_[c]) {
          class_of_[i] = static_cast<std::uint32_t>(c);
          break;
        }
      if (class_of_[i] == UINT32_MAX) {
        class_of_[i] = static_cast<std::uint32_t>(class_sig_.size());
        class_sig_.push_back(signatures_[i]);
        class_rep_.push_back(universe_[i]);
        class_value_.push_back(signatures_[i].front());
      }
    }

    const std::size_t nc = class_sig_.size();
    table_.assign(nc * nc, UINT32_MAX);
    stable_ = true;
    for (std::size_t a = 0; a < nc && stable_; ++a)
      for (std::size_t b = 0; b < nc && stable_; ++b) {
        auto cls = try_classify(sums_.sum(class_rep_[a], class_rep_[b]));
        if (!cls) {
          stable_ = false;
          witness_ = {class_rep_[a], class_rep_[b]};
          break;
        }
        table_[a * nc + b] = *cls;
      }
    // Decomposability sweep: every product of universe elements must land in
    // the class the table predicts.
    for (std::size_t i = 0; i < universe_.size() && stable_; ++i)
      for (std::size_t j = 0; j < universe_.size() && stable_; ++j) {
        auto cls = try_classify(sums_.sum(universe_[i], universe_[j]));
        if (!cls || *cls != table_[class_of_[i] * nc + class_of_[j]]) {
          stable_ = false;
          witness_ = {universe_[i], universe_[j]};
        }
      }
  }

  SumKind kind() const { return kind_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t d() const { return d_; }
  HfsArena& arena() { return *arena_; }
  const std::vector<HfsId>& universe() const { return universe_; }
  const std::vector<HfsId>& contexts() const { return contexts_; }
  std::size_t n_classes() const { return class_sig_.size(); }
  std::uint32_t class_of_universe(std::size_t i) const { return class_of_[i]; }
  HfsId class_representative(std::uint32_t c) const { return class_rep_[c]; }
  Value class_value(std::uint32_t c) const { return class_value_[c]; }
  bool stable() const { return stable_; }
  const std::optional<std::pair<HfsId, HfsId>>& instability_witness() const { return witness_; }

  std::uint32_t table(std::uint32_t a, std::uint32_t b) const {
    return table_[a * n_classes() + b];
  }

  void require_stable() const {
    if (!stable_)
      throw InstabilityError("bouton approximation is unstable at the chosen bounds; raise k "
                             "or d");
  }

  /// Classifies any set in the engine arena by its signature; works beyond
  /// the universe (for products, game states, ...).
  std::uint32_t classify(HfsId z) {
    require_stable();
    auto cls = try_classify(z);
    if (!cls)
      throw UnknownSignature("signature of " + arena_->to_string(z) +
                             " matches no class; the bounds k/d are too small");
    return *cls;
  }

  /// The value of a set under the target algebra (hylomorphism over its
  /// membership fragment), memoized.
  Value value_of(HfsId z) {
    auto it = value_cache_.find(z);
    if (it != value_cache_.end()) return it->second;
    auto frag = hfs_fragment_game(*arena_, {z});
    auto vals = hylo_eval(frag.game, algebra_);
    for (std::size_t s = 0; s < frag.ids.size(); ++s) value_cache_.emplace(frag.ids[s], vals[s]);
    return value_cache_.at(z);
  }

  HfsId sum(HfsId a, HfsId b) { return sums_.sum(a, b); }

private:
  void sort_by_code(std::vector<HfsId>& ids) {
    // Universe elements with birthday <= 4 have codes below 2^16.
    std::vector<std::pair<std::uint64_t, HfsId>> keyed;
    keyed.reserve(ids.size());
    for (HfsId id : ids)
      keyed.emplace_back(ackermann_encode(*arena_, id).convert_to<std::uint64_t>(), id);
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = keyed[i].second;
  }

  std::vector<Value> signature(HfsId z) {
    std::vector<Value> sig;
    sig.reserve(two_sided_ ? contexts_.size() * contexts_.size() + 1
                           : contexts_.size() + 1);
    sig.push_back(value_of(z));
    if (two_sided_) {
      for (HfsId c1 : contexts_)
        for (HfsId c2 : contexts_)
          sig.push_back(value_of(sums_.sum(sums_.sum(c1, z), c2)));
    } else {
      for (HfsId c : contexts_) sig.push_back(value_of(sums_.sum(c, z)));
    }
    return sig;
  }

  std::optional<std::uint32_t> try_classify(HfsId z) {
    auto sig = signature(z);
    for (std::size_t c = 0; c < class_sig_.size(); ++c)
      if (sig == class_sig_[c]) return static_cast<std::uint32_t>(c);
    return std::nullopt;
  }

  SumKind kind_;
  Algebra algebra_;
  std::uint32_t k_, d_;
  bool two_sided_ = false;
  std::unique_ptr<HfsArena> arena_;
  HfsSumEngine sums_;
  std::vector<HfsId> universe_, contexts_;
  std::vector<std::vector<Value>> signatures_;   // universe index -> signature
  std::vector<std::uint32_t> class_of_;          // universe index -> class
  std::vector<std::vector<Value>> class_sig_;    // class -> signature
  std::vector<HfsId> class_rep_;                 // class -> least representative
  std::vector<Value> class_value_;               // a: class -> target value
  std::vector<std::uint32_t> table_;             // class x class -> class
  bool stable_ = false;
  std::optional<std::pair<HfsId, HfsId>> witness_;
  std::map<HfsId, Value> value_cache_;
};

template <class Algebra>
BoutonApproximation<Algebra> bouton_approximation(SumKind kind, Algebra algebra,
                                                  std::uint32_t k, std::uint32_t d) {
  return BoutonApproximation<Algebra>(kind, std::move(algebra), k, d);
}

/// Class of an element under a stable approximation.
template <class Algebra>
std::uint32_t classify_element(HfsId z, BoutonApproximation<Algebra>& approx) {
  return approx.classify(z);
}

/// Per-state classes of a validated game: classify(xi(x)) for every state.
/// The informativeness equation a(class(x)) = v(x) holds pointwise.
template <class Algebra>
std::vector<std::uint32_t> bouton_game_value(const ValidatedGame& g,
                                             BoutonApproximation<Algebra>& approx) {
  approx.require_stable();
  auto xi = xi_reduce(approx.arena(), g);
  std::vector<std::uint32_t> classes(g.n_states());
  for (StateId x = 0; x < g.n_states(); ++x) classes[x] = approx.classify(xi[x]);
  return classes;
}

}  // namespace hylo
