#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hylo/game.hpp"
#include "hylo/hfs.hpp"

namespace hylo {

// ---------------------------------------------------------------------------
// Carriers.

enum class Outcome : std::uint8_t { P = 0, N = 1 };

inline std::string to_string(Outcome o) { return o == Outcome::P ? "P" : "N"; }

/// Remoteness value P_0 < N_1 < P_2 < N_3 < ...; the parity tag is derived
/// from the index (even = P), and the order is numeric on the index.
struct Remoteness {
  std::uint32_t index = 0;

  bool is_p() const { return index % 2 == 0; }
  Outcome outcome() const { return is_p() ? Outcome::P : Outcome::N; }
  bool operator==(const Remoteness& o) const { return index == o.index; }
  bool operator<(const Remoteness& o) const { return index < o.index; }
};

inline std::string to_string(const Remoteness& r) {
  return (r.is_p() ? "P" : "N") + std::to_string(r.index);
}

inline std::string to_string(bool b) { return b ? "true" : "false"; }
inline std::string to_string(std::uint32_t n) { return std::to_string(n); }
inline std::string to_string(const BigNat& n) { return n.str(); }

// ---------------------------------------------------------------------------
// Step functions. Every algebra consumes a *set* of carrier values, passed
// as a sorted, duplicate-free vector.

/// Minimum excluded natural: the least natural not in S.
inline std::uint32_t mex(std::span<const std::uint32_t> sorted_set) {
  std::uint32_t n = 0;
  for (std::uint32_t v : sorted_set) {
    if (v > n) break;
    if (v == n) ++n;
  }
  return n;
}

/// 0 for the empty set, otherwise max(S) + 1: the least strict upper bound.
inline std::uint32_t xem(std::span<const std::uint32_t> sorted_set) {
  return sorted_set.empty() ? 0 : sorted_set.back() + 1;
}

/// Grundy numbers.
struct MexAlgebra {
  using Value = std::uint32_t;
  static constexpr const char* name = "mex";
  Value step(const std::vector<Value>& s) const { return mex(s); }
};

/// Birthday.
struct XemAlgebra {
  using Value = std::uint32_t;
  static constexpr const char* name = "xem";
  Value step(const std::vector<Value>& s) const { return xem(s); }
};

/// Outcome: P exactly when no option is P.
struct NpAlgebra {
  using Value = Outcome;
  static constexpr const char* name = "np";
  Value step(const std::vector<Value>& s) const {
    for (Value v : s)
      if (v == Outcome::P) return Outcome::N;
    return Outcome::P;
  }
};

/// Ended states: true exactly on terminal states.
struct EmptyAlgebra {
  using Value = bool;
  static constexpr const char* name = "empty";
  Value step(const std::vector<Value>& s) const { return s.empty(); }
};

/// Misere outcome: P exactly when the option set is {N}.
struct MnpAlgebra {
  using Value = Outcome;
  static constexpr const char* name = "mnp";
  Value step(const std::vector<Value>& s) const {
    return (s.size() == 1 && s.front() == Outcome::N) ? Outcome::P : Outcome::N;
  }
};

/// Remoteness: move to the quickest win if one exists, otherwise stall.
///   N_{min{n | P_n in S} + 1} when S contains a P value,
///   P_{xem{n | N_n in S}}     when S contains only N values.
struct RemotenessAlgebra {
  using Value = Remoteness;
  static constexpr const char* name = "remoteness";
  Value step(const std::vector<Value>& s) const {
    std::optional<std::uint32_t> min_p;
    std::uint32_t xem_n = 0;
    for (const Value& v : s) {
      if (v.is_p()) {
        if (!min_p || v.index < *min_p) min_p = v.index;
      } else {
        xem_n = std::max(xem_n, v.index + 1);
      }
    }
    if (min_p) return Remoteness{*min_p + 1};
    return Remoteness{xem_n};
  }
};

/// Ackermann codes: S maps to the sum of 2^s. Shares the code bit budget.
struct BinAlgebra {
  using Value = BigNat;
  static constexpr const char* name = "bin";
  std::uint64_t bit_budget = kDefaultCodeBitBudget;

  Value step(const std::vector<Value>& s) const {
    BigNat out = 0;
    for (const Value& v : s) {
      if (v >= bit_budget)
        throw DepthGuardError("bin algebra exceeds the " + std::to_string(bit_budget) +
                              "-bit budget");
      bit_set(out, static_cast<unsigned>(v));
    }
    return out;
  }
};

/// Applies a step function to an arbitrary collection, collapsing it to a
/// set first (the functor is the finite powerset, so duplicates never count).
template <class Algebra>
typename Algebra::Value algebra_step(const Algebra& alg,
                                     std::vector<typename Algebra::Value> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return alg.step(values);
}

// ---------------------------------------------------------------------------
// The hylomorphism evaluator.

/// Evaluates the unique coalgebra-to-algebra map of a validated game:
///   v(x) = step({ v(x') | x -> x' }),
/// each state computed exactly once, along the topological order.
template <class Algebra>
std::vector<typename Algebra::Value> hylo_eval(const ValidatedGame& g, const Algebra& alg) {
  using Value = typename Algebra::Value;
  std::vector<Value> val(g.n_states());
  std::vector<Value> kids;
  for (StateId x : g.topological_order()) {
    kids.clear();
    for (StateId y : g.options(x)) kids.push_back(val[y]);
    std::sort(kids.begin(), kids.end());
    kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
    val[x] = alg.step(kids);
  }
  return val;
}

inline std::vector<std::uint32_t> grundy_values(const ValidatedGame& g) {
  return hylo_eval(g, MexAlgebra{});
}

inline std::vector<Outcome> outcome_values(const ValidatedGame& g) {
  return hylo_eval(g, NpAlgebra{});
}

// ---------------------------------------------------------------------------
// Algebra homomorphisms.

template <class AlgebraA, class AlgebraB>
struct AlgebraHomReport {
  bool holds = true;
  // First failing sample, with both sides evaluated.
  std::optional<std::vector<typename AlgebraA::Value>> counterexample;
  std::optional<typename AlgebraB::Value> lhs, rhs;
};

/// Checks h(stepA(S)) == stepB(h[S]) on every sample set. This is the algebra
/// homomorphism square; when it holds, the B-value of any game factors as
/// h after the A-value.
template <class AlgebraA, class AlgebraB, class H>
AlgebraHomReport<AlgebraA, AlgebraB> check_algebra_hom(
    H&& h, const AlgebraA& a, const AlgebraB& b,
    const std::vector<std::vector<typename AlgebraA::Value>>& samples) {
  AlgebraHomReport<AlgebraA, AlgebraB> report;
  for (const auto& sample : samples) {
    auto lhs = h(algebra_step(a, sample));
    std::vector<typename AlgebraB::Value> image;
    image.reserve(sample.size());
    for (const auto& v : sample) image.push_back(h(v));
    auto rhs = algebra_step(b, std::move(image));
    if (!(lhs == rhs)) {
      report.holds = false;
      report.counterexample = sample;
      report.lhs = lhs;
      report.rhs = rhs;
      return report;
    }
  }
  return report;
}

}  // namespace hylo
