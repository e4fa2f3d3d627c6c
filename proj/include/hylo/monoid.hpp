#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hylo/error.hpp"

namespace hylo {

/// A finite monoid (or semigroup, when no unit is present) given by its full
/// multiplication table. Construction checks associativity on all triples
/// and the unit laws when a unit is declared.
class FiniteMonoid {
public:
  FiniteMonoid() = default;

  FiniteMonoid(std::size_t size, std::vector<std::uint32_t> table,
               std::optional<std::uint32_t> unit = std::nullopt)
      : n_(size), table_(std::move(table)), unit_(unit) {
    if (table_.size() != n_ * n_) throw BuildError("monoid table size mismatch");
    for (std::uint32_t v : table_)
      if (v >= n_) throw BuildError("monoid table entry out of range");
    for (std::uint32_t a = 0; a < n_; ++a)
      for (std::uint32_t b = 0; b < n_; ++b)
        for (std::uint32_t c = 0; c < n_; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw BuildError("multiplication is not associative at (" + std::to_string(a) +
                             "," + std::to_string(b) + "," + std::to_string(c) + ")");
    if (unit_) {
      if (*unit_ >= n_) throw BuildError("unit out of range");
      for (std::uint32_t a = 0; a < n_; ++a)
        if (mul(*unit_, a) != a || mul(a, *unit_) != a)
          throw BuildError("unit laws fail at " + std::to_string(a));
    }
  }

  std::size_t size() const { return n_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table_[a * n_ + b]; }
  std::optional<std::uint32_t> unit() const { return unit_; }

private:
  std::size_t n_ = 0;
  std::vector<std::uint32_t> table_;
  std::optional<std::uint32_t> unit_;
};

inline FiniteMonoid cyclic_monoid(std::uint32_t n) {
  std::vector<std::uint32_t> table(std::size_t{n} * n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) table[a * n + b] = (a + b) % n;
  return FiniteMonoid(n, std::move(table), 0);
}

/// The minimum monoid factorization of f: M -> A: the quotient of M by the
/// syntactic congruence
///   m ~ m'  iff  f(a m b) = f(a m' b) for all contexts a, b
/// (contexts range over M extended by an identity, so the plain values
/// f(m) = f(m') are always required; this covers the semigroup case too).
template <class V>
struct MinimumFactorization {
  std::vector<std::uint32_t> class_of;  // q: element -> class
  FiniteMonoid quotient;                // induced table, unit mapped through q
  std::vector<V> class_value;           // a: class -> target value; a(q(m)) = f(m)

  std::size_t n_classes() const { return class_value.size(); }
};

/// Computes the factorization by partition refinement: start from the kernel
/// of f and split classes until they are stable under every one-sided
/// translation. The fixpoint is exactly the two-sided context congruence.
template <class V>
MinimumFactorization<V> syntactic_factorization(const FiniteMonoid& m,
                                                const std::vector<V>& f) {
  const std::size_t n = m.size();
  if (f.size() != n) throw BuildError("syntactic_factorization: f is not total on M");
  MinimumFactorization<V> out;
  std::vector<std::uint32_t> part(n, 0);
  {
    std::vector<V> sorted(f);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t i = 0; i < n; ++i)
      part[i] = static_cast<std::uint32_t>(
          std::lower_bound(sorted.begin(), sorted.end(), f[i]) - sorted.begin());
  }
  for (;;) {
    // Signature of an element: its class plus the classes of all left and
    // right translates.
    std::vector<std::vector<std::uint32_t>> sig(n);
    for (std::uint32_t x = 0; x < n; ++x) {
      sig[x].push_back(part[x]);
      for (std::uint32_t c = 0; c < n; ++c) {
        sig[x].push_back(part[m.mul(c, x)]);
        sig[x].push_back(part[m.mul(x, c)]);
      }
    }
    std::vector<std::vector<std::uint32_t>> sorted(sig);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::uint32_t> next(n);
    for (std::uint32_t x = 0; x < n; ++x)
      next[x] = static_cast<std::uint32_t>(
          std::lower_bound(sorted.begin(), sorted.end(), sig[x]) - sorted.begin());
    if (next == part) break;
    part = std::move(next);
  }
  // Renumber classes by least representative, in element order.
  std::vector<std::uint32_t> rename(n, UINT32_MAX);
  std::vector<std::uint32_t> rep;
  out.class_of.resize(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    if (rename[part[x]] == UINT32_MAX) {
      rename[part[x]] = static_cast<std::uint32_t>(rep.size());
      rep.push_back(x);
    }
    out.class_of[x] = rename[part[x]];
  }
  const std::size_t k = rep.size();
  std::vector<std::uint32_t> table(k * k);
  for (std::uint32_t a = 0; a < k; ++a)
    for (std::uint32_t b = 0; b < k; ++b)
      table[a * k + b] = out.class_of[m.mul(rep[a], rep[b])];
  std::optional<std::uint32_t> unit;
  if (m.unit()) unit = out.class_of[*m.unit()];
  out.quotient = FiniteMonoid(k, std::move(table), unit);
  out.class_value.reserve(k);
  for (std::uint32_t c = 0; c < k; ++c) out.class_value.push_back(f[rep[c]]);
  return out;
}

/// True iff class_of is a monoid congruence for m (products of equivalent
/// elements stay equivalent).
inline bool is_congruence(const FiniteMonoid& m, const std::vector<std::uint32_t>& class_of) {
  const std::size_t n = m.size();
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t a2 = 0; a2 < n; ++a2)
        for (std::uint32_t b2 = 0; b2 < n; ++b2)
          if (class_of[a] == class_of[a2] && class_of[b] == class_of[b2] &&
              class_of[m.mul(a, b)] != class_of[m.mul(a2, b2)])
            return false;
  return true;
}

}  // namespace hylo
