#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "spectra/element_set.hpp"
#include "spectra/error.hpp"
#include "spectra/finite_ring.hpp"

namespace spectra {

/// Bound on ring size for ideal-lattice and prime enumeration.
inline constexpr std::uint32_t kMaxEnumerationSize = 4096;
/// Bound on ring size for the linear idempotent scan.
inline constexpr std::uint32_t kMaxIdempotentScanSize = 1000000;

class Ideal {
 public:
  const FiniteRing& ring() const { return ring_; }
  const ElementSet& members() const { return members_; }
  /// Ideal generators; the members are exactly their closure.
  const std::vector<Element>& generators() const { return generators_; }
  /// Generators of the members as an additive group.
  const std::vector<Element>& additive_basis() const { return additive_basis_; }

  bool contains(Element x) const { return members_.contains(x); }
  std::size_t size() const { return members_.count(); }
  bool is_proper() const { return !members_.contains(ring_.one()); }
  bool is_zero() const { return members_.count() == 1; }

  friend bool operator==(const Ideal& a, const Ideal& b) {
    return a.members_ == b.members_ && a.ring_.same_as(b.ring_);
  }

 private:
  Ideal(FiniteRing ring, ElementSet members, std::vector<Element> generators, std::vector<Element> additive_basis)
      : ring_(std::move(ring)),
        members_(std::move(members)),
        generators_(std::move(generators)),
        additive_basis_(std::move(additive_basis)) {}

  FiniteRing ring_;
  ElementSet members_;
  std::vector<Element> generators_;
  std::vector<Element> additive_basis_;

  friend Ideal ideal_generated(const FiniteRing& ring, const std::vector<Element>& generators);
};

struct PrimeIdeal {
  Ideal ideal;
  bool certified = false;
};

inline bool ideal_less(const Ideal& a, const Ideal& b) { return a.members() < b.members(); }

namespace detail {

inline void require_same_ring(const FiniteRing& a, const FiniteRing& b) {
  if (!a.same_as(b)) fail(ErrorKind::MixedRings, "ideals live over different rings");
}

inline void require_element(const FiniteRing& ring, Element x) {
  if (x >= ring.size())
    fail(ErrorKind::InvalidParameter, "element " + std::to_string(x) + " outside ring of size " + std::to_string(ring.size()));
}

}  // namespace detail

/// Smallest ideal containing `generators`.
///
/// Computed as the additive span of {g * u} for the ring's additive
/// generators u; the span is grown to a fixpoint.
inline Ideal ideal_generated(const FiniteRing& ring, const std::vector<Element>& generators) {
  std::vector<Element> products;
  for (Element g : generators) {
    detail::require_element(ring, g);
    for (Element u : ring.additive_generators()) {
      Element x = ring.mul(g, u);
      if (x != ring.zero()) products.push_back(x);
    }
  }
  std::vector<Element> basis;
  ElementSet members =
      detail::additive_span(ring.size(), ring.zero(), products, [&](Element a, Element b) { return ring.add(a, b); }, &basis);
  std::vector<Element> gens = generators;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return Ideal(ring, std::move(members), std::move(gens), std::move(basis));
}

inline Ideal zero_ideal(const FiniteRing& ring) { return ideal_generated(ring, {}); }
inline Ideal unit_ideal(const FiniteRing& ring) { return ideal_generated(ring, {ring.one()}); }

/// A short generating list: greedily adds the smallest element not yet covered.
inline std::vector<Element> minimal_generators(const Ideal& ideal) {
  const auto& ring = ideal.ring();
  std::vector<Element> gens;
  Ideal current = zero_ideal(ring);
  for (Element x : ideal.members().members()) {
    if (current.members() == ideal.members()) break;
    if (current.contains(x)) continue;
    gens.push_back(x);
    current = ideal_generated(ring, gens);
  }
  return gens;
}

/// Rebuilds an ideal from an arbitrary member set that is known to be an
/// ideal (e.g. an intersection).
inline Ideal ideal_from_members(const FiniteRing& ring, const ElementSet& members) {
  Ideal current = zero_ideal(ring);
  std::vector<Element> gens;
  members.for_each([&](Element x) {
    if (current.contains(x)) return;
    gens.push_back(x);
    current = ideal_generated(ring, gens);
  });
  if (!(current.members() == members)) fail(ErrorKind::InvalidIdeal, "member set is not an ideal");
  return current;
}

inline Ideal sum(const Ideal& a, const Ideal& b) {
  detail::require_same_ring(a.ring(), b.ring());
  std::vector<Element> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return ideal_generated(a.ring(), gens);
}

inline Ideal product(const Ideal& a, const Ideal& b) {
  detail::require_same_ring(a.ring(), b.ring());
  const auto& ring = a.ring();
  std::vector<Element> gens;
  for (Element x : a.generators())
    for (Element y : b.generators()) gens.push_back(ring.mul(x, y));
  return ideal_generated(ring, gens);
}

inline Ideal intersection(const Ideal& a, const Ideal& b) {
  detail::require_same_ring(a.ring(), b.ring());
  return ideal_from_members(a.ring(), a.members() & b.members());
}

/// {x : x^k in I for some 1 <= k <= |R|}.
inline Ideal radical(const Ideal& ideal) {
  const auto& ring = ideal.ring();
  ElementSet members(ring.size());
  for (Element x = 0; x < ring.size(); ++x) {
    Element power = x;
    for (std::uint32_t k = 1; k <= ring.size(); ++k) {
      if (ideal.contains(power)) {
        members.insert(x);
        break;
      }
      Element next = ring.mul(power, x);
      if (next == power) break;
      power = next;
    }
  }
  return ideal_from_members(ring, members);
}

/// Quotient ring on cosets, with the projection element -> coset index.
/// Cosets are numbered by their least member.
struct QuotientRing {
  FiniteRing ring;
  std::vector<Element> projection;
  std::vector<Element> representatives;
};

inline QuotientRing quotient_ring(const FiniteRing& ring, const Ideal& ideal) {
  detail::require_same_ring(ring, ideal.ring());
  const std::uint32_t n = ring.size();
  const std::uint32_t m = static_cast<std::uint32_t>(n / ideal.size());
  if (m > kMaxTableSize) fail(ErrorKind::SizeBound, "quotient ring larger than " + std::to_string(kMaxTableSize) + " elements");
  constexpr Element kUnset = ~Element{0};
  std::vector<Element> projection(n, kUnset);
  std::vector<Element> reps;
  auto members = ideal.members().members();
  for (Element x = 0; x < n; ++x) {
    if (projection[x] != kUnset) continue;
    Element id = static_cast<Element>(reps.size());
    reps.push_back(x);
    for (Element i : members) projection[ring.add(x, i)] = id;
  }
  std::vector<std::uint16_t> add(std::size_t{m} * m), mul(add.size());
  for (Element a = 0; a < m; ++a)
    for (Element b = 0; b < m; ++b) {
      add[std::size_t{a} * m + b] = static_cast<std::uint16_t>(projection[ring.add(reps[a], reps[b])]);
      mul[std::size_t{a} * m + b] = static_cast<std::uint16_t>(projection[ring.mul(reps[a], reps[b])]);
    }
  if (m < 2) {
    // R/R is the zero ring; keep it representable for callers that only count idempotents.
    return {make_table_unchecked(1, {0}, {0}, 0, 0), std::move(projection), std::move(reps)};
  }
  auto q = make_table_unchecked(m, std::move(add), std::move(mul), projection[ring.zero()], projection[ring.one()]);
  return {std::move(q), std::move(projection), std::move(reps)};
}

/// Exhaustive pair scan: I proper and ab in I implies a in I or b in I.
inline bool is_prime_ideal(const FiniteRing& ring, const Ideal& ideal) {
  detail::require_same_ring(ring, ideal.ring());
  if (!ideal.is_proper()) return false;
  // ab in I depends only on the cosets a + I, b + I; one representative each.
  const auto in = ideal.members().members();
  ElementSet seen = ideal.members();
  std::vector<Element> reps;
  for (Element a = 0; a < ring.size(); ++a) {
    if (seen.contains(a)) continue;
    reps.push_back(a);
    for (Element m : in) seen.insert(ring.add(a, m));
  }
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i; j < reps.size(); ++j)
      if (ideal.contains(ring.mul(reps[i], reps[j]))) return false;
  return true;
}

inline PrimeIdeal make_prime_ideal(const Ideal& ideal) {
  if (!is_prime_ideal(ideal.ring(), ideal)) fail(ErrorKind::InvalidIdeal, "ideal is not prime");
  return {ideal, true};
}

namespace detail {

// Members of a + b: extend a's members by the cosets of b's additive basis.
inline ElementSet sum_members(const FiniteRing& ring, const Ideal& a, const Ideal& b) {
  ElementSet span = a.members();
  std::vector<Element> members = span.members();
  for (Element g : b.additive_basis()) {
    if (span.contains(g)) continue;
    const std::size_t base = members.size();
    for (Element t = g; !span.contains(t); t = ring.add(t, g))
      for (std::size_t k = 0; k < base; ++k) {
        Element y = ring.add(members[k], t);
        span.insert(y);
        members.push_back(y);
      }
  }
  return span;
}

}  // namespace detail

/// All ideals, sorted. The lattice is the closure of the principal ideals
/// under sums.
inline std::vector<Ideal> ideal_lattice(const FiniteRing& ring) {
  if (ring.size() > kMaxEnumerationSize)
    fail(ErrorKind::SizeBound, "ideal enumeration limited to rings of size <= " + std::to_string(kMaxEnumerationSize));
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> index;
  std::vector<Ideal> ideals;
  auto add = [&](Ideal ideal) -> bool {
    auto [it, inserted] = index.emplace(ideal.members(), ideals.size());
    if (inserted) ideals.push_back(std::move(ideal));
    return inserted;
  };
  std::vector<std::size_t> principal;
  for (Element a = 0; a < ring.size(); ++a) {
    Ideal p = ideal_generated(ring, {a});
    auto it = index.find(p.members());
    if (it == index.end()) {
      principal.push_back(ideals.size());
      add(std::move(p));
    }
  }
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    for (std::size_t pi : principal) {
      if (ideals[pi].members().is_subset_of(ideals[i].members())) continue;
      if (ideals[i].members().is_subset_of(ideals[pi].members())) continue;
      if (index.count(detail::sum_members(ring, ideals[i], ideals[pi]))) continue;
      std::vector<Element> ideal_gens = ideals[i].generators();
      ideal_gens.insert(ideal_gens.end(), ideals[pi].generators().begin(), ideals[pi].generators().end());
      add(ideal_generated(ring, ideal_gens));
    }
  }
  std::sort(ideals.begin(), ideals.end(), ideal_less);
  return ideals;
}

/// All prime ideals, sorted by member list; generators are minimal.
inline std::vector<PrimeIdeal> enumerate_primes(const FiniteRing& ring) {
  std::vector<PrimeIdeal> primes;
  for (const auto& ideal : ideal_lattice(ring)) {
    if (is_prime_ideal(ring, ideal)) primes.push_back({ideal_generated(ring, minimal_generators(ideal)), true});
  }
  return primes;
}

inline bool is_idempotent(const FiniteRing& ring, Element e) { return e < ring.size() && ring.mul(e, e) == e; }

inline std::vector<Element> idempotents(const FiniteRing& ring) {
  if (ring.size() > kMaxIdempotentScanSize)
    fail(ErrorKind::SizeBound, "idempotent scan limited to rings of size <= " + std::to_string(kMaxIdempotentScanSize));
  std::vector<Element> out;
  for (Element e = 0; e < ring.size(); ++e)
    if (ring.mul(e, e) == e) out.push_back(e);
  return out;
}

}  // namespace spectra
