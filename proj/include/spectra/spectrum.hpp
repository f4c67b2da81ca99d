#pragma once

#include <string>
#include <variant>
#include <vector>

#include "spectra/error.hpp"
#include "spectra/finite_ring.hpp"
#include "spectra/ideal.hpp"
#include "spectra/poset.hpp"

namespace spectra {

/// "(g1,g2,...)" using the prime's minimal generators.
inline std::string ideal_label(const Ideal& ideal) {
  std::string s = "(";
  auto gens = minimal_generators(ideal);
  if (gens.empty()) gens.push_back(ideal.ring().zero());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(gens[i]);
  }
  return s + ")";
}

/// The prime spectrum of a ring: its primes, ordered by inclusion.
struct RingSpectrum {
  std::vector<PrimeIdeal> primes;
  SpectralPoset poset;

  /// Primes containing every member of `ideal`, as a point set.
  PointSet vanishing_set(const Ideal& ideal) const {
    PointSet out;
    for (std::size_t i = 0; i < primes.size(); ++i)
      if (ideal.members().is_subset_of(primes[i].ideal.members())) out.insert(i);
    return out;
  }
  /// Primes not containing f.
  PointSet nonvanishing_set(Element f) const {
    PointSet out;
    for (std::size_t i = 0; i < primes.size(); ++i)
      if (!primes[i].ideal.contains(f)) out.insert(i);
    return out;
  }
  /// Index of the prime with exactly these members.
  std::size_t index_of(const ElementSet& members) const {
    for (std::size_t i = 0; i < primes.size(); ++i)
      if (primes[i].ideal.members() == members) return i;
    fail(ErrorKind::InvalidIdeal, "not a prime of this spectrum");
  }
};

inline RingSpectrum ring_spectrum(const FiniteRing& ring) {
  RingSpectrum out;
  out.primes = enumerate_primes(ring);
  if (out.primes.size() > SpectralPoset::kMaxPoints)
    fail(ErrorKind::SizeBound, "spectrum has more than " + std::to_string(SpectralPoset::kMaxPoints) + " points");
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < out.primes.size(); ++a) {
    labels.push_back(ideal_label(out.primes[a].ideal));
    for (std::size_t b = 0; b < out.primes.size(); ++b)
      if (a != b && out.primes[a].ideal.members().is_subset_of(out.primes[b].ideal.members())) rel.emplace_back(a, b);
  }
  out.poset = make_poset(out.primes.size(), rel, std::move(labels));
  return out;
}

inline SpectralPoset spec_poset(const FiniteRing& ring) { return ring_spectrum(ring).poset; }

struct QuotientMap {
  Ideal ideal;
};
/// R -> R_e for an idempotent e; R_e is R/(1-e).
struct IdempotentLocalization {
  Element e;
};
using SpecMapKind = std::variant<QuotientMap, IdempotentLocalization>;

struct SpecMap {
  RingSpectrum source;                // Spec of the target ring R/I
  std::vector<std::size_t> point_map;  // source point -> point of Spec(R)
  PointSet image;
  bool image_zariski_closed = false;
  bool image_flat_closed = false;
  bool image_patch_closed = false;
};

/// Spec(R/I) -> Spec(R), sending each prime of R/I to its preimage.
inline SpecMap induced_spec_map(const FiniteRing& ring, const RingSpectrum& spectrum, const SpecMapKind& kind) {
  Ideal ideal = std::visit(
      [&](const auto& k) -> Ideal {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, QuotientMap>) {
          if (!k.ideal.ring().same_as(ring)) fail(ErrorKind::InvalidIdeal, "ideal is not over the given ring");
          return k.ideal;
        } else {
          if (!is_idempotent(ring, k.e)) fail(ErrorKind::NotIdempotent, std::to_string(k.e) + " is not idempotent");
          return ideal_generated(ring, {ring.sub(ring.one(), k.e)});
        }
      },
      kind);
  SpecMap out;
  if (!ideal.is_proper()) {
    out.image_zariski_closed = out.image_flat_closed = out.image_patch_closed = true;
    return out;
  }
  QuotientRing q = quotient_ring(ring, ideal);
  out.source = ring_spectrum(q.ring);
  for (const auto& prime : out.source.primes) {
    ElementSet preimage(ring.size());
    for (Element x = 0; x < ring.size(); ++x)
      if (prime.ideal.contains(q.projection[x])) preimage.insert(x);
    std::size_t idx = spectrum.index_of(preimage);
    out.point_map.push_back(idx);
    out.image.insert(idx);
  }
  out.image_zariski_closed = is_closed(spectrum.poset, View::Zariski, out.image);
  out.image_flat_closed = is_closed(spectrum.poset, View::Flat, out.image);
  out.image_patch_closed = is_closed(spectrum.poset, View::Patch, out.image);
  return out;
}

inline SpecMap induced_spec_map(const FiniteRing& ring, const SpecMapKind& kind) {
  return induced_spec_map(ring, ring_spectrum(ring), kind);
}

/// If the intersection of `family` lies in p, some member of the family lies in p.
inline bool condition_vi_finite(const FiniteRing& ring, const std::vector<PrimeIdeal>& family, const PrimeIdeal& p) {
  if (family.empty()) fail(ErrorKind::EmptyFamily, "the intersection condition needs a nonempty family");
  ElementSet meet = family.front().ideal.members();
  for (const auto& q : family) {
    detail::require_same_ring(ring, q.ideal.ring());
    meet &= q.ideal.members();
  }
  detail::require_same_ring(ring, p.ideal.ring());
  if (!meet.is_subset_of(p.ideal.members())) return true;
  for (const auto& q : family)
    if (q.ideal.members().is_subset_of(p.ideal.members())) return true;
  return false;
}

/// Checks the intersection condition over every nonempty family of at most `max_family`
/// primes and every prime p.
inline bool condition_vi_all_families(const FiniteRing& ring, const RingSpectrum& spectrum, std::size_t max_family = 4) {
  const auto& primes = spectrum.primes;
  const std::size_t n = primes.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << std::min<std::size_t>(n, 63)); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > max_family) continue;
    std::vector<PrimeIdeal> family;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1u) family.push_back(primes[i]);
    for (const auto& p : primes)
      if (!condition_vi_finite(ring, family, p)) return false;
  }
  return true;
}

}  // namespace spectra
