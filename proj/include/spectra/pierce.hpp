#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "spectra/error.hpp"
#include "spectra/finite_ring.hpp"
#include "spectra/ideal.hpp"
#include "spectra/poset.hpp"
#include "spectra/spectrum.hpp"

namespace spectra {

/// Boolean algebra of idempotents.
///
///   meet(e, f)    = e f
///   join(e, f)    = e + f - e f
///   complement(e) = 1 - e
///
/// Some texts write the join as "e ^ f"; the names here follow the usual
/// Boolean-algebra convention, so U_{join(e,f)} = U_e u U_f and
/// U_{meet(e,f)} = U_e n U_f.
class IdempotentAlgebra {
 public:
  explicit IdempotentAlgebra(FiniteRing ring) : ring_(std::move(ring)), elements_(idempotents(ring_)) { verify(); }

  const FiniteRing& ring() const { return ring_; }
  const std::vector<Element>& elements() const { return elements_; }
  bool contains(Element e) const { return std::binary_search(elements_.begin(), elements_.end(), e); }

  Element meet(Element e, Element f) const { return ring_.mul(e, f); }
  Element join(Element e, Element f) const { return ring_.sub(ring_.add(e, f), ring_.mul(e, f)); }
  Element complement(Element e) const { return ring_.sub(ring_.one(), e); }
  /// e <= f iff e f = e.
  bool below(Element e, Element f) const { return ring_.mul(e, f) == e; }

  /// Minimal nonzero idempotents, sorted.
  std::vector<Element> atoms() const {
    std::vector<Element> out;
    for (Element e : elements_) {
      if (e == ring_.zero()) continue;
      bool minimal = true;
      for (Element f : elements_)
        if (f != ring_.zero() && f != e && below(f, e)) {
          minimal = false;
          break;
        }
      if (minimal) out.push_back(e);
    }
    return out;
  }

 private:
  // An axiom failure here means the ring arithmetic is broken.
  void verify() const {
    auto require = [](bool ok, const char* what) {
      if (!ok) throw std::logic_error(std::string("idempotent algebra axiom failed: ") + what);
    };
    const Element zero = ring_.zero(), one = ring_.one();
    for (Element e : elements_) {
      require(contains(complement(e)), "complement closure");
      require(join(e, complement(e)) == one, "e v (1-e) = 1");
      require(meet(e, complement(e)) == zero, "e ^ (1-e) = 0");
      for (Element f : elements_) {
        require(contains(meet(e, f)) && contains(join(e, f)), "closure");
        require(join(e, meet(e, f)) == e && meet(e, join(e, f)) == e, "absorption");
      }
    }
    if (elements_.size() > 64) return;  // triples get expensive
    for (Element e : elements_)
      for (Element f : elements_)
        for (Element g : elements_) {
          require(meet(e, join(f, g)) == join(meet(e, f), meet(e, g)), "meet distributes");
          require(join(e, meet(f, g)) == meet(join(e, f), join(e, g)), "join distributes");
          require(join(join(e, f), g) == join(e, join(f, g)), "join associative");
        }
  }

  FiniteRing ring_;
  std::vector<Element> elements_;
};

inline IdempotentAlgebra idempotent_algebra(const FiniteRing& ring) { return IdempotentAlgebra(ring); }

/// Ideal generated by idempotents. A finitely generated regular ideal is
/// principal, generated by the join of its generators; that is checked.
inline Ideal regular_ideal_generated(const FiniteRing& ring, const std::vector<Element>& generators) {
  for (Element e : generators)
    if (!is_idempotent(ring, e)) fail(ErrorKind::NotIdempotent, std::to_string(e) + " is not idempotent");
  Ideal ideal = ideal_generated(ring, generators);
  Element j = ring.zero();
  for (Element e : generators) j = ring.sub(ring.add(j, e), ring.mul(j, e));
  if (!(ideal_generated(ring, {j}) == ideal)) throw std::logic_error("regular ideal is not generated by the join of its generators");
  return ideal;
}

/// Idempotent elements lying in the ideal.
inline std::vector<Element> idempotents_in(const Ideal& ideal) {
  std::vector<Element> out;
  ideal.members().for_each([&](Element x) {
    if (is_idempotent(ideal.ring(), x)) out.push_back(x);
  });
  return out;
}

inline bool is_regular(const Ideal& ideal) {
  return ideal_generated(ideal.ring(), idempotents_in(ideal)) == ideal;
}

/// Number of idempotents of R/J, computed on the quotient ring.
inline std::size_t quotient_idempotent_count(const FiniteRing& ring, const Ideal& ideal) {
  return idempotents(quotient_ring(ring, ideal).ring).size();
}

/// J (regular, proper) is max-regular iff R/J has only 0 and 1 as idempotents.
inline bool is_max_regular(const FiniteRing& ring, const Ideal& ideal) {
  detail::require_same_ring(ring, ideal.ring());
  if (!ideal.is_proper()) fail(ErrorKind::NotProper, "ideal is the whole ring");
  if (!is_regular(ideal)) fail(ErrorKind::NotRegular, "ideal is not generated by idempotents");
  return quotient_idempotent_count(ring, ideal) == 2;
}

struct MaxRegularIdeal {
  Ideal ideal;
  std::vector<Element> generating_idempotents;
};

/// J_a = (1 - a) for each atom a of the idempotent algebra, sorted by members.
inline std::vector<MaxRegularIdeal> max_regular_ideals(const FiniteRing& ring) {
  IdempotentAlgebra algebra(ring);
  std::vector<MaxRegularIdeal> out;
  for (Element a : algebra.atoms()) {
    Element c = algebra.complement(a);
    out.push_back({ideal_generated(ring, {c}), {c}});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return ideal_less(x.ideal, y.ideal); });
  return out;
}

/// Max-regular ideals found by brute force: every ideal of the lattice that
/// is regular and proper, kept when no other such ideal strictly contains it.
inline std::vector<Ideal> max_regular_ideals_by_enumeration(const FiniteRing& ring) {
  std::vector<Ideal> regular;
  for (const auto& ideal : ideal_lattice(ring))
    if (ideal.is_proper() && is_regular(ideal)) regular.push_back(ideal);
  std::vector<Ideal> out;
  for (const auto& j : regular) {
    bool maximal = true;
    for (const auto& k : regular)
      if (!(k == j) && j.members().is_subset_of(k.members())) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(j);
  }
  std::sort(out.begin(), out.end(), ideal_less);
  return out;
}

/// The Pierce spectrum with its basis U_e = {J : e not in J}. Sp(R) is
/// finite and Hausdorff here, so the basis carries the whole topology.
struct PierceSpace {
  std::vector<MaxRegularIdeal> points;
  std::vector<Element> atoms;
  std::map<Element, PointSet> basis;

  PointSet all() const { return PointSet::all(points.size()); }
  PointSet basic_open(Element e) const { return basis.at(e); }
};

inline PierceSpace pierce_spectrum(const FiniteRing& ring) {
  IdempotentAlgebra algebra(ring);
  PierceSpace sp;
  sp.points = max_regular_ideals(ring);
  sp.atoms = algebra.atoms();
  if (sp.points.size() > SpectralPoset::kMaxPoints)
    fail(ErrorKind::SizeBound, "pierce spectrum has more than " + std::to_string(SpectralPoset::kMaxPoints) + " points");
  for (Element e : algebra.elements()) {
    PointSet u;
    for (std::size_t i = 0; i < sp.points.size(); ++i)
      if (!sp.points[i].ideal.contains(e)) u.insert(i);
    sp.basis[e] = u;
  }
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("pierce basis identity failed: ") + what);
  };
  require(sp.basis.at(ring.one()) == sp.all(), "U_1 covers");
  require(sp.basis.at(ring.zero()).empty(), "U_0 empty");
  for (Element e : algebra.elements()) {
    require(sp.basis.at(algebra.complement(e)) == sp.all() - sp.basis.at(e), "U_{1-e} is the complement");
    for (Element f : algebra.elements()) {
      require(sp.basis.at(algebra.meet(e, f)) == (sp.basis.at(e) & sp.basis.at(f)), "U_ef = U_e n U_f");
      require(sp.basis.at(algebra.join(e, f)) == (sp.basis.at(e) | sp.basis.at(f)), "U_{e v f} = U_e u U_f");
    }
  }
  for (std::size_t i = 0; i < sp.points.size(); ++i)
    for (std::size_t j = i + 1; j < sp.points.size(); ++j)
      require(!(sp.points[i].ideal == sp.points[j].ideal), "points distinct");
  return sp;
}

/// psi(p) = the ideal generated by the idempotents inside p.
inline Ideal psi(const FiniteRing& ring, const PrimeIdeal& prime) {
  detail::require_same_ring(ring, prime.ideal.ring());
  return ideal_generated(ring, idempotents_in(prime.ideal));
}

/// Index of psi(p) among the Pierce points.
inline std::size_t psi_index(const PierceSpace& sp, const FiniteRing& ring, const PrimeIdeal& prime) {
  Ideal j = psi(ring, prime);
  for (std::size_t i = 0; i < sp.points.size(); ++i)
    if (sp.points[i].ideal == j) return i;
  throw std::logic_error("psi(p) is not a max-regular ideal");
}

/// Blocks V(J), one per max-regular J, ordered by least member.
inline std::vector<PointSet> components_via_pierce(const RingSpectrum& spectrum, const PierceSpace& sp) {
  std::vector<PointSet> out;
  for (const auto& j : sp.points) out.push_back(spectrum.vanishing_set(j.ideal));
  std::sort(out.begin(), out.end(), by_least_member);
  return out;
}

inline std::vector<PointSet> components_via_pierce(const FiniteRing& ring) {
  return components_via_pierce(ring_spectrum(ring), pierce_spectrum(ring));
}

/// The fibers of psi over the Pierce points, ordered by least member.
inline std::vector<PointSet> psi_fibers(const FiniteRing& ring, const RingSpectrum& spectrum, const PierceSpace& sp) {
  std::vector<PointSet> fibers(sp.points.size());
  for (std::size_t p = 0; p < spectrum.primes.size(); ++p) fibers[psi_index(sp, ring, spectrum.primes[p])].insert(p);
  std::sort(fibers.begin(), fibers.end(), by_least_member);
  return fibers;
}

/// V(e): the primes containing e; always clopen.
inline PointSet clopen_from_idempotent(const FiniteRing& ring, const RingSpectrum& spectrum, Element e) {
  if (!is_idempotent(ring, e)) fail(ErrorKind::NotIdempotent, std::to_string(e) + " is not idempotent");
  return spectrum.vanishing_set(ideal_generated(ring, {e}));
}

}  // namespace spectra
