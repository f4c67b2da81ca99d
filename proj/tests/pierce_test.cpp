#include <gtest/gtest.h>

#include <set>

#include "spectra/pierce.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace spectra;

namespace {

std::vector<Element> members(const Ideal& i) { return i.members().members(); }

std::vector<FiniteRing> corpus() {
  std::vector<FiniteRing> out;
  for (std::uint32_t n = 2; n <= 60; ++n) out.push_back(make_zmod(n));
  out.push_back(make_product({make_zmod(2), make_zmod(2)}));
  out.push_back(make_product({make_zmod(4), make_zmod(9)}));
  out.push_back(make_product({make_zmod(2), make_zmod(2), make_zmod(2)}));
  out.push_back(make_product({make_zmod(6), make_zmod(10)}));
  out.push_back(make_product({make_zmod(4), make_poly_quotient(2, {0, 1, 1})}));
  for (auto& r : gen::poly_quotient_corpus(27)) out.push_back(r);
  return out;
}

// Regular ideals found by generating from every subset of idempotents.
std::vector<std::vector<Element>> regular_ideals_oracle(const FiniteRing& r) {
  auto idem = oracle::idempotents(r);
  std::set<std::vector<Element>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << idem.size()); ++mask) {
    std::vector<Element> gens;
    for (std::size_t i = 0; i < idem.size(); ++i)
      if ((mask >> i) & 1u) gens.push_back(idem[i]);
    auto m = oracle::ideal_closure(r, gens);
    out.insert({m.begin(), m.end()});
  }
  return {out.begin(), out.end()};
}

}  // namespace

TEST(IdempotentAlgebra, Examples) {
  auto six = idempotent_algebra(make_zmod(6));
  EXPECT_EQ(six.join(3, 4), 1u);
  EXPECT_EQ(six.meet(3, 4), 0u);
  EXPECT_EQ(six.complement(0), 1u);
  EXPECT_EQ(six.atoms(), (std::vector<Element>{3, 4}));
  auto thirty = idempotent_algebra(make_zmod(30));
  EXPECT_EQ(thirty.complement(16), 15u);
  EXPECT_EQ(thirty.meet(15, 16), 0u);
  EXPECT_EQ(thirty.join(15, 16), 1u);
  EXPECT_EQ(thirty.atoms(), (std::vector<Element>{6, 10, 15}));
}

TEST(IdempotentAlgebra, AtomsCountConnectedComponents) {
  for (const auto& r : corpus()) {
    auto alg = idempotent_algebra(r);
    EXPECT_EQ(alg.elements().size(), std::size_t{1} << alg.atoms().size());
    EXPECT_EQ(alg.atoms().size(), connected_components(spec_poset(r)).size());
  }
}

TEST(RegularIdeal, Examples) {
  auto r30 = make_zmod(30);
  auto i = regular_ideal_generated(r30, {6, 10});
  EXPECT_TRUE(i == ideal_generated(r30, {16}));
  EXPECT_TRUE(i == ideal_generated(r30, {2}));
  EXPECT_EQ(i.size(), 15u);
  EXPECT_TRUE(regular_ideal_generated(r30, {0}).is_zero());
  auto r6 = make_zmod(6);
  EXPECT_FALSE(regular_ideal_generated(r6, {3, 4}).is_proper());
  try {
    regular_ideal_generated(r6, {2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotIdempotent);
  }
}

TEST(RegularIdeal, PrincipalByJoin) {
  for (const auto& r : corpus()) {
    auto idem = oracle::idempotents(r);
    for (Element e : idem)
      for (Element f : idem) EXPECT_NO_THROW(regular_ideal_generated(r, {e, f}));
  }
}

TEST(MaxRegular, Examples) {
  auto r6 = make_zmod(6);
  EXPECT_TRUE(is_max_regular(r6, ideal_generated(r6, {3})));
  EXPECT_FALSE(is_max_regular(r6, zero_ideal(r6)));
  auto r4 = make_zmod(4);
  EXPECT_TRUE(is_max_regular(r4, zero_ideal(r4)));
  try {
    is_max_regular(r6, unit_ideal(r6));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotProper);
  }
  try {
    is_max_regular(r4, ideal_generated(r4, {2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotRegular);
  }
}

TEST(MaxRegular, Listing) {
  auto six = max_regular_ideals(make_zmod(6));
  ASSERT_EQ(six.size(), 2u);
  EXPECT_EQ(members(six[0].ideal), (std::vector<Element>{0, 2, 4}));
  EXPECT_EQ(members(six[1].ideal), (std::vector<Element>{0, 3}));
  EXPECT_EQ(six[0].generating_idempotents, (std::vector<Element>{4}));

  auto four = max_regular_ideals(make_zmod(4));
  ASSERT_EQ(four.size(), 1u);
  EXPECT_TRUE(four[0].ideal.is_zero());

  auto r30 = make_zmod(30);
  auto thirty = max_regular_ideals(r30);
  ASSERT_EQ(thirty.size(), 3u);
  std::set<std::vector<Element>> got, expected;
  for (const auto& j : thirty) got.insert(members(j.ideal));
  for (Element g : {16u, 21u, 25u}) expected.insert(members(ideal_generated(r30, {g})));
  EXPECT_EQ(got, expected);
}

TEST(MaxRegular, AtomsMatchEnumerationAndOracle) {
  for (const auto& r : corpus()) {
    auto atoms = max_regular_ideals(r);
    auto enumerated = max_regular_ideals_by_enumeration(r);
    ASSERT_EQ(atoms.size(), enumerated.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) EXPECT_TRUE(atoms[i].ideal == enumerated[i]);

    // Independent: maximal elements of the regular ideals built from idempotent subsets.
    auto regular = regular_ideals_oracle(r);
    std::set<std::vector<Element>> maximal;
    for (const auto& j : regular) {
      if (std::find(j.begin(), j.end(), r.one()) != j.end()) continue;
      bool is_max = true;
      for (const auto& k : regular)
        if (k != j && std::find(k.begin(), k.end(), r.one()) == k.end() && std::includes(k.begin(), k.end(), j.begin(), j.end()))
          is_max = false;
      if (is_max) maximal.insert(j);
    }
    std::set<std::vector<Element>> got;
    for (const auto& j : atoms) got.insert(members(j.ideal));
    EXPECT_EQ(got, maximal);
  }
}

TEST(MaxRegular, QuotientTestAgreesWithMaximality) {
  for (const auto& r : corpus()) {
    auto maximal = max_regular_ideals_by_enumeration(r);
    for (const auto& j : ideal_lattice(r)) {
      if (!j.is_proper() || !is_regular(j)) continue;
      bool expected = std::find(maximal.begin(), maximal.end(), j) != maximal.end();
      EXPECT_EQ(is_max_regular(r, j), expected);
      if (expected) {
        // Every strictly larger regular ideal is the whole ring.
        for (const auto& k : ideal_lattice(r))
          if (!(k == j) && j.members().is_subset_of(k.members()) && is_regular(k)) {
            EXPECT_FALSE(k.is_proper());
          }
      }
    }
  }
}

TEST(PierceSpectrum, Examples) {
  auto r30 = make_zmod(30);
  auto sp = pierce_spectrum(r30);
  ASSERT_EQ(sp.points.size(), 3u);
  PointSet u16 = sp.basic_open(16);
  EXPECT_EQ(u16.size(), 2u);
  for (auto i : u16.members()) EXPECT_FALSE(sp.points[i].ideal.contains(16));

  auto sp4 = pierce_spectrum(make_zmod(4));
  EXPECT_EQ(sp4.points.size(), 1u);
  EXPECT_EQ(sp4.basis.size(), 2u);
  EXPECT_TRUE(sp4.basic_open(0).empty());
  EXPECT_EQ(sp4.basic_open(1), sp4.all());

  auto sp6 = pierce_spectrum(make_zmod(6));
  EXPECT_EQ(sp6.points.size(), 2u);
  EXPECT_EQ(sp6.basic_open(3), PointSet::of({0}));  // 3 is not in (2)
}

TEST(PierceSpectrum, BasisIdentities) {
  for (const auto& r : corpus()) {
    auto sp = pierce_spectrum(r);
    auto alg = idempotent_algebra(r);
    for (Element e : alg.elements())
      for (Element f : alg.elements()) {
        EXPECT_EQ(sp.basic_open(alg.join(e, f)), sp.basic_open(e) | sp.basic_open(f));
        EXPECT_EQ(sp.basic_open(r.mul(e, f)), sp.basic_open(e) & sp.basic_open(f));
      }
  }
}

TEST(Psi, Examples) {
  auto r6 = make_zmod(6);
  auto primes6 = enumerate_primes(r6);
  EXPECT_EQ(members(psi(r6, primes6[0])), (std::vector<Element>{0, 2, 4}));
  auto r4 = make_zmod(4);
  EXPECT_TRUE(psi(r4, enumerate_primes(r4)[0]).is_zero());
  auto r30 = make_zmod(30);
  for (const auto& p : enumerate_primes(r30))
    if (p.ideal.contains(3) && !p.ideal.contains(2)) {
      EXPECT_EQ(idempotents_in(p.ideal), (std::vector<Element>{0, 6, 15, 21}));
      EXPECT_TRUE(psi(r30, p) == ideal_generated(r30, {21}));
    }
}

TEST(Psi, SurjectiveWithPreimageIdentity) {
  for (const auto& r : corpus()) {
    auto spec = ring_spectrum(r);
    auto sp = pierce_spectrum(r);
    std::set<std::size_t> hit;
    std::vector<std::size_t> image;
    for (const auto& p : spec.primes) {
      image.push_back(psi_index(sp, r, p));
      hit.insert(image.back());
    }
    EXPECT_EQ(hit.size(), sp.points.size());
    for (Element e : idempotents(r)) {
      PointSet pre;
      for (std::size_t p = 0; p < image.size(); ++p)
        if (sp.basic_open(e).contains(image[p])) pre.insert(p);
      EXPECT_EQ(pre, spec.nonvanishing_set(e));
      EXPECT_EQ(pre, spec.vanishing_set(ideal_generated(r, {r.sub(r.one(), e)})));
    }
  }
}

TEST(Components, Examples) {
  EXPECT_EQ(components_via_pierce(make_zmod(6)), (std::vector<PointSet>{PointSet::of({0}), PointSet::of({1})}));
  EXPECT_EQ(components_via_pierce(make_zmod(4)), (std::vector<PointSet>{PointSet::of({0})}));
  EXPECT_EQ(components_via_pierce(make_zmod(30)).size(), 3u);
}

TEST(Components, ThreeWayAgreement) {
  for (const auto& r : corpus()) {
    auto spec = ring_spectrum(r);
    auto sp = pierce_spectrum(r);
    auto conn = connected_components(spec.poset);
    EXPECT_EQ(components_via_pierce(spec, sp), conn);
    EXPECT_EQ(psi_fibers(r, spec, sp), conn);
  }
}

TEST(Clopen, Examples) {
  auto r6 = make_zmod(6);
  auto spec = ring_spectrum(r6);
  EXPECT_EQ(clopen_from_idempotent(r6, spec, 0), spec.poset.points());
  EXPECT_TRUE(clopen_from_idempotent(r6, spec, 1).empty());
  EXPECT_EQ(clopen_from_idempotent(r6, spec, 3), PointSet::of({1}));
  EXPECT_EQ(idempotents(r6).size(), clopen_sets(spec.poset).size());
  EXPECT_THROW(clopen_from_idempotent(r6, spec, 2), Error);
}

TEST(Clopen, BijectionAndConnectedness) {
  for (const auto& r : corpus()) {
    auto spec = ring_spectrum(r);
    auto idem = idempotents(r);
    std::set<std::uint64_t> images;
    for (Element e : idem) images.insert(clopen_from_idempotent(r, spec, e).bits());
    std::set<std::uint64_t> clopens;
    for (auto s : clopen_sets(spec.poset)) clopens.insert(s.bits());
    EXPECT_EQ(images.size(), idem.size());
    EXPECT_EQ(images, clopens);
    EXPECT_EQ(connected_components(spec.poset).size() == 1, idem == (std::vector<Element>{0, 1}));
  }
}
