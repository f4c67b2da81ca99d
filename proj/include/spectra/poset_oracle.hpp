#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spectra/error.hpp"
#include "spectra/poset.hpp"

// Exhaustive verification of the poset topology layer.
//
// The families checked here are produced by generating each topology from a
// subbasis over the raw order relation (finite unions, then arbitrary
// intersections), not from the up-set/down-set predicates in poset.hpp:
//
//   Zariski: subbasis = point closures {q : p <= q}
//   flat:    subbasis = the Zariski-open sets (coarsest topology making
//            every Zariski-open set closed)
//   patch:   subbasis = Zariski-closed and Zariski-open sets

namespace spectra {

inline constexpr std::size_t kMaxOraclePoints = 12;
inline constexpr std::size_t kHardMaxOraclePoints = 16;

struct OracleCheck {
  std::string name;
  bool passed = true;
  std::optional<PointSet> counterexample;
  std::string detail;
};

struct OracleReport {
  std::vector<OracleCheck> checks;
  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

namespace oracle_detail {

using Family = std::vector<char>;  // indexed by subset bits

inline Family generate_closed_family(std::size_t n, const std::vector<std::uint64_t>& subbasis) {
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  const std::size_t count = std::size_t{1} << n;
  // Basic closed sets: finite unions of subbasis members (empty union = empty set).
  Family basic(count, 0);
  std::vector<std::uint64_t> basic_list{0};
  basic[0] = 1;
  for (std::size_t i = 0; i < basic_list.size(); ++i)
    for (auto g : subbasis) {
      std::uint64_t u = basic_list[i] | g;
      if (!basic[u]) {
        basic[u] = 1;
        basic_list.push_back(u);
      }
    }
  // Closed sets: arbitrary intersections of basic sets (empty intersection = X).
  Family closed(count, 0);
  std::vector<std::uint64_t> closed_list{full};
  closed[full] = 1;
  for (std::size_t i = 0; i < closed_list.size(); ++i)
    for (auto b : basic_list) {
      std::uint64_t v = closed_list[i] & b;
      if (!closed[v]) {
        closed[v] = 1;
        closed_list.push_back(v);
      }
    }
  return closed;
}

inline bool leq_raw(const SpectralPoset& x, std::size_t a, std::size_t b) { return x.leq(a, b); }

// Brute predicates straight from the relation.
inline bool stable_under_specialization(const SpectralPoset& x, std::uint64_t s) {
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = 0; b < x.size(); ++b)
      if (leq_raw(x, a, b) && ((s >> a) & 1u) && !((s >> b) & 1u)) return false;
  return true;
}
inline bool stable_under_generalization(const SpectralPoset& x, std::uint64_t s) {
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = 0; b < x.size(); ++b)
      if (leq_raw(x, a, b) && ((s >> b) & 1u) && !((s >> a) & 1u)) return false;
  return true;
}

struct Families {
  Family zariski, flat, patch;
};

inline Families generate_families(const SpectralPoset& x) {
  const std::size_t n = x.size();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> point_closures;
  for (std::size_t p = 0; p < n; ++p) {
    std::uint64_t s = 0;
    for (std::size_t q = 0; q < n; ++q)
      if (leq_raw(x, p, q)) s |= std::uint64_t{1} << q;
    point_closures.push_back(s);
  }
  Families f;
  f.zariski = generate_closed_family(n, point_closures);
  std::vector<std::uint64_t> zariski_opens;
  for (std::uint64_t s = 0; s <= full; ++s)
    if (f.zariski[s]) zariski_opens.push_back(full & ~s);
  f.flat = generate_closed_family(n, zariski_opens);
  std::vector<std::uint64_t> patch_sub = zariski_opens;
  for (std::uint64_t s = 0; s <= full; ++s)
    if (f.zariski[s]) patch_sub.push_back(s);
  f.patch = generate_closed_family(n, patch_sub);
  return f;
}

inline bool is_topology(const Family& fam, std::size_t n, std::optional<PointSet>& witness) {
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  if (!fam[0] || !fam[full]) {
    witness = PointSet(fam[0] ? full : 0);
    return false;
  }
  std::vector<std::uint64_t> members;
  for (std::uint64_t s = 0; s <= full; ++s)
    if (fam[s]) members.push_back(s);
  for (auto a : members)
    for (auto b : members)
      if (!fam[a | b] || !fam[a & b]) {
        witness = PointSet(fam[a | b] ? (a & b) : (a | b));
        return false;
      }
  return true;
}

// cl[s] = intersection of all closed supersets of s. A non-closed s has
// closed supersets exactly those of s + {i} for the points i outside s.
inline std::vector<std::uint64_t> topological_closures(const Family& fam, std::size_t n) {
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> cl(full + 1, full);
  for (std::uint64_t s = full + 1; s-- > 0;) {
    if (fam[s]) {
      cl[s] = s;
      continue;
    }
    std::uint64_t acc = full;
    for (std::size_t i = 0; i < n; ++i)
      if (!((s >> i) & 1u)) acc &= cl[s | (std::uint64_t{1} << i)];
    cl[s] = acc;
  }
  return cl;
}

}  // namespace oracle_detail

/// Runs every check on all 2^size subsets of `x`.
inline OracleReport brute_force_oracle(const SpectralPoset& x, std::size_t max_points = kMaxOraclePoints) {
  using namespace oracle_detail;
  if (max_points > kHardMaxOraclePoints) max_points = kHardMaxOraclePoints;
  if (x.size() > max_points)
    fail(ErrorKind::SizeBound, "exhaustive oracle limited to " + std::to_string(max_points) + " points");
  const std::size_t n = x.size();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  OracleReport report;
  auto check = [&](std::string name) -> OracleCheck& {
    report.checks.push_back({std::move(name), true, std::nullopt, {}});
    return report.checks.back();
  };
  auto reject = [](OracleCheck& c, std::uint64_t subset, std::string detail) {
    if (!c.passed) return;
    c.passed = false;
    c.counterexample = PointSet(subset);
    c.detail = std::move(detail);
  };

  const Families fam = generate_families(x);

  {
    auto& c = check("flat_closed_are_down_sets");
    for (std::uint64_t s = 0; s <= full; ++s) {
      bool expected = stable_under_generalization(x, s);
      if (static_cast<bool>(fam.flat[s]) != expected) reject(c, s, "generated flat family differs from down-sets");
    }
    std::optional<PointSet> w;
    if (c.passed && !is_topology(fam.flat, n, w)) reject(c, w->bits(), "flat family violates topology axioms");
  }
  {
    auto& c = check("zariski_closed_are_up_sets");
    for (std::uint64_t s = 0; s <= full; ++s) {
      bool expected = stable_under_specialization(x, s);
      if (static_cast<bool>(fam.zariski[s]) != expected) reject(c, s, "generated Zariski family differs from up-sets");
    }
    std::optional<PointSet> w;
    if (c.passed && !is_topology(fam.zariski, n, w)) reject(c, w->bits(), "Zariski family violates topology axioms");
  }
  {
    auto& c = check("patch_is_discrete");
    for (std::uint64_t s = 0; s <= full; ++s)
      if (!fam.patch[s]) reject(c, s, "subset not patch-closed");
  }
  {
    auto& c = check("is_closed_agrees");
    for (std::uint64_t s = 0; s <= full; ++s) {
      PointSet e(s);
      if (is_closed(x, View::Flat, e) != static_cast<bool>(fam.flat[s])) reject(c, s, "flat predicate disagrees");
      if (is_closed(x, View::Zariski, e) != static_cast<bool>(fam.zariski[s])) reject(c, s, "Zariski predicate disagrees");
      if (is_closed(x, View::Patch, e) != static_cast<bool>(fam.patch[s])) reject(c, s, "patch predicate disagrees");
    }
  }
  {
    auto& c = check("flat_closure_is_union_of_point_closures");
    const auto cl = topological_closures(fam.flat, n);
    for (std::uint64_t s = 0; s <= full; ++s) {
      PointSet e(s), unioned;
      for (auto p : e.members()) unioned = unioned | flat_closure_point(x, p);
      std::uint64_t topo = cl[s];
      if (unioned.bits() != topo || closure(x, View::Flat, e).bits() != topo) reject(c, s, "flat closure mismatch");
    }
  }
  {
    auto& c = check("zariski_closure_is_union_of_point_closures");
    const auto cl = topological_closures(fam.zariski, n);
    for (std::uint64_t s = 0; s <= full; ++s) {
      PointSet e(s), unioned;
      for (auto p : e.members()) {
        std::uint64_t v = 0;  // V(p) from the relation
        for (std::size_t q = 0; q < n; ++q)
          if (leq_raw(x, p, q)) v |= std::uint64_t{1} << q;
        unioned = unioned | PointSet(v);
      }
      std::uint64_t topo = cl[s];
      if (unioned.bits() != topo || closure(x, View::Zariski, e).bits() != topo) reject(c, s, "Zariski closure mismatch");
    }
  }
  {
    auto& c = check("clopens_agree");
    std::vector<PointSet> flat_clopen, zariski_clopen;
    for (std::uint64_t s = 0; s <= full; ++s) {
      bool f = fam.flat[s] && fam.flat[full & ~s];
      bool z = fam.zariski[s] && fam.zariski[full & ~s];
      if (f != z) reject(c, s, "flat-clopen and Zariski-clopen differ");
      if (f) flat_clopen.push_back(PointSet(s));
    }
    if (c.passed && n <= 20) {
      auto listed = clopen_sets(x);
      if (listed != flat_clopen) {
        for (auto s : flat_clopen)
          if (std::find(listed.begin(), listed.end(), s) == listed.end()) reject(c, s.bits(), "clopen missing from listing");
        for (auto s : listed)
          if (std::find(flat_clopen.begin(), flat_clopen.end(), s) == flat_clopen.end())
            reject(c, s.bits(), "listed set is not clopen");
      }
    }
  }
  {
    auto& c = check("irreducible_closed_sets_biject_with_points");
    for (View view : {View::Flat, View::Zariski}) {
      const Family& f = view == View::Flat ? fam.flat : fam.zariski;
      std::vector<PointSet> brute;
      for (std::uint64_t s = 1; s <= full; ++s) {
        if (!f[s]) continue;
        // Reducible iff the proper closed subsets already cover s.
        std::uint64_t covered = 0;
        for (std::uint64_t a = (s - 1) & s; a; a = (a - 1) & s)
          if (f[a]) covered |= a;
        bool reducible = covered == s;
        if (!reducible) brute.push_back(PointSet(s));
      }
      auto listed = irreducible_closed_sets(x, view);
      if (listed != brute) reject(c, brute.empty() ? 0 : brute.front().bits(), "irreducible closed sets mismatch");
      for (std::size_t p = 0; p < n; ++p) {
        PointSet cl = closure(x, view, PointSet::of({p}));
        auto g = generic_point(x, view, cl);
        if (!g || *g != p) reject(c, cl.bits(), "generic point of a point closure is not that point");
      }
    }
  }
  {
    auto& c = check("hochster_dual_swaps_closed_sets");
    SpectralPoset d = hochster_dual(x);
    if (!(hochster_dual(d) == x)) reject(c, 0, "dual is not an involution");
    Families dual_fam = generate_families(d);
    for (std::uint64_t s = 0; s <= full; ++s) {
      if (fam.flat[s] != dual_fam.zariski[s]) reject(c, s, "flat(X) differs from Zariski(dual X)");
      if (fam.zariski[s] != dual_fam.flat[s]) reject(c, s, "Zariski(X) differs from flat(dual X)");
    }
  }
  return report;
}

}  // namespace spectra
