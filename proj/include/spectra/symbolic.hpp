#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spectra/error.hpp"
#include "spectra/finite_ring.hpp"
#include "spectra/poset.hpp"

// Exact topology on one-dimensional spectra with a single generic point:
// Spec(Z) and Spec(F_p[x]). Points are the generic point (0) and the closed
// points (maximal ideals), named by a prime integer or by a monic
// irreducible polynomial over F_p. Subsets are finite or cofinite in the
// closed points, plus a flag for the generic point.
//
// Generic <= every closed point in the specialization order, so:
//   stable under generalization: nonempty implies contains generic
//   stable under specialization: contains generic implies everything
//   patch-closed: finite without generic, or contains generic
// and flat/Zariski closed = patch-closed + the respective stability.

namespace spectra::symbolic {

enum class SpectrumKind { Integers, PolyOverFp };

/// Largest polynomial degree accepted as a closed point of Spec(F_p[x]).
inline constexpr std::uint32_t kMaxPolyDegree = 24;

class SymbolicSpectrum {
 public:
  static SymbolicSpectrum integers() { return SymbolicSpectrum(SpectrumKind::Integers, 0); }
  static SymbolicSpectrum poly_over_fp(std::uint32_t p) {
    if (!detail::is_prime_u64(p)) fail(ErrorKind::InvalidParameter, std::to_string(p) + " is not prime");
    return SymbolicSpectrum(SpectrumKind::PolyOverFp, p);
  }

  SpectrumKind kind() const { return kind_; }
  std::uint32_t characteristic() const { return p_; }

  std::string name() const { return kind_ == SpectrumKind::Integers ? "Spec(Z)" : "Spec(F_" + std::to_string(p_) + "[x])"; }

  /// Integers: prime numbers. PolyOverFp: base-p encodings sum c_i p^i of
  /// monic irreducible polynomials.
  bool is_closed_point(std::uint64_t index) const {
    if (kind_ == SpectrumKind::Integers) return detail::is_prime_u64(index);
    auto c = decode(index);
    if (c.size() < 2 || c.back() != 1 || c.size() - 1 > kMaxPolyDegree) return false;
    return irreducible(c);
  }

  /// The first `count` closed points in ascending index order.
  std::vector<std::uint64_t> enumerate(std::size_t count) const {
    std::vector<std::uint64_t> out;
    std::uint64_t start = kind_ == SpectrumKind::Integers ? 2 : p_;
    for (std::uint64_t i = start; out.size() < count; ++i)
      if (is_closed_point(i)) out.push_back(i);
    return out;
  }

  std::string render_point(std::uint64_t index) const {
    if (kind_ == SpectrumKind::Integers) return std::to_string(index);
    auto c = decode(index);
    std::string s;
    for (std::size_t k = c.size(); k-- > 0;) {
      if (c[k] == 0) continue;
      if (!s.empty()) s += "+";
      if (k == 0 || c[k] != 1) s += std::to_string(c[k]);
      if (k >= 1) s += "x";
      if (k >= 2) s += "^" + std::to_string(k);
    }
    return s.empty() ? "0" : s;
  }

  /// Accepts a decimal index, or (for F_p[x]) a polynomial such as "x^2+x+1".
  std::uint64_t parse_point(const std::string& text) const {
    std::string t;
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.empty()) fail(ErrorKind::ParseError, "empty point");
    std::uint64_t index = 0;
    if (std::all_of(t.begin(), t.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      index = std::stoull(t);
    } else if (kind_ == SpectrumKind::PolyOverFp) {
      index = encode(parse_poly(t));
    } else {
      fail(ErrorKind::ParseError, "cannot read point '" + text + "'");
    }
    if (!is_closed_point(index)) fail(ErrorKind::InvalidParameter, "'" + text + "' is not a closed point of " + name());
    return index;
  }

  friend bool operator==(const SymbolicSpectrum&, const SymbolicSpectrum&) = default;

 private:
  SymbolicSpectrum(SpectrumKind kind, std::uint32_t p) : kind_(kind), p_(p) {}

  using Poly = std::vector<std::uint64_t>;  // c0 first

  Poly decode(std::uint64_t index) const {
    Poly c;
    while (index) {
      c.push_back(index % p_);
      index /= p_;
    }
    return c;
  }
  std::uint64_t encode(const Poly& c) const {
    std::uint64_t v = 0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * p_ + c[k];
    return v;
  }

  // Remainder of a modulo a monic b.
  Poly remainder(Poly a, const Poly& b) const {
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
      std::uint64_t lead = a.back();
      std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i) a[shift + i] = (a[shift + i] + p_ - (lead * b[i]) % p_) % p_;
      while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
  }

  // Trial division by every monic polynomial of degree <= deg/2.
  bool irreducible(const Poly& f) const {
    const std::size_t deg = f.size() - 1;
    for (std::size_t d = 1; 2 * d <= deg; ++d) {
      std::uint64_t count = 1;
      for (std::size_t i = 0; i < d; ++i) count *= p_;
      for (std::uint64_t low = 0; low < count; ++low) {
        Poly g = decode(low);
        g.resize(d + 1, 0);
        g[d] = 1;
        if (remainder(f, g).empty()) return false;
      }
    }
    return true;
  }

  Poly parse_poly(const std::string& t) const {
    Poly c;
    std::size_t i = 0;
    auto read_int = [&](std::uint64_t fallback) {
      if (i >= t.size() || !std::isdigit(static_cast<unsigned char>(t[i]))) return fallback;
      std::uint64_t v = 0;
      while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) v = v * 10 + static_cast<std::uint64_t>(t[i++] - '0');
      return v;
    };
    while (i < t.size()) {
      std::size_t start = i;
      std::uint64_t coef = read_int(1);
      std::uint64_t exp = 0;
      if (i < t.size() && t[i] == 'x') {
        ++i;
        exp = 1;
        if (i < t.size() && t[i] == '^') {
          ++i;
          exp = read_int(~std::uint64_t{0});
          if (exp == ~std::uint64_t{0}) fail(ErrorKind::ParseError, "missing exponent in '" + t + "'");
        }
      } else if (i == start) {
        fail(ErrorKind::ParseError, "bad polynomial '" + t + "'");
      }
      if (exp > kMaxPolyDegree) fail(ErrorKind::ParseError, "degree too large in '" + t + "'");
      if (c.size() <= exp) c.resize(exp + 1, 0);
      c[exp] = (c[exp] + coef) % p_;
      if (i < t.size()) {
        if (t[i] != '+') fail(ErrorKind::ParseError, "bad polynomial '" + t + "'");
        ++i;
      }
    }
    while (!c.empty() && c.back() == 0) c.pop_back();
    return c;
  }

  SpectrumKind kind_;
  std::uint32_t p_;
};

class SymPoint {
 public:
  static SymPoint generic() { return SymPoint(true, 0); }
  static SymPoint closed(std::uint64_t index) { return SymPoint(false, index); }
  bool is_generic() const { return generic_; }
  std::uint64_t index() const { return index_; }
  friend bool operator==(const SymPoint&, const SymPoint&) = default;

 private:
  SymPoint(bool generic, std::uint64_t index) : generic_(generic), index_(index) {}
  bool generic_;
  std::uint64_t index_;
};

enum class Mode { Fin, Cofin };

/// A finite or cofinite set of closed points, plus possibly the generic point.
class SymSet {
 public:
  /// Explicit points are validated, sorted and deduplicated.
  SymSet(SymbolicSpectrum spectrum, Mode mode, std::vector<std::uint64_t> points, bool has_generic)
      : spectrum_(spectrum), mode_(mode), points_(std::move(points)), has_generic_(has_generic) {
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    for (auto p : points_)
      if (!spectrum_.is_closed_point(p))
        fail(ErrorKind::InvalidParameter, std::to_string(p) + " is not a closed point of " + spectrum_.name());
  }

  static SymSet empty(const SymbolicSpectrum& s) { return SymSet(s, Mode::Fin, {}, false); }
  static SymSet whole(const SymbolicSpectrum& s) { return SymSet(s, Mode::Cofin, {}, true); }
  static SymSet fin(const SymbolicSpectrum& s, std::vector<std::uint64_t> pts, bool generic = false) {
    return SymSet(s, Mode::Fin, std::move(pts), generic);
  }
  static SymSet cofin(const SymbolicSpectrum& s, std::vector<std::uint64_t> excluded, bool generic = false) {
    return SymSet(s, Mode::Cofin, std::move(excluded), generic);
  }
  static SymSet of_point(const SymbolicSpectrum& s, SymPoint p) {
    return p.is_generic() ? SymSet(s, Mode::Fin, {}, true) : SymSet(s, Mode::Fin, {p.index()}, false);
  }

  const SymbolicSpectrum& spectrum() const { return spectrum_; }
  Mode mode() const { return mode_; }
  /// Included points (Fin) or excluded points (Cofin).
  const std::vector<std::uint64_t>& points() const { return points_; }
  bool has_generic() const { return has_generic_; }

  bool is_empty() const { return mode_ == Mode::Fin && points_.empty() && !has_generic_; }
  bool is_whole() const { return mode_ == Mode::Cofin && points_.empty() && has_generic_; }
  bool is_finite() const { return mode_ == Mode::Fin; }
  bool has_closed_points() const { return mode_ == Mode::Cofin || !points_.empty(); }

  bool contains(SymPoint p) const {
    if (p.is_generic()) return has_generic_;
    bool listed = std::binary_search(points_.begin(), points_.end(), p.index());
    return mode_ == Mode::Fin ? listed : !listed;
  }

  SymSet with_generic(bool g) const { return SymSet(spectrum_, mode_, points_, g, Trusted{}); }

  friend bool operator==(const SymSet& a, const SymSet& b) {
    return a.spectrum_ == b.spectrum_ && a.mode_ == b.mode_ && a.points_ == b.points_ && a.has_generic_ == b.has_generic_;
  }

 private:
  struct Trusted {};
  SymSet(SymbolicSpectrum spectrum, Mode mode, std::vector<std::uint64_t> points, bool has_generic, Trusted)
      : spectrum_(spectrum), mode_(mode), points_(std::move(points)), has_generic_(has_generic) {}

  SymbolicSpectrum spectrum_;
  Mode mode_;
  std::vector<std::uint64_t> points_;
  bool has_generic_;

  friend SymSet complement(const SymSet&);
  friend SymSet set_union(const SymSet&, const SymSet&);
  friend SymSet set_intersection(const SymSet&, const SymSet&);
};

namespace sym_detail {
using Pts = std::vector<std::uint64_t>;
inline Pts unite(const Pts& a, const Pts& b) {
  Pts out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}
inline Pts meet(const Pts& a, const Pts& b) {
  Pts out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}
inline Pts minus(const Pts& a, const Pts& b) {
  Pts out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}
inline void require_same(const SymSet& a, const SymSet& b) {
  if (!(a.spectrum() == b.spectrum())) fail(ErrorKind::MixedSpectra, "sets belong to different spectra");
}
}  // namespace sym_detail

inline SymSet complement(const SymSet& s) {
  return SymSet(s.spectrum_, s.mode_ == Mode::Fin ? Mode::Cofin : Mode::Fin, s.points_, !s.has_generic_, SymSet::Trusted{});
}

inline SymSet set_union(const SymSet& a, const SymSet& b) {
  using namespace sym_detail;
  require_same(a, b);
  bool g = a.has_generic_ || b.has_generic_;
  if (a.mode_ == Mode::Fin && b.mode_ == Mode::Fin) return SymSet(a.spectrum_, Mode::Fin, unite(a.points_, b.points_), g, SymSet::Trusted{});
  if (a.mode_ == Mode::Cofin && b.mode_ == Mode::Cofin) return SymSet(a.spectrum_, Mode::Cofin, meet(a.points_, b.points_), g, SymSet::Trusted{});
  const SymSet& fin = a.mode_ == Mode::Fin ? a : b;
  const SymSet& cof = a.mode_ == Mode::Fin ? b : a;
  return SymSet(a.spectrum_, Mode::Cofin, minus(cof.points_, fin.points_), g, SymSet::Trusted{});
}

inline SymSet set_intersection(const SymSet& a, const SymSet& b) {
  using namespace sym_detail;
  require_same(a, b);
  bool g = a.has_generic_ && b.has_generic_;
  if (a.mode_ == Mode::Fin && b.mode_ == Mode::Fin) return SymSet(a.spectrum_, Mode::Fin, meet(a.points_, b.points_), g, SymSet::Trusted{});
  if (a.mode_ == Mode::Cofin && b.mode_ == Mode::Cofin) return SymSet(a.spectrum_, Mode::Cofin, unite(a.points_, b.points_), g, SymSet::Trusted{});
  const SymSet& fin = a.mode_ == Mode::Fin ? a : b;
  const SymSet& cof = a.mode_ == Mode::Fin ? b : a;
  return SymSet(a.spectrum_, Mode::Fin, minus(fin.points_, cof.points_), g, SymSet::Trusted{});
}

inline bool contains(const SymSet& s, SymPoint p) { return s.contains(p); }

inline bool is_subset(const SymSet& a, const SymSet& b) { return set_intersection(a, complement(b)).is_empty(); }

// Order-theoretic and patch predicates the topologies are built from.
inline bool stable_under_generalization(const SymSet& s) { return !s.has_closed_points() || s.has_generic(); }
inline bool stable_under_specialization(const SymSet& s) { return !s.has_generic() || s.is_whole(); }
inline bool is_patch_closed(const SymSet& s) { return s.has_generic() || s.is_finite(); }

inline bool sym_is_closed(View view, const SymSet& s) {
  switch (view) {
    case View::Flat: return s.is_empty() || s.has_generic();
    case View::Zariski: return s.is_whole() || (s.is_finite() && !s.has_generic());
    case View::Patch: return (s.is_finite() && !s.has_generic()) || s.has_generic();
  }
  return false;
}

inline bool sym_is_open(View view, const SymSet& s) { return sym_is_closed(view, complement(s)); }

/// Closedness in the order-reversed model, where the generic point sits
/// above every closed point. The patch topology is unchanged.
inline bool sym_is_closed_reversed(View view, const SymSet& s) {
  switch (view) {
    case View::Flat: return is_patch_closed(s) && stable_under_specialization(s);
    case View::Zariski: return is_patch_closed(s) && stable_under_generalization(s);
    case View::Patch: return is_patch_closed(s);
  }
  return false;
}

inline SymSet sym_closure(View view, const SymSet& s) {
  const bool finite_closed = s.is_finite() && !s.has_generic();
  switch (view) {
    case View::Flat: return s.is_empty() ? s : s.with_generic(true);
    case View::Zariski: return finite_closed ? s : SymSet::whole(s.spectrum());
    case View::Patch: return finite_closed ? s : s.with_generic(true);
  }
  return s;
}

inline SymSet sym_interior(View view, const SymSet& s) { return complement(sym_closure(view, complement(s))); }

/// Irreducible components of a view: the whole space (Zariski), or the
/// family {generic, p} indexed by all closed points p (flat).
struct ComponentFamily {
  SymbolicSpectrum spectrum;
  View view;

  bool is_single_whole_space() const { return view == View::Zariski; }

  std::string description() const {
    if (view == View::Zariski) return "whole space " + spectrum.name();
    return "{(0), p} for every closed point p of " + spectrum.name();
  }

  /// The first `limit` components (the Zariski family has exactly one).
  std::vector<SymSet> materialize(std::size_t limit) const {
    std::vector<SymSet> out;
    if (view == View::Zariski) {
      if (limit) out.push_back(SymSet::whole(spectrum));
      return out;
    }
    for (auto p : spectrum.enumerate(limit)) out.push_back(SymSet::fin(spectrum, {p}, true));
    return out;
  }
};

inline ComponentFamily sym_irreducible_components(const SymbolicSpectrum& spectrum, View view) {
  if (view == View::Patch) fail(ErrorKind::InvalidParameter, "view must be zariski or flat");
  return {spectrum, view};
}

struct ConditionVi {
  bool holds = true;
  bool hypothesis = false;           // intersection of the family lies in p
  bool intersection_is_zero = false;
  std::string witness;               // set when the condition fails
};

/// "If the intersection of a family of primes lies in p, some member lies
/// in p", decided exactly. Containment is divisibility: the intersection of
/// finitely many maximal ideals is generated by the product of their
/// generators; an infinite family (or one containing (0)) intersects to (0).
inline ConditionVi condition_vi_symbolic(const SymSet& family, SymPoint p) {
  if (!family.has_closed_points() && !family.has_generic()) fail(ErrorKind::EmptyFamily, "the intersection condition needs a nonempty family");
  const auto& spec = family.spectrum();
  if (!p.is_generic() && !spec.is_closed_point(p.index())) fail(ErrorKind::InvalidParameter, "point is not in " + spec.name());
  ConditionVi out;
  out.intersection_is_zero = family.has_generic() || !family.is_finite();
  if (p.is_generic()) {
    out.hypothesis = out.intersection_is_zero;
  } else {
    // (0) lies in every prime; a nonzero product lies in (q) iff q divides it.
    out.hypothesis = out.intersection_is_zero || family.contains(p);
  }
  if (!out.hypothesis) return out;
  // Some member inside p: (0) is inside everything; a maximal ideal only in itself.
  bool member_inside = family.has_generic() || (!p.is_generic() && family.contains(p));
  out.holds = member_inside;
  if (!out.holds) {
    std::string where = p.is_generic() ? "(0)" : "(" + spec.render_point(p.index()) + ")";
    out.witness = "intersection of the family is (0), contained in " + where + ", but no member of the family is";
  }
  return out;
}

/// Whether the intersection of the basic opens D(q), q ranging over the
/// closed points of `family`, is Zariski-open.
inline bool condition_v_symbolic(const SymSet& family) {
  // D(q) = everything except q, so the intersection removes the family.
  SymSet meet = complement(family.with_generic(false));
  return sym_is_open(View::Zariski, meet);
}

struct NoetherianReport {
  bool flat = false;
  bool zariski = false;
  /// Both-noetherian would force a finite spectrum; this spectrum is infinite.
  bool both_noetherian_implies_finite = false;
  std::string flat_witness;
};

/// Zariski: closed sets are the whole space or finite sets of closed points,
/// so descending chains stabilize. Flat: decided by the family of all closed
/// points against the generic point.
inline NoetherianReport sym_noetherian(const SymbolicSpectrum& spectrum) {
  NoetherianReport r;
  r.zariski = true;
  ConditionVi vi = condition_vi_symbolic(SymSet::cofin(spectrum, {}), SymPoint::generic());
  r.flat = vi.holds;
  r.flat_witness = vi.witness;
  const bool infinite = spectrum.enumerate(3).size() == 3;
  r.both_noetherian_implies_finite = !(r.zariski && r.flat) || !infinite;
  return r;
}

inline bool sym_noetherian(const SymbolicSpectrum& spectrum, View view) {
  auto r = sym_noetherian(spectrum);
  if (view == View::Patch) return false;  // infinite compact Hausdorff
  return view == View::Flat ? r.flat : r.zariski;
}

/// Longest strict chain of points: (0) < (p).
inline std::size_t max_chain_length(const SymbolicSpectrum&) { return 2; }

struct Subcover {
  std::optional<std::vector<std::size_t>> indices;  // into the cover
  std::optional<SymPoint> uncovered;
};

/// Flat-open sets are the whole space and the sets without the generic
/// point, so only a whole-space member can cover the generic point.
inline Subcover sym_finite_subcover(const std::vector<SymSet>& cover) {
  for (const auto& s : cover)
    if (!sym_is_open(View::Flat, s)) fail(ErrorKind::NotOpen, "cover member is not flat-open");
  for (std::size_t i = 0; i < cover.size(); ++i)
    if (cover[i].is_whole()) return {std::vector<std::size_t>{i}, std::nullopt};
  return {std::nullopt, SymPoint::generic()};
}

}  // namespace spectra::symbolic
