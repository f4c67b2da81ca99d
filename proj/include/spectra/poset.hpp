#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spectra/error.hpp"

// Finite spectral spaces as posets under specialization.
//
// A finite spectral space carries a discrete patch topology (patch is
// compact Hausdorff, hence discrete on finitely many points). A subset is
// flat-closed iff it is patch-closed and stable under generalization, and
// Zariski-closed iff patch-closed and stable under specialization. On a
// finite space that reduces to:
//
//   flat-closed    <=> down-set   (q <= p, p in E  =>  q in E)
//   Zariski-closed <=> up-set     (p <= q, p in E  =>  q in E)
//
// where p <= q means q is a specialization of p (p is contained in q as
// primes). Everything below is built on that identification.

namespace spectra {

enum class View { Zariski, Flat, Patch };

constexpr const char* to_string(View v) {
  switch (v) {
    case View::Zariski: return "zariski";
    case View::Flat: return "flat";
    case View::Patch: return "patch";
  }
  return "?";
}

/// Subset of the points of a poset with at most 64 points.
class PointSet {
 public:
  constexpr PointSet() = default;
  constexpr explicit PointSet(std::uint64_t bits) : bits_(bits) {}
  static PointSet of(std::initializer_list<std::size_t> points) {
    PointSet s;
    for (auto p : points) s.insert(p);
    return s;
  }
  static constexpr PointSet all(std::size_t n) { return PointSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(std::size_t p) const { return (bits_ >> p) & 1u; }
  void insert(std::size_t p) { bits_ |= std::uint64_t{1} << p; }
  void erase(std::size_t p) { bits_ &= ~(std::uint64_t{1} << p); }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool is_subset_of(PointSet o) const { return (bits_ & ~o.bits_) == 0; }
  std::size_t least() const { return static_cast<std::size_t>(std::countr_zero(bits_)); }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::uint64_t w = bits_; w; w &= w - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(w)));
    return out;
  }

  friend constexpr PointSet operator|(PointSet a, PointSet b) { return PointSet(a.bits_ | b.bits_); }
  friend constexpr PointSet operator&(PointSet a, PointSet b) { return PointSet(a.bits_ & b.bits_); }
  friend constexpr PointSet operator-(PointSet a, PointSet b) { return PointSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(PointSet, PointSet) = default;
  friend constexpr bool operator<(PointSet a, PointSet b) { return a.bits_ < b.bits_; }

 private:
  std::uint64_t bits_ = 0;
};

/// Orders sets by least member (empty sets last), ties by bit value.
inline bool by_least_member(PointSet a, PointSet b) {
  std::size_t ka = a.empty() ? 64 : a.least(), kb = b.empty() ? 64 : b.least();
  return ka != kb ? ka < kb : a < b;
}

/// Finite poset; `leq(a, b)` means b lies in the Zariski closure of a.
class SpectralPoset {
 public:
  static constexpr std::size_t kMaxPoints = 64;

  SpectralPoset() = default;

  std::size_t size() const { return up_.size(); }
  PointSet points() const { return PointSet::all(size()); }
  bool leq(std::size_t a, std::size_t b) const { return up_[a].contains(b); }
  /// {q : p <= q}
  PointSet up(std::size_t p) const { return up_[p]; }
  /// {q : q <= p}
  PointSet down(std::size_t p) const { return down_[p]; }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t p) const { return labels_[p]; }

  PointSet minimal_points() const {
    PointSet out;
    for (std::size_t p = 0; p < size(); ++p)
      if (down_[p] == PointSet::of({p})) out.insert(p);
    return out;
  }
  PointSet maximal_points() const {
    PointSet out;
    for (std::size_t p = 0; p < size(); ++p)
      if (up_[p] == PointSet::of({p})) out.insert(p);
    return out;
  }

  /// Covering pairs (a, b): a < b with nothing strictly between.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b : (up_[a] - PointSet::of({a})).members()) {
        PointSet between = (up_[a] & down_[b]) - PointSet::of({a, b});
        if (between.empty()) out.emplace_back(a, b);
      }
    return out;
  }

  /// Same points, opposite order.
  SpectralPoset reversed() const {
    SpectralPoset d;
    d.up_ = down_;
    d.down_ = up_;
    d.labels_ = labels_;
    return d;
  }

  friend bool operator==(const SpectralPoset& a, const SpectralPoset& b) {
    return a.up_ == b.up_ && a.labels_ == b.labels_;
  }

 private:
  std::vector<PointSet> up_;
  std::vector<PointSet> down_;
  std::vector<std::string> labels_;

  friend SpectralPoset make_poset(std::size_t, const std::vector<std::pair<std::size_t, std::size_t>>&,
                                  std::vector<std::string>);
};

/// Builds a poset from any generating relation (a < b pairs); computes the
/// reflexive-transitive closure and rejects cycles.
inline SpectralPoset make_poset(std::size_t size, const std::vector<std::pair<std::size_t, std::size_t>>& relation,
                                std::vector<std::string> labels = {}) {
  if (size > SpectralPoset::kMaxPoints)
    fail(ErrorKind::SizeBound, "posets are limited to " + std::to_string(SpectralPoset::kMaxPoints) + " points");
  if (!labels.empty() && labels.size() != size) fail(ErrorKind::InvalidParameter, "label count does not match poset size");
  if (labels.empty())
    for (std::size_t i = 0; i < size; ++i) labels.push_back(std::to_string(i));
  std::vector<PointSet> up(size);
  for (std::size_t i = 0; i < size; ++i) up[i].insert(i);
  for (auto [a, b] : relation) {
    if (a >= size || b >= size) fail(ErrorKind::InvalidParameter, "relation pair out of range");
    up[a].insert(b);
  }
  // Warshall on bit rows.
  for (std::size_t k = 0; k < size; ++k)
    for (std::size_t i = 0; i < size; ++i)
      if (up[i].contains(k)) up[i] = up[i] | up[k];
  std::vector<PointSet> down(size);
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b : up[a].members()) {
      if (a != b && up[b].contains(a))
        fail(ErrorKind::CycleDetected, "order relation has a cycle through " + labels[a] + " and " + labels[b]);
      down[b].insert(a);
    }
  SpectralPoset p;
  p.up_ = std::move(up);
  p.down_ = std::move(down);
  p.labels_ = std::move(labels);
  return p;
}

inline PointSet up_closure(const SpectralPoset& x, PointSet e) {
  PointSet out;
  for (auto p : e.members()) out = out | x.up(p);
  return out;
}

inline PointSet down_closure(const SpectralPoset& x, PointSet e) {
  PointSet out;
  for (auto p : e.members()) out = out | x.down(p);
  return out;
}

inline bool is_closed(const SpectralPoset& x, View view, PointSet e) {
  switch (view) {
    case View::Zariski: return up_closure(x, e) == e;
    case View::Flat: return down_closure(x, e) == e;
    case View::Patch: return true;
  }
  return false;
}

inline bool is_open(const SpectralPoset& x, View view, PointSet e) { return is_closed(x, view, x.points() - e); }

inline PointSet closure(const SpectralPoset& x, View view, PointSet e) {
  switch (view) {
    case View::Zariski: return up_closure(x, e);
    case View::Flat: return down_closure(x, e);
    case View::Patch: return e;
  }
  return e;
}

inline PointSet interior(const SpectralPoset& x, View view, PointSet e) {
  return x.points() - closure(x, view, x.points() - e);
}

/// {q : q <= p}; a singleton exactly when p is minimal.
inline PointSet flat_closure_point(const SpectralPoset& x, std::size_t p) { return x.down(p); }

namespace detail {
inline void require_nontrivial_view(View view) {
  if (view == View::Patch) fail(ErrorKind::InvalidParameter, "view must be zariski or flat");
}
}  // namespace detail

/// Irreducible closed sets: principal down-sets (flat) or up-sets (Zariski),
/// sorted by bit value. In bijection with the points.
inline std::vector<PointSet> irreducible_closed_sets(const SpectralPoset& x, View view) {
  detail::require_nontrivial_view(view);
  std::vector<PointSet> out;
  for (std::size_t p = 0; p < x.size(); ++p) out.push_back(view == View::Flat ? x.down(p) : x.up(p));
  std::sort(out.begin(), out.end());
  return out;
}

/// The unique p whose closure is E, or nullopt when E is reducible (or empty).
inline std::optional<std::size_t> generic_point(const SpectralPoset& x, View view, PointSet e) {
  detail::require_nontrivial_view(view);
  if (!is_closed(x, view, e)) fail(ErrorKind::NotClosed, "set is not " + std::string(to_string(view)) + "-closed");
  for (auto p : e.members())
    if (closure(x, view, PointSet::of({p})) == e) return p;
  return std::nullopt;
}

/// Flat: down-sets of maximal points. Zariski: up-sets of minimal points.
inline std::vector<PointSet> irreducible_components(const SpectralPoset& x, View view) {
  detail::require_nontrivial_view(view);
  std::vector<PointSet> out;
  if (view == View::Flat) {
    for (auto p : x.maximal_points().members()) out.push_back(x.down(p));
  } else {
    for (auto p : x.minimal_points().members()) out.push_back(x.up(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Components of the comparability graph, ordered by least member. The
/// flat and Zariski topologies have the same connected components.
inline std::vector<PointSet> connected_components(const SpectralPoset& x) {
  std::vector<PointSet> out;
  PointSet todo = x.points();
  while (!todo.empty()) {
    PointSet comp = PointSet::of({todo.least()});
    PointSet frontier = comp;
    while (!frontier.empty()) {
      PointSet next;
      for (auto p : frontier.members()) next = next | x.up(p) | x.down(p);
      frontier = next - comp;
      comp = comp | next;
    }
    out.push_back(comp);
    todo = todo - comp;
  }
  return out;
}

inline constexpr std::size_t kMaxClopenComponents = 20;

/// All sets that are closed and open (in either view): the unions of
/// connected components. Sorted by bit value.
inline std::vector<PointSet> clopen_sets(const SpectralPoset& x) {
  auto comps = connected_components(x);
  if (comps.size() > kMaxClopenComponents)
    fail(ErrorKind::SizeBound, "clopen listing limited to " + std::to_string(kMaxClopenComponents) + " components");
  std::vector<PointSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << comps.size()); ++mask) {
    PointSet s;
    for (std::size_t i = 0; i < comps.size(); ++i)
      if ((mask >> i) & 1u) s = s | comps[i];
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Same points with the specialization order reversed; swaps the flat- and
/// Zariski-closed families.
inline SpectralPoset hochster_dual(const SpectralPoset& x) { return x.reversed(); }

}  // namespace spectra
