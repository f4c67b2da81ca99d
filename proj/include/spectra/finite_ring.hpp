#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "spectra/element_set.hpp"
#include "spectra/error.hpp"

namespace spectra {

namespace detail {
struct RingData;
}

enum class RingKind { ZMod, PolyQuotient, Product, Table };

/// A finite commutative unital ring with total operation access.
///
/// Elements are the canonical indices 0..size()-1. The encoding depends on
/// the presentation:
///   - ZMod(n): the residue itself.
///   - PolyQuotient(p, f): the coefficient vector c0 + c1 p + c2 p^2 + ... .
///   - Product(R1, ..., Rk): mixed radix, first factor most significant.
///   - Table: the row/column index of the supplied tables.
///
/// Values are immutable and cheap to copy (shared state).
class FiniteRing {
 public:
  RingKind kind() const;
  std::uint32_t size() const;
  Element zero() const;
  Element one() const;

  Element add(Element a, Element b) const;
  Element mul(Element a, Element b) const;
  Element neg(Element a) const;
  Element sub(Element a, Element b) const { return add(a, neg(b)); }

  /// ZMod modulus, PolyQuotient characteristic; 0 otherwise.
  std::uint32_t modulus() const;
  /// PolyQuotient defining polynomial coefficients (c0 first).
  const std::vector<std::uint32_t>& polynomial() const;
  const std::vector<FiniteRing>& factors() const;
  /// Full operation tables, rows indexed by the left operand.
  std::vector<std::vector<Element>> add_table() const;
  std::vector<std::vector<Element>> mul_table() const;

  /// A small set whose additive span is the whole carrier.
  const std::vector<Element>& additive_generators() const;

  /// Product factor coordinates of `a` (Product presentation only).
  std::vector<Element> coordinates(Element a) const;
  Element from_coordinates(const std::vector<Element>& coords) const;

  bool same_as(const FiniteRing& other) const;

 private:
  explicit FiniteRing(std::shared_ptr<const detail::RingData> data) : data_(std::move(data)) {}
  std::shared_ptr<const detail::RingData> data_;

  friend FiniteRing make_zmod(std::uint32_t n);
  friend FiniteRing make_poly_quotient(std::uint32_t p, std::vector<std::uint32_t> coefficients);
  friend FiniteRing make_product(std::vector<FiniteRing> factors);
  friend FiniteRing make_table_unchecked(std::uint32_t size, std::vector<std::uint16_t> add,
                                         std::vector<std::uint16_t> mul, Element zero, Element one);
};

struct ZModPresentation {
  std::uint32_t n;
};
struct PolyQuotientPresentation {
  std::uint32_t p;
  std::vector<std::uint32_t> coefficients;
};
struct ProductPresentation {
  std::vector<FiniteRing> factors;
};
struct TablePresentation {
  std::uint32_t size;
  std::vector<std::vector<Element>> add;
  std::vector<std::vector<Element>> mul;
  Element zero;
  Element one;
};
using Presentation =
    std::variant<ZModPresentation, PolyQuotientPresentation, ProductPresentation, TablePresentation>;

/// Tables with more points than this are not accepted from user input; the
/// axiom check is cubic.
inline constexpr std::uint32_t kMaxCheckedTableSize = 256;
/// Quotient rings are materialized as tables up to this size.
inline constexpr std::uint32_t kMaxTableSize = 4096;
inline constexpr std::uint32_t kMaxRingSize = 1u << 30;

namespace detail {

inline constexpr std::uint32_t kCacheTablesUpTo = 1024;

struct RingData {
  RingKind kind{};
  std::uint32_t size = 0;
  Element zero = 0;
  Element one = 0;

  std::uint32_t modulus = 0;
  std::vector<std::uint32_t> poly;  // PolyQuotient: f, normalized monic
  std::vector<std::uint32_t> raw_poly;
  std::uint32_t degree = 0;

  std::vector<FiniteRing> factors;
  std::vector<std::uint32_t> strides;

  std::vector<std::uint16_t> add_table;
  std::vector<std::uint16_t> mul_table;
  std::vector<Element> neg_table;

  std::vector<Element> additive_generators;

  bool has_tables() const { return !mul_table.empty(); }

  Element add_raw(Element a, Element b) const;
  Element mul_raw(Element a, Element b) const;
  Element neg_raw(Element a) const;

  std::vector<std::uint32_t> decode_poly(Element a) const {
    std::vector<std::uint32_t> c(degree);
    for (std::uint32_t i = 0; i < degree; ++i) {
      c[i] = a % modulus;
      a /= modulus;
    }
    return c;
  }
  Element encode_poly(const std::vector<std::uint32_t>& c) const {
    Element a = 0;
    for (std::uint32_t i = degree; i-- > 0;) a = a * modulus + c[i];
    return a;
  }
};

inline std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(r) * base) % m);
    base = static_cast<std::uint64_t>((static_cast<unsigned __int128>(base) * base) % m);
    exp >>= 1;
  }
  return r;
}

/// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * x) % n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

inline Element RingData::add_raw(Element a, Element b) const {
  switch (kind) {
    case RingKind::ZMod: {
      std::uint64_t s = std::uint64_t{a} + b;
      return static_cast<Element>(s >= modulus ? s - modulus : s);
    }
    case RingKind::PolyQuotient: {
      Element out = 0, place = 1;
      for (std::uint32_t i = 0; i < degree; ++i) {
        out += ((a % modulus + b % modulus) % modulus) * place;
        a /= modulus;
        b /= modulus;
        place *= modulus;
      }
      return out;
    }
    case RingKind::Product: {
      Element out = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        std::uint32_t m = factors[i].size();
        Element ai = (a / strides[i]) % m, bi = (b / strides[i]) % m;
        out += factors[i].add(ai, bi) * strides[i];
      }
      return out;
    }
    case RingKind::Table:
      return add_table[std::size_t{a} * size + b];
  }
  return 0;
}

inline Element RingData::mul_raw(Element a, Element b) const {
  switch (kind) {
    case RingKind::ZMod:
      return static_cast<Element>((std::uint64_t{a} * b) % modulus);
    case RingKind::PolyQuotient: {
      auto x = decode_poly(a), y = decode_poly(b);
      std::vector<std::uint64_t> prod(2 * degree, 0);
      for (std::uint32_t i = 0; i < degree; ++i)
        for (std::uint32_t j = 0; j < degree; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % modulus;
      // poly is monic of degree `degree`: x^d = -(c0 + ... + c_{d-1} x^{d-1}).
      for (std::uint32_t k = 2 * degree - 1; k >= degree; --k) {
        std::uint64_t lead = prod[k];
        if (!lead) continue;
        prod[k] = 0;
        for (std::uint32_t i = 0; i < degree; ++i) {
          std::uint64_t t = (lead * poly[i]) % modulus;
          prod[k - degree + i] = (prod[k - degree + i] + modulus - t) % modulus;
        }
      }
      std::vector<std::uint32_t> c(degree);
      for (std::uint32_t i = 0; i < degree; ++i) c[i] = static_cast<std::uint32_t>(prod[i]);
      return encode_poly(c);
    }
    case RingKind::Product: {
      Element out = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        std::uint32_t m = factors[i].size();
        Element ai = (a / strides[i]) % m, bi = (b / strides[i]) % m;
        out += factors[i].mul(ai, bi) * strides[i];
      }
      return out;
    }
    case RingKind::Table:
      return mul_table[std::size_t{a} * size + b];
  }
  return 0;
}

inline Element RingData::neg_raw(Element a) const {
  switch (kind) {
    case RingKind::ZMod:
      return a == 0 ? 0 : modulus - a;
    case RingKind::PolyQuotient: {
      auto c = decode_poly(a);
      for (auto& v : c) v = (modulus - v) % modulus;
      return encode_poly(c);
    }
    case RingKind::Product: {
      Element out = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        std::uint32_t m = factors[i].size();
        out += factors[i].neg((a / strides[i]) % m) * strides[i];
      }
      return out;
    }
    case RingKind::Table:
      return neg_table[a];
  }
  return 0;
}

// Breadth-first additive span; `out_used` receives the generators that
// actually enlarged the span.
template <typename Add>
ElementSet additive_span(std::uint32_t size, Element zero, const std::vector<Element>& generators, Add add,
                         std::vector<Element>* out_used = nullptr) {
  ElementSet span(size);
  span.insert(zero);
  std::vector<Element> members{zero};
  std::vector<Element> used;
  for (Element g : generators) {
    if (span.contains(g)) continue;
    used.push_back(g);
    // Adjoin g: close members under +g (and the already-used generators).
    std::vector<Element> frontier = members;
    while (!frontier.empty()) {
      std::vector<Element> next;
      for (Element x : frontier) {
        for (Element h : used) {
          Element y = add(x, h);
          if (!span.contains(y)) {
            span.insert(y);
            members.push_back(y);
            next.push_back(y);
          }
        }
      }
      frontier = std::move(next);
    }
  }
  if (out_used) *out_used = std::move(used);
  return span;
}

inline void finalize(RingData& d) {
  if (d.kind != RingKind::Table && d.size <= kCacheTablesUpTo) {
    std::size_t n = d.size;
    std::vector<std::uint16_t> add(n * n), mul(n * n);
    if (d.kind == RingKind::Product) {
      const std::size_t k = d.factors.size();
      std::vector<Element> coords(n * k);
      for (Element a = 0; a < n; ++a)
        for (std::size_t i = 0; i < k; ++i) coords[a * k + i] = (a / d.strides[i]) % d.factors[i].size();
      for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) {
          Element s = 0, p = 0;
          for (std::size_t i = 0; i < k; ++i) {
            s += d.factors[i].add(coords[a * k + i], coords[b * k + i]) * d.strides[i];
            p += d.factors[i].mul(coords[a * k + i], coords[b * k + i]) * d.strides[i];
          }
          add[a * n + b] = static_cast<std::uint16_t>(s);
          mul[a * n + b] = static_cast<std::uint16_t>(p);
        }
    } else {
      for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) {
          add[a * n + b] = static_cast<std::uint16_t>(d.add_raw(a, b));
          mul[a * n + b] = static_cast<std::uint16_t>(d.mul_raw(a, b));
        }
    }
    std::vector<Element> neg(n);
    for (Element a = 0; a < n; ++a) neg[a] = d.neg_raw(a);
    d.add_table = std::move(add);
    d.mul_table = std::move(mul);
    d.neg_table = std::move(neg);
  }
}

}  // namespace detail

inline RingKind FiniteRing::kind() const { return data_->kind; }
inline std::uint32_t FiniteRing::size() const { return data_->size; }
inline Element FiniteRing::zero() const { return data_->zero; }
inline Element FiniteRing::one() const { return data_->one; }
inline Element FiniteRing::add(Element a, Element b) const {
  if (data_->has_tables()) return data_->add_table[std::size_t{a} * data_->size + b];
  return data_->add_raw(a, b);
}
inline Element FiniteRing::mul(Element a, Element b) const {
  if (data_->has_tables()) return data_->mul_table[std::size_t{a} * data_->size + b];
  return data_->mul_raw(a, b);
}
inline Element FiniteRing::neg(Element a) const {
  if (!data_->neg_table.empty()) return data_->neg_table[a];
  return data_->neg_raw(a);
}
inline std::uint32_t FiniteRing::modulus() const { return data_->modulus; }
inline const std::vector<std::uint32_t>& FiniteRing::polynomial() const { return data_->raw_poly; }
inline const std::vector<FiniteRing>& FiniteRing::factors() const { return data_->factors; }
inline const std::vector<Element>& FiniteRing::additive_generators() const { return data_->additive_generators; }

inline std::vector<std::vector<Element>> FiniteRing::add_table() const {
  std::vector<std::vector<Element>> t;
  for (Element a = 0; a < size(); ++a) {
    auto& row = t.emplace_back();
    for (Element b = 0; b < size(); ++b) row.push_back(add(a, b));
  }
  return t;
}
inline std::vector<std::vector<Element>> FiniteRing::mul_table() const {
  std::vector<std::vector<Element>> t;
  for (Element a = 0; a < size(); ++a) {
    auto& row = t.emplace_back();
    for (Element b = 0; b < size(); ++b) row.push_back(mul(a, b));
  }
  return t;
}

inline std::vector<Element> FiniteRing::coordinates(Element a) const {
  std::vector<Element> c;
  for (std::size_t i = 0; i < data_->factors.size(); ++i)
    c.push_back((a / data_->strides[i]) % data_->factors[i].size());
  return c;
}
inline Element FiniteRing::from_coordinates(const std::vector<Element>& coords) const {
  Element a = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) a += coords[i] * data_->strides[i];
  return a;
}

inline bool FiniteRing::same_as(const FiniteRing& other) const {
  if (data_ == other.data_) return true;
  const auto& x = *data_;
  const auto& y = *other.data_;
  if (x.kind != y.kind || x.size != y.size || x.zero != y.zero || x.one != y.one) return false;
  switch (x.kind) {
    case RingKind::ZMod:
      return x.modulus == y.modulus;
    case RingKind::PolyQuotient:
      return x.modulus == y.modulus && x.raw_poly == y.raw_poly;
    case RingKind::Product:
      if (x.factors.size() != y.factors.size()) return false;
      for (std::size_t i = 0; i < x.factors.size(); ++i)
        if (!x.factors[i].same_as(y.factors[i])) return false;
      return true;
    case RingKind::Table:
      return x.add_table == y.add_table && x.mul_table == y.mul_table;
  }
  return false;
}

inline FiniteRing make_zmod(std::uint32_t n) {
  if (n < 2) fail(ErrorKind::InvalidParameter, "zmod modulus must be >= 2, got " + std::to_string(n));
  if (n > kMaxRingSize) fail(ErrorKind::SizeBound, "zmod modulus exceeds " + std::to_string(kMaxRingSize));
  auto d = std::make_shared<detail::RingData>();
  d->kind = RingKind::ZMod;
  d->size = n;
  d->zero = 0;
  d->one = 1;
  d->modulus = n;
  d->additive_generators = {1};
  detail::finalize(*d);
  return FiniteRing(std::move(d));
}

/// F_p[x]/(f). `coefficients` lists c0, c1, ..., ck with ck != 0 and k >= 1.
inline FiniteRing make_poly_quotient(std::uint32_t p, std::vector<std::uint32_t> coefficients) {
  if (!detail::is_prime_u64(p)) fail(ErrorKind::InvalidParameter, "polyquot characteristic " + std::to_string(p) + " is not prime");
  if (coefficients.size() < 2 || coefficients.back() == 0)
    fail(ErrorKind::InvalidParameter, "polyquot polynomial must have degree >= 1 and nonzero leading coefficient");
  for (auto c : coefficients)
    if (c >= p) fail(ErrorKind::InvalidParameter, "polyquot coefficient " + std::to_string(c) + " not reduced mod " + std::to_string(p));
  std::uint32_t degree = static_cast<std::uint32_t>(coefficients.size() - 1);
  std::uint64_t size = 1;
  for (std::uint32_t i = 0; i < degree; ++i) {
    size *= p;
    if (size > kMaxRingSize) fail(ErrorKind::SizeBound, "polyquot ring exceeds " + std::to_string(kMaxRingSize) + " elements");
  }
  auto d = std::make_shared<detail::RingData>();
  d->kind = RingKind::PolyQuotient;
  d->size = static_cast<std::uint32_t>(size);
  d->modulus = p;
  d->degree = degree;
  d->raw_poly = coefficients;
  // Normalize to a monic polynomial; same ideal since the leading coefficient is a unit.
  std::uint64_t inv = detail::mod_pow(coefficients.back(), p - 2, p);
  d->poly.resize(coefficients.size());
  for (std::size_t i = 0; i < coefficients.size(); ++i) d->poly[i] = static_cast<std::uint32_t>((coefficients[i] * inv) % p);
  d->zero = 0;
  d->one = 1;
  Element place = 1;
  for (std::uint32_t i = 0; i < degree; ++i) {
    d->additive_generators.push_back(place);
    place *= p;
  }
  detail::finalize(*d);
  return FiniteRing(std::move(d));
}

inline FiniteRing make_product(std::vector<FiniteRing> factors) {
  if (factors.empty()) fail(ErrorKind::InvalidParameter, "product needs at least one factor");
  std::uint64_t size = 1;
  for (const auto& f : factors) {
    size *= f.size();
    if (size > kMaxRingSize) fail(ErrorKind::SizeBound, "product ring exceeds " + std::to_string(kMaxRingSize) + " elements");
  }
  auto d = std::make_shared<detail::RingData>();
  d->kind = RingKind::Product;
  d->size = static_cast<std::uint32_t>(size);
  d->strides.resize(factors.size());
  std::uint32_t stride = 1;
  for (std::size_t i = factors.size(); i-- > 0;) {
    d->strides[i] = stride;
    stride *= factors[i].size();
  }
  Element zero = 0, one = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    zero += factors[i].zero() * d->strides[i];
    one += factors[i].one() * d->strides[i];
  }
  d->zero = zero;
  d->one = one;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (Element g : factors[i].additive_generators())
      d->additive_generators.push_back(zero - factors[i].zero() * d->strides[i] + g * d->strides[i]);
  }
  d->factors = std::move(factors);
  detail::finalize(*d);
  return FiniteRing(std::move(d));
}

/// Builds a Table ring without the axiom check. Used for quotient rings,
/// which inherit the axioms from their parent.
inline FiniteRing make_table_unchecked(std::uint32_t size, std::vector<std::uint16_t> add, std::vector<std::uint16_t> mul,
                                       Element zero, Element one) {
  auto d = std::make_shared<detail::RingData>();
  d->kind = RingKind::Table;
  d->size = size;
  d->zero = zero;
  d->one = one;
  d->add_table = std::move(add);
  d->mul_table = std::move(mul);
  d->neg_table.assign(size, zero);
  for (Element a = 0; a < size; ++a)
    for (Element b = 0; b < size; ++b)
      if (d->add_table[std::size_t{a} * size + b] == zero) {
        d->neg_table[a] = b;
        break;
      }
  std::vector<Element> all(size);
  for (Element a = 0; a < size; ++a) all[a] = a;
  // Prefer 1 first: for cyclic additive groups that is the whole basis.
  std::vector<Element> order{one};
  for (Element a : all)
    if (a != one) order.push_back(a);
  const auto& tbl = d->add_table;
  detail::additive_span(size, zero, order, [&](Element a, Element b) -> Element { return tbl[std::size_t{a} * size + b]; },
                        &d->additive_generators);
  return FiniteRing(std::move(d));
}

namespace detail {

inline void check_table_axioms(const TablePresentation& t) {
  const std::uint32_t n = t.size;
  auto bad = [](const std::string& what) { fail(ErrorKind::AxiomViolation, what); };
  auto A = [&](Element a, Element b) { return t.add[a][b]; };
  auto M = [&](Element a, Element b) { return t.mul[a][b]; };
  for (Element a = 0; a < n; ++a) {
    if (A(t.zero, a) != a) bad("zero is not an additive identity at " + std::to_string(a));
    if (M(t.one, a) != a) bad("one is not a multiplicative identity at " + std::to_string(a));
    bool has_inverse = false;
    for (Element b = 0; b < n; ++b) {
      if (A(a, b) != A(b, a)) bad("addition is not commutative at (" + std::to_string(a) + "," + std::to_string(b) + ")");
      if (M(a, b) != M(b, a)) bad("multiplication is not commutative at (" + std::to_string(a) + "," + std::to_string(b) + ")");
      if (A(a, b) == t.zero) has_inverse = true;
    }
    if (!has_inverse) bad("element " + std::to_string(a) + " has no additive inverse");
  }
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      for (Element c = 0; c < n; ++c) {
        if (A(A(a, b), c) != A(a, A(b, c))) bad("addition is not associative");
        if (M(M(a, b), c) != M(a, M(b, c))) bad("multiplication is not associative");
        if (M(a, A(b, c)) != A(M(a, b), M(a, c))) bad("multiplication does not distribute over addition");
      }
}

}  // namespace detail

/// Validates and builds a ring from a presentation.
inline FiniteRing make_ring(const Presentation& presentation) {
  return std::visit(
      [](const auto& p) -> FiniteRing {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, ZModPresentation>) {
          return make_zmod(p.n);
        } else if constexpr (std::is_same_v<P, PolyQuotientPresentation>) {
          return make_poly_quotient(p.p, p.coefficients);
        } else if constexpr (std::is_same_v<P, ProductPresentation>) {
          return make_product(p.factors);
        } else {
          if (p.size < 2) fail(ErrorKind::InvalidParameter, "table ring needs at least 2 elements");
          if (p.size > kMaxCheckedTableSize)
            fail(ErrorKind::SizeBound, "table ring larger than " + std::to_string(kMaxCheckedTableSize) + " elements");
          if (p.zero >= p.size || p.one >= p.size) fail(ErrorKind::InvalidParameter, "zero/one index out of range");
          auto check_shape = [&](const std::vector<std::vector<Element>>& tbl, const char* name) {
            if (tbl.size() != p.size) fail(ErrorKind::InvalidParameter, std::string(name) + " table has wrong row count");
            for (const auto& row : tbl) {
              if (row.size() != p.size) fail(ErrorKind::InvalidParameter, std::string(name) + " table is not square");
              for (auto v : row)
                if (v >= p.size) fail(ErrorKind::InvalidParameter, std::string(name) + " table entry out of range");
            }
          };
          check_shape(p.add, "add");
          check_shape(p.mul, "mul");
          detail::check_table_axioms(p);
          std::vector<std::uint16_t> add(std::size_t{p.size} * p.size), mul(add.size());
          for (Element a = 0; a < p.size; ++a)
            for (Element b = 0; b < p.size; ++b) {
              add[std::size_t{a} * p.size + b] = static_cast<std::uint16_t>(p.add[a][b]);
              mul[std::size_t{a} * p.size + b] = static_cast<std::uint16_t>(p.mul[a][b]);
            }
          return make_table_unchecked(p.size, std::move(add), std::move(mul), p.zero, p.one);
        }
      },
      presentation);
}

}  // namespace spectra
