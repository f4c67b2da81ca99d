#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "spectra/error.hpp"
#include "spectra/finite_ring.hpp"
#include "spectra/poset.hpp"
#include "spectra/symbolic.hpp"

// Text formats.
//
// Ring descriptions:
//   zmod N
//   polyquot P [c0,c1,...,ck]
//   product <desc>; <desc>; ...        (parenthesize nested products)
//   table <path-to-json> | table {"size":..,"add":..,"mul":..,"zero":..,"one":..}
//
// Posets: one relation per line, "a < b" (chains "a < b < c" allowed); a bare
// identifier declares a point; "#" starts a comment. Points are numbered in
// order of first appearance.
//
// Symbolic sets: {2,3}  cofin{2}  all-primes  all  empty  generic, each
// optionally followed by "+generic". Points are integers or, over F_p,
// polynomials such as x^2+x+1.

namespace spectra {

namespace parse_detail {

[[noreturn]] inline void parse_error(std::size_t line, std::size_t column, const std::string& msg) {
  fail(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg);
}

class Cursor {
 public:
  explicit Cursor(const std::string& text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }
  std::string word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-' || text_[pos_] == '_')) ++pos_;
    return text_.substr(start, pos_ - start);
  }
  std::uint32_t integer() {
    skip_ws();
    std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_++] - '0');
      if (v > 0xffffffffull) {
        pos_ = start;
        error("integer too large");
      }
    }
    if (pos_ == start) error("expected an integer");
    return static_cast<std::uint32_t>(v);
  }
  /// Text up to the next top-level ';' or ')' (brackets and strings respected).
  std::string balanced_chunk() {
    skip_ws();
    std::size_t start = pos_;
    int depth = 0;
    bool in_string = false;
    for (; pos_ < text_.size(); ++pos_) {
      char c = text_[pos_];
      if (in_string) {
        if (c == '\\') ++pos_;
        else if (c == '"') in_string = false;
        continue;
      }
      if (c == '"') in_string = true;
      else if (c == '{' || c == '[' || c == '(') ++depth;
      else if (c == '}' || c == ']' || c == ')') {
        if (depth == 0) break;
        --depth;
      } else if (c == ';' && depth == 0) break;
    }
    std::string out = text_.substr(start, pos_ - start);
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
    return out;
  }
  std::size_t position() const { return pos_; }

  [[noreturn]] void error(const std::string& msg) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    parse_error(line, column, msg);
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline TablePresentation table_from_json(const nlohmann::json& j) {
  auto field = [&](const char* name) -> const nlohmann::json& {
    if (!j.is_object() || !j.contains(name)) fail(ErrorKind::ParseError, std::string("table JSON is missing \"") + name + "\"");
    return j.at(name);
  };
  try {
    TablePresentation t;
    t.size = field("size").get<std::uint32_t>();
    t.add = field("add").get<std::vector<std::vector<Element>>>();
    t.mul = field("mul").get<std::vector<std::vector<Element>>>();
    t.zero = field("zero").get<Element>();
    t.one = field("one").get<Element>();
    return t;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("bad table JSON: ") + e.what());
  }
}

inline FiniteRing parse_ring_desc(Cursor& c);

inline FiniteRing parse_ring_item(Cursor& c) {
  if (c.accept('(')) {
    FiniteRing r = parse_ring_desc(c);
    c.expect(')');
    return r;
  }
  return parse_ring_desc(c);
}

inline FiniteRing parse_ring_desc(Cursor& c) {
  if (c.peek() == '(') return parse_ring_item(c);
  std::string kw = c.word();
  if (kw == "zmod") return make_zmod(c.integer());
  if (kw == "polyquot") {
    std::uint32_t p = c.integer();
    c.expect('[');
    std::vector<std::uint32_t> coeffs;
    if (!c.accept(']')) {
      do coeffs.push_back(c.integer());
      while (c.accept(','));
      c.expect(']');
    }
    return make_poly_quotient(p, std::move(coeffs));
  }
  if (kw == "product") {
    std::vector<FiniteRing> factors{parse_ring_item(c)};
    while (c.accept(';')) factors.push_back(parse_ring_item(c));
    return make_product(std::move(factors));
  }
  if (kw == "table") {
    std::string chunk = c.balanced_chunk();
    if (chunk.empty()) c.error("table needs a JSON path or an inline JSON object");
    std::string text = chunk.front() == '{' ? chunk : read_file(chunk);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::ParseError, std::string("bad table JSON: ") + e.what());
    }
    return make_ring(table_from_json(j));
  }
  c.error(kw.empty() ? "expected a ring description" : "unknown ring kind '" + kw + "'");
}

}  // namespace parse_detail

inline FiniteRing parse_ring(const std::string& text) {
  parse_detail::Cursor c(text);
  FiniteRing r = parse_detail::parse_ring_desc(c);
  if (!c.at_end()) c.error("unexpected trailing input");
  return r;
}

inline std::string render_ring(const FiniteRing& ring) {
  switch (ring.kind()) {
    case RingKind::ZMod: return "zmod " + std::to_string(ring.modulus());
    case RingKind::PolyQuotient: {
      std::string s = "polyquot " + std::to_string(ring.modulus()) + " [";
      const auto& c = ring.polynomial();
      for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
      return s + "]";
    }
    case RingKind::Product: {
      std::string s = "product ";
      const auto& fs = ring.factors();
      for (std::size_t i = 0; i < fs.size(); ++i) {
        if (i) s += "; ";
        s += fs[i].kind() == RingKind::Product ? "(" + render_ring(fs[i]) + ")" : render_ring(fs[i]);
      }
      return s;
    }
    case RingKind::Table: {
      nlohmann::json j = {{"size", ring.size()}, {"add", ring.add_table()}, {"mul", ring.mul_table()},
                          {"zero", ring.zero()}, {"one", ring.one()}};
      return "table " + j.dump();
    }
  }
  return "";
}

/// Parses the poset text format.
inline SpectralPoset parse_poset(const std::string& text) {
  std::map<std::string, std::size_t> index;
  std::vector<std::string> labels;
  std::vector<std::pair<std::size_t, std::size_t>> relation;
  auto point = [&](const std::string& name) {
    auto [it, inserted] = index.emplace(name, labels.size());
    if (inserted) labels.push_back(name);
    return it->second;
  };
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::vector<std::pair<std::string, std::size_t>> tokens;  // name, column
    std::size_t i = 0;
    bool expect_name = true;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      if (line[i] == '<') {
        if (expect_name) parse_detail::parse_error(line_no, i + 1, "expected a point name before '<'");
        expect_name = true;
        ++i;
        continue;
      }
      if (!expect_name) parse_detail::parse_error(line_no, i + 1, "expected '<' between point names");
      std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '<') ++i;
      tokens.emplace_back(line.substr(start, i - start), start + 1);
      expect_name = false;
    }
    if (tokens.empty()) {
      if (!expect_name || line.find('<') != std::string::npos) parse_detail::parse_error(line_no, 1, "dangling '<'");
      continue;
    }
    if (expect_name) parse_detail::parse_error(line_no, line.size() + 1, "expected a point name after '<'");
    std::vector<std::size_t> ids;
    for (const auto& t : tokens) ids.push_back(point(t.first));
    for (std::size_t k = 0; k + 1 < ids.size(); ++k) {
      if (ids[k] == ids[k + 1])
        fail(ErrorKind::CycleDetected, "line " + std::to_string(line_no) + ": '" + tokens[k].first + " < " + tokens[k].first + "'");
      relation.emplace_back(ids[k], ids[k + 1]);
    }
  }
  return make_poset(labels.size(), relation, labels);
}

inline SpectralPoset parse_poset_file(const std::string& path) { return parse_poset(parse_detail::read_file(path)); }

/// Declares every point in order, then lists the covering relations.
inline std::string render_poset(const SpectralPoset& x) {
  std::string s;
  for (const auto& l : x.labels()) s += l + "\n";
  for (auto [a, b] : x.covers()) s += x.label(a) + " < " + x.label(b) + "\n";
  return s;
}

namespace symbolic {

inline SymPoint parse_sym_point(const SymbolicSpectrum& spectrum, const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t == "generic" || t == "(0)" || t == "0") return SymPoint::generic();
  return SymPoint::closed(spectrum.parse_point(t));
}

inline std::string render_sym_point(const SymbolicSpectrum& spectrum, SymPoint p) {
  return p.is_generic() ? "generic" : spectrum.render_point(p.index());
}

inline SymSet parse_sym_set(const SymbolicSpectrum& spectrum, const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  bool extra_generic = false;
  const std::string suffix = "+generic";
  if (t.size() > suffix.size() && t.compare(t.size() - suffix.size(), suffix.size(), suffix) == 0) {
    extra_generic = true;
    t.erase(t.size() - suffix.size());
  }
  auto bad = [&]() -> SymSet { fail(ErrorKind::ParseError, "cannot read set '" + text + "'"); };
  SymSet out = SymSet::empty(spectrum);
  if (t == "all") out = SymSet::whole(spectrum);
  else if (t == "all-primes" || t == "all-closed") out = SymSet::cofin(spectrum, {});
  else if (t == "empty") out = SymSet::empty(spectrum);
  else if (t == "generic") out = SymSet::of_point(spectrum, SymPoint::generic());
  else {
    Mode mode = Mode::Fin;
    std::string body = t;
    if (body.rfind("cofin", 0) == 0) {
      mode = Mode::Cofin;
      body.erase(0, 5);
    }
    if (body.size() < 2 || body.front() != '{' || body.back() != '}') return bad();
    body = body.substr(1, body.size() - 2);
    std::vector<std::uint64_t> pts;
    bool generic = false;
    std::size_t start = 0;
    while (!body.empty() && start <= body.size()) {
      std::size_t comma = body.find(',', start);
      std::string item = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (item.empty()) return bad();
      SymPoint p = parse_sym_point(spectrum, item);
      if (p.is_generic()) generic = true;
      else pts.push_back(p.index());
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (mode == Mode::Cofin && generic) return bad();  // ambiguous: excluded or included?
    out = SymSet(spectrum, mode, std::move(pts), generic);
  }
  return extra_generic ? out.with_generic(true) : out;
}

inline std::string render_sym_set(const SymSet& s) {
  if (s.is_whole()) return "all";
  if (s.mode() == Mode::Cofin && s.points().empty()) return s.has_generic() ? "all" : "all-primes";
  if (s.is_empty()) return "empty";
  if (s.mode() == Mode::Fin && s.points().empty()) return "generic";
  std::string out = s.mode() == Mode::Cofin ? "cofin{" : "{";
  for (std::size_t i = 0; i < s.points().size(); ++i) out += (i ? "," : "") + s.spectrum().render_point(s.points()[i]);
  out += "}";
  if (s.has_generic()) out += "+generic";
  return out;
}

}  // namespace symbolic

}  // namespace spectra
