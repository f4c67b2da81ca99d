#pragma once

#include <string>

#include "spectra/poset.hpp"

namespace spectra {

struct DotOptions {
  std::string graph_name = "spectrum";
  bool include_dual = false;
};

namespace dot_detail {

inline std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// maximal only: box, minimal only: ellipse, both (isolated): doublecircle,
// neither: circle.
inline const char* shape(const SpectralPoset& x, std::size_t p) {
  bool mx = x.maximal_points().contains(p), mn = x.minimal_points().contains(p);
  if (mx && mn) return "doublecircle";
  if (mx) return "box";
  if (mn) return "ellipse";
  return "circle";
}

inline std::string digraph(const SpectralPoset& x, const std::string& name) {
  std::string s = "digraph " + quote(name) + " {\n";
  s += "  rankdir=BT;\n";
  auto comps = connected_components(x);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    s += "  subgraph cluster_" + std::to_string(c) + " {\n";
    s += "    label=" + quote("component " + std::to_string(c)) + ";\n";
    for (auto p : comps[c].members())
      s += "    n" + std::to_string(p) + " [label=" + quote(x.label(p)) + ", shape=" + shape(x, p) + "];\n";
    s += "  }\n";
  }
  for (auto [a, b] : x.covers()) s += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
  return s + "}\n";
}

}  // namespace dot_detail

/// Hasse diagram (covering edges only, generic points at the bottom), one
/// cluster per connected component. Optionally followed by the dual's graph.
inline std::string export_dot(const SpectralPoset& x, const DotOptions& options = {}) {
  std::string s = dot_detail::digraph(x, options.graph_name);
  if (options.include_dual) s += dot_detail::digraph(hochster_dual(x), options.graph_name + "_dual");
  return s;
}

}  // namespace spectra
