#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "spectra/error.hpp"
#include "spectra/finite_ring.hpp"
#include "spectra/ideal.hpp"
#include "spectra/parse.hpp"
#include "spectra/pierce.hpp"
#include "spectra/poset.hpp"
#include "spectra/poset_oracle.hpp"
#include "spectra/spectrum.hpp"
#include "spectra/symbolic.hpp"

namespace spectra {

inline constexpr const char* kVersion = "0.1.0";

/// Rings up to this size also get the enumeration-based Pierce checks.
inline constexpr std::uint32_t kMaxRegularOracleSize = 256;

struct RingSubject {
  std::string input;
  FiniteRing ring;
};
struct PosetSubject {
  std::string source;
  SpectralPoset poset;
};
struct SymbolicSubject {
  symbolic::SymbolicSpectrum spectrum;
};
using Subject = std::variant<RingSubject, PosetSubject, SymbolicSubject>;

struct SymbolicQueries {
  std::optional<std::string> closure;       // "view:set"
  std::optional<std::string> components;    // view
  std::size_t limit = 5;
  bool noetherian = false;
  std::optional<std::string> condition_vi;  // "family:point"
};

struct ReportRequest {
  Subject subject;
  std::vector<std::string> sections;
  std::size_t max_exhaustive = kMaxOraclePoints;
  SymbolicQueries symbolic;
  bool timing = false;
};

struct Report {
  nlohmann::json json;
  bool oracle_failed = false;
};

namespace report_detail {

using nlohmann::json;

inline json to_json(PointSet s) { return s.members(); }
inline json to_json(const std::vector<PointSet>& sets) {
  json out = json::array();
  for (auto s : sets) out.push_back(to_json(s));
  return out;
}
inline json to_json(const ElementSet& s) { return s.members(); }

inline json sym_json(const symbolic::SymSet& s) {
  return {{"text", symbolic::render_sym_set(s)},
          {"mode", s.mode() == symbolic::Mode::Fin ? "fin" : "cofin"},
          {"points", s.points()},
          {"generic", s.has_generic()}};
}

inline View parse_view(const std::string& text, bool allow_patch = true) {
  if (text == "flat") return View::Flat;
  if (text == "zariski") return View::Zariski;
  if (text == "patch" && allow_patch) return View::Patch;
  fail(ErrorKind::ParseError, "unknown view '" + text + "'");
}

inline std::pair<std::string, std::string> split_colon(const std::string& text, const char* what) {
  auto colon = text.find(':');
  if (colon == std::string::npos) fail(ErrorKind::ParseError, std::string(what) + " must look like <left>:<right>, got '" + text + "'");
  return {text.substr(0, colon), text.substr(colon + 1)};
}

inline std::vector<PointSet> closed_family(const SpectralPoset& x, View view) {
  std::vector<PointSet> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << x.size()); ++s)
    if (is_closed(x, view, PointSet(s))) out.push_back(PointSet(s));
  return out;
}

inline json covers_json(const SpectralPoset& x) {
  json out = json::array();
  for (auto [a, b] : x.covers()) out.push_back({a, b});
  return out;
}

inline json components_section(const SpectralPoset& x) {
  return {{"connected", to_json(connected_components(x))},
          {"flat_irreducible", to_json(irreducible_components(x, View::Flat))},
          {"zariski_irreducible", to_json(irreducible_components(x, View::Zariski))}};
}

inline json topology_section(const SpectralPoset& x, std::size_t max_exhaustive) {
  json flat_pts = json::array(), zar_pts = json::array();
  for (std::size_t p = 0; p < x.size(); ++p) {
    flat_pts.push_back(to_json(closure(x, View::Flat, PointSet::of({p}))));
    zar_pts.push_back(to_json(closure(x, View::Zariski, PointSet::of({p}))));
  }
  json t = {{"minimal", to_json(x.minimal_points())},
            {"maximal", to_json(x.maximal_points())},
            {"covers", covers_json(x)},
            {"flat_point_closures", flat_pts},
            {"zariski_point_closures", zar_pts}};
  if (connected_components(x).size() <= kMaxClopenComponents) t["clopen"] = to_json(clopen_sets(x));
  if (x.size() <= max_exhaustive) {
    t["flat_closed"] = to_json(closed_family(x, View::Flat));
    t["zariski_closed"] = to_json(closed_family(x, View::Zariski));
  }
  return t;
}

inline json dual_section(const SpectralPoset& x, std::size_t max_exhaustive) {
  SpectralPoset d = hochster_dual(x);
  json out = {{"covers", covers_json(d)}, {"involution", hochster_dual(d) == x}};
  if (x.size() <= max_exhaustive) {
    bool swap = closed_family(x, View::Flat) == closed_family(d, View::Zariski) &&
                closed_family(x, View::Zariski) == closed_family(d, View::Flat);
    out["closed_families_swap"] = swap;
  }
  return out;
}

inline json check_json(const OracleCheck& c) {
  json j = {{"name", c.name}, {"passed", c.passed}};
  if (c.counterexample) j["counterexample"] = to_json(*c.counterexample);
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

inline std::size_t clamp_exhaustive(std::size_t requested) { return std::min(requested, kHardMaxOraclePoints); }

inline OracleReport poset_oracle_or_throw(const SpectralPoset& x, std::size_t max_exhaustive) {
  std::size_t bound = clamp_exhaustive(max_exhaustive);
  if (x.size() > bound)
    fail(ErrorKind::SizeBound, "oracle needs " + std::to_string(x.size()) + " points but the exhaustive bound is " +
                                   std::to_string(bound) + " (--max-exhaustive, at most " +
                                   std::to_string(kHardMaxOraclePoints) + ")");
  return brute_force_oracle(x, bound);
}

// Cross-checks between independent routes on a ring.
inline std::vector<OracleCheck> ring_checks(const FiniteRing& ring, const RingSpectrum& spec) {
  std::vector<OracleCheck> out;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    out.push_back({std::move(name), ok, std::nullopt, ok ? std::string() : std::move(detail)});
  };
  const PierceSpace sp = pierce_spectrum(ring);
  const auto conn = connected_components(spec.poset);
  const auto via_pierce = components_via_pierce(spec, sp);
  const auto fibers = psi_fibers(ring, spec, sp);
  add("components_three_way", conn == via_pierce && conn == fibers, "connected components, V(J) blocks and psi fibers differ");

  const auto idem = idempotents(ring);
  std::set<std::uint64_t> images;
  for (Element e : idem) images.insert(clopen_from_idempotent(ring, spec, e).bits());
  std::set<std::uint64_t> clopens;
  if (conn.size() <= kMaxClopenComponents)
    for (auto s : clopen_sets(spec.poset)) clopens.insert(s.bits());
  add("clopen_bijection", images.size() == idem.size() && images == clopens, "e -> V(e) is not a bijection onto clopens");
  add("connected_iff_trivial_idempotents", (conn.size() == 1) == (idem.size() == 2),
      "connectedness and idempotent count disagree");
  add("condition_vi_all_families", condition_vi_all_families(ring, spec), "a family of primes violates the intersection condition");

  if (ring.size() <= kMaxRegularOracleSize) {
    auto enumerated = max_regular_ideals_by_enumeration(ring);
    bool same = enumerated.size() == sp.points.size();
    for (std::size_t i = 0; same && i < enumerated.size(); ++i) same = enumerated[i] == sp.points[i].ideal;
    add("max_regular_atoms_match_enumeration", same, "atom route and enumeration disagree");
    bool agree = true;
    for (const auto& ideal : ideal_lattice(ring)) {
      if (!ideal.is_proper() || !is_regular(ideal)) continue;
      bool maximal = std::find(enumerated.begin(), enumerated.end(), ideal) != enumerated.end();
      if (is_max_regular(ring, ideal) != maximal) agree = false;
    }
    add("is_max_regular_agrees_with_enumeration", agree, "quotient-idempotent test disagrees with maximality");
  }
  return out;
}

inline void add_oracle(json& out, Report& report, const std::vector<OracleCheck>& checks) {
  json arr = json::array();
  json failed = json::array();
  bool passed = true;
  for (const auto& c : checks) {
    arr.push_back(check_json(c));
    if (!c.passed) {
      passed = false;
      failed.push_back(c.name);
    }
  }
  out["oracle"] = {{"passed", passed}, {"checks", arr}};
  out["summary"] = {{"oracle_passed", passed}, {"failed_checks", failed}};
  if (!passed) report.oracle_failed = true;
}

inline void require_known(const std::vector<std::string>& sections, const std::set<std::string>& known, const char* subject) {
  if (sections.empty()) fail(ErrorKind::InvalidParameter, "no report sections requested");
  for (const auto& s : sections)
    if (!known.count(s)) fail(ErrorKind::InvalidParameter, "section '" + s + "' is not available for " + subject + " subjects");
}

inline bool wants(const std::vector<std::string>& sections, const char* name) {
  return std::find(sections.begin(), sections.end(), name) != sections.end();
}

inline json poset_noetherian() { return {{"finite", true}, {"flat", true}, {"zariski", true}}; }

inline void ring_report(const RingSubject& subj, const ReportRequest& req, Report& report) {
  const auto& secs = req.sections;
  require_known(secs, {"primes", "idempotents", "pierce", "components", "topology", "dual", "oracle", "noetherian"}, "ring");
  json& out = report.json;
  const FiniteRing& ring = subj.ring;
  out["subject"] = {{"kind", "ring"}, {"input", subj.input}, {"description", render_ring(ring)}, {"size", ring.size()}};
  const RingSpectrum spec = ring_spectrum(ring);
  out["points"] = spec.poset.labels();

  if (wants(secs, "primes")) {
    json arr = json::array();
    for (const auto& p : spec.primes)
      arr.push_back({{"label", ideal_label(p.ideal)}, {"members", to_json(p.ideal.members())}, {"generators", minimal_generators(p.ideal)}});
    out["primes"] = arr;
  }
  if (wants(secs, "idempotents")) out["idempotents"] = idempotents(ring);
  if (wants(secs, "pierce")) {
    PierceSpace sp = pierce_spectrum(ring);
    json pts = json::array(), labels = json::array();
    for (const auto& j : sp.points) {
      pts.push_back(to_json(j.ideal.members()));
      labels.push_back(ideal_label(j.ideal));
    }
    out["pierce"] = {{"points", pts}, {"point_labels", labels}, {"atoms", sp.atoms}, {"components", to_json(components_via_pierce(spec, sp))}};
  }
  if (wants(secs, "components")) out["components"] = components_section(spec.poset);
  if (wants(secs, "topology")) out["topology"] = topology_section(spec.poset, req.max_exhaustive);
  if (wants(secs, "dual")) out["dual"] = dual_section(spec.poset, req.max_exhaustive);
  if (wants(secs, "noetherian")) {
    json n = poset_noetherian();
    n["condition_vi_all_families"] = condition_vi_all_families(ring, spec);
    out["noetherian"] = n;
  }
  if (wants(secs, "oracle")) {
    auto checks = poset_oracle_or_throw(spec.poset, req.max_exhaustive).checks;
    for (auto& c : ring_checks(ring, spec)) checks.push_back(std::move(c));
    add_oracle(out, report, checks);
  }
}

inline void poset_report(const PosetSubject& subj, const ReportRequest& req, Report& report) {
  const auto& secs = req.sections;
  require_known(secs, {"components", "topology", "dual", "oracle", "noetherian"}, "poset");
  json& out = report.json;
  const SpectralPoset& x = subj.poset;
  out["subject"] = {{"kind", "poset"}, {"source", subj.source}, {"size", x.size()}};
  out["points"] = x.labels();
  if (wants(secs, "components")) out["components"] = components_section(x);
  if (wants(secs, "topology")) out["topology"] = topology_section(x, req.max_exhaustive);
  if (wants(secs, "dual")) out["dual"] = dual_section(x, req.max_exhaustive);
  if (wants(secs, "noetherian")) out["noetherian"] = poset_noetherian();
  if (wants(secs, "oracle")) add_oracle(out, report, poset_oracle_or_throw(x, req.max_exhaustive).checks);
}

inline void symbolic_report(const SymbolicSubject& subj, const ReportRequest& req, Report& report) {
  using namespace symbolic;
  const SymbolicSpectrum& spec = subj.spectrum;
  const SymbolicQueries& q = req.symbolic;
  if (!q.closure && !q.components && !q.noetherian && !q.condition_vi)
    fail(ErrorKind::InvalidParameter, "no queries requested (use --closure, --components, --noetherian or --condition-vi)");
  json& out = report.json;
  json subject = {{"kind", spec.kind() == SpectrumKind::Integers ? "zspec" : "fpspec"}, {"spectrum", spec.name()}};
  if (spec.kind() == SpectrumKind::PolyOverFp) subject["characteristic"] = spec.characteristic();
  out["subject"] = subject;

  if (q.closure) {
    auto [view_text, set_text] = split_colon(*q.closure, "--closure");
    View view = parse_view(view_text);
    SymSet s = parse_sym_set(spec, set_text);
    out["closure"] = {{"view", to_string(view)},
                      {"input", sym_json(s)},
                      {"input_closed", sym_is_closed(view, s)},
                      {"result", sym_json(sym_closure(view, s))}};
  }
  if (q.components) {
    View view = parse_view(*q.components, false);
    ComponentFamily fam = sym_irreducible_components(spec, view);
    json mat = json::array();
    for (const auto& s : fam.materialize(q.limit)) mat.push_back(sym_json(s));
    out["components"] = {{"view", to_string(view)},
                         {"description", fam.description()},
                         {"limit", q.limit},
                         {"materialized", mat}};
  }
  if (q.noetherian) {
    NoetherianReport n = sym_noetherian(spec);
    out["noetherian"] = {{"flat", n.flat}, {"zariski", n.zariski}, {"both_noetherian_implies_finite", n.both_noetherian_implies_finite}};
    if (!n.both_noetherian_implies_finite) report.oracle_failed = true;
  }
  if (q.condition_vi) {
    auto [family_text, point_text] = split_colon(*q.condition_vi, "--condition-vi");
    SymSet family = parse_sym_set(spec, family_text);
    SymPoint p = parse_sym_point(spec, point_text);
    ConditionVi r = condition_vi_symbolic(family, p);
    json j = {{"family", sym_json(family)},
              {"point", render_sym_point(spec, p)},
              {"holds", r.holds},
              {"hypothesis", r.hypothesis},
              {"intersection_is_zero", r.intersection_is_zero}};
    if (!r.holds) j["witness"] = r.witness;
    out["condition_vi"] = j;
  }
}

}  // namespace report_detail

/// Runs the requested sections. Keys serialize sorted; sections that were
/// not requested are absent. Timing is included only when asked for.
inline Report run_report(const ReportRequest& request) {
  auto start = std::chrono::steady_clock::now();
  Report report;
  report.json["tool"] = {{"name", "spectra"}, {"version", kVersion}};
  std::visit(
      [&](const auto& subj) {
        using S = std::decay_t<decltype(subj)>;
        if constexpr (std::is_same_v<S, RingSubject>) report_detail::ring_report(subj, request, report);
        else if constexpr (std::is_same_v<S, PosetSubject>) report_detail::poset_report(subj, request, report);
        else report_detail::symbolic_report(subj, request, report);
      },
      request.subject);
  if (request.timing) {
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report.json["timing_ms"] = ms;
  }
  return report;
}

/// Splits a comma-separated section list, dropping empty items.
inline std::vector<std::string> split_sections(const std::string& csv) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t comma = csv.find(',', start);
    std::string item = csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace spectra
