// spectra: command-line front end.
//
//   spectra ring <desc> --report <csv> [--json out] [--dot out] [--dot-dual] [--max-exhaustive N]
//   spectra poset <file> --report <csv> [--json out] [--dot out] [--dot-dual] [--max-exhaustive N]
//   spectra zspec [--closure view:set] [--components view --limit N] [--noetherian] [--condition-vi family:point]
//   spectra fpspec <p> ...same flags as zspec
//
// Exit codes: 0 ok, 1 oracle failure, 2 usage or parse error, 3 size bound.

#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spectra/dot.hpp"
#include "spectra/parse.hpp"
#include "spectra/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOracle = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSize = 3;

struct Options {
  std::vector<std::string> ring_words;
  std::string poset_path;
  std::uint32_t fp = 0;
  std::string report;
  std::string json_out;
  std::string dot_out;
  bool dot_dual = false;
  std::size_t max_exhaustive = spectra::kMaxOraclePoints;
  bool timing = false;
  spectra::SymbolicQueries sym;
  std::string closure, components, condition_vi;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

std::string join(const std::vector<std::string>& words) {
  std::string s;
  for (const auto& w : words) s += (s.empty() ? "" : " ") + w;
  return s;
}

void add_output_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--json", o.json_out, "Write the JSON report to this file instead of stdout");
  cmd->add_flag("--timing", o.timing, "Include wall-clock timing in the report");
}

void add_finite_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--report", o.report, "Comma-separated sections")->required();
  cmd->add_option("--dot", o.dot_out, "Write the Hasse diagram as Graphviz DOT");
  cmd->add_flag("--dot-dual", o.dot_dual, "Append the Hochster dual's diagram to the DOT output");
  cmd->add_option("--max-exhaustive", o.max_exhaustive, "Exhaustive oracle bound (clamped to 16)");
  add_output_flags(cmd, o);
}

void add_symbolic_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--closure", o.closure, "view:set, e.g. flat:{2,3}");
  cmd->add_option("--components", o.components, "Irreducible components of a view (flat or zariski)");
  cmd->add_option("--limit", o.sym.limit, "How many flat components to materialize");
  cmd->add_flag("--noetherian", o.sym.noetherian, "Decide noetherianity of each view");
  cmd->add_option("--condition-vi", o.condition_vi, "family:point, e.g. all-primes:generic");
  add_output_flags(cmd, o);
}

int run(const spectra::ReportRequest& request, const Options& o, const spectra::SpectralPoset* poset) {
  spectra::Report report = spectra::run_report(request);
  std::string text = report.json.dump(2) + "\n";
  if (o.json_out.empty()) std::cout << text;
  else write_file(o.json_out, text);
  if (poset && !o.dot_out.empty()) {
    spectra::DotOptions dot;
    dot.include_dual = o.dot_dual;
    write_file(o.dot_out, spectra::export_dot(*poset, dot));
  }
  return report.oracle_failed ? kExitOracle : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zariski, flat and patch topologies on prime spectra"};
  app.set_version_flag("--version", spectra::kVersion);
  app.require_subcommand(1);
  Options o;

  auto* ring = app.add_subcommand("ring", "Report on a finite ring");
  ring->add_option("desc", o.ring_words, "Ring description, e.g. \"zmod 30\"")->required();
  add_finite_flags(ring, o);

  auto* poset = app.add_subcommand("poset", "Report on a finite poset file");
  poset->add_option("file", o.poset_path, "Poset file (lines of the form a < b)")->required();
  add_finite_flags(poset, o);

  auto* zspec = app.add_subcommand("zspec", "Spec of the integers");
  add_symbolic_flags(zspec, o);

  auto* fpspec = app.add_subcommand("fpspec", "Spec of F_p[x]");
  fpspec->add_option("p", o.fp, "Prime characteristic")->required();
  add_symbolic_flags(fpspec, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    spectra::ReportRequest request{spectra::SymbolicSubject{spectra::symbolic::SymbolicSpectrum::integers()}, {}, o.max_exhaustive, {}, o.timing};
    std::optional<spectra::SpectralPoset> diagram;
    if (ring->parsed()) {
      std::string desc = join(o.ring_words);
      spectra::FiniteRing r = spectra::parse_ring(desc);
      request.subject = spectra::RingSubject{desc, r};
      request.sections = spectra::split_sections(o.report);
      if (!o.dot_out.empty()) diagram = spectra::spec_poset(r);
    } else if (poset->parsed()) {
      spectra::SpectralPoset x = spectra::parse_poset_file(o.poset_path);
      request.subject = spectra::PosetSubject{o.poset_path, x};
      request.sections = spectra::split_sections(o.report);
      diagram = x;
    } else {
      if (fpspec->parsed()) request.subject = spectra::SymbolicSubject{spectra::symbolic::SymbolicSpectrum::poly_over_fp(o.fp)};
      request.symbolic = o.sym;
      if (!o.closure.empty()) request.symbolic.closure = o.closure;
      if (!o.components.empty()) request.symbolic.components = o.components;
      if (!o.condition_vi.empty()) request.symbolic.condition_vi = o.condition_vi;
    }
    return run(request, o, diagram ? &*diagram : nullptr);
  } catch (const spectra::Error& e) {
    std::cerr << "spectra: " << e.what() << "\n";
    return e.kind() == spectra::ErrorKind::SizeBound ? kExitSize : kExitUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "spectra: internal check failed: " << e.what() << "\n";
    return kExitOracle;
  } catch (const std::exception& e) {
    std::cerr << "spectra: " << e.what() << "\n";
    return kExitUsage;
  }
}
