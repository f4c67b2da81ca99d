#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "json.hpp"
#include "spectra/dot.hpp"
#include "spectra/ideal.hpp"
#include "spectra/parse.hpp"
#include "spectra/report.hpp"
#include "support/generators.hpp"

using namespace spectra;
using nlohmann::json;

namespace {

const std::string kData = SPECTRA_TEST_DATA;

struct Run {
  int status;
  std::string out;
};

// Runs the CLI through the shell; stderr is discarded.
Run cli(const std::string& args) {
  std::string cmd = std::string(SPECTRA_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "spectra_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::AxiomViolation;
}

bool same_ring(const FiniteRing& a, const FiniteRing& b) {
  return a.size() == b.size() && a.add_table() == b.add_table() && a.mul_table() == b.mul_table() && a.zero() == b.zero() &&
         a.one() == b.one();
}

}  // namespace

TEST(ParseRing, Examples) {
  auto z30 = parse_ring("zmod 30");
  EXPECT_EQ(z30.kind(), RingKind::ZMod);
  EXPECT_EQ(z30.size(), 30u);
  auto z6 = parse_ring("product zmod 2; zmod 3");
  EXPECT_EQ(z6.kind(), RingKind::Product);
  EXPECT_EQ(z6.size(), 6u);
  auto nested = parse_ring("product (product zmod 2; zmod 3); zmod 5");
  EXPECT_EQ(nested.size(), 30u);
  EXPECT_EQ(nested.factors().size(), 2u);
  EXPECT_EQ(parse_ring("polyquot 2 [1,1,1]").size(), 4u);
}

TEST(ParseRing, Tables) {
  auto f4 = parse_ring("table " + kData + "/f4.json");
  EXPECT_EQ(f4.size(), 4u);
  EXPECT_EQ(idempotents(f4).size(), 2u);
  auto inline_table = parse_ring("table " + slurp(kData + "/f4.json"));
  EXPECT_TRUE(same_ring(f4, inline_table));
  EXPECT_TRUE(same_ring(f4, parse_ring("polyquot 2 [1,1,1]")));
  EXPECT_EQ(kind_of([] { parse_ring("table /nonexistent/file.json"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_ring(R"(table {"size": 2, "zero": 0})"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_ring(R"(table {"size": 2, "zero": 0, "one": 0, "add": [[0,1],[1,0]], "mul": [[0,0],[0,0]]})"); }),
            ErrorKind::AxiomViolation);
}

TEST(ParseRing, ErrorsCarryPosition) {
  for (const char* bad : {"zmod", "zmod 6 extra", "product zmod 2;", "ring 5", "polyquot 2 [1,1", "(zmod 2"}) {
    try {
      parse_ring(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ParseError) << bad;
      EXPECT_NE(std::string(e.what()).find("column"), std::string::npos) << e.what();
    }
  }
  EXPECT_THROW(parse_ring("zmod 1"), Error);
}

TEST(ParseRing, RoundTrip) {
  std::vector<FiniteRing> corpus;
  for (std::uint32_t n = 2; n <= 60; ++n) corpus.push_back(make_zmod(n));
  for (auto& r : gen::poly_quotient_corpus(64)) corpus.push_back(r);
  corpus.push_back(make_product({make_zmod(2), make_zmod(3), make_zmod(5)}));
  corpus.push_back(make_product({make_product({make_zmod(4), make_zmod(3)}), make_poly_quotient(3, {2, 0, 1})}));
  corpus.push_back(parse_ring("table " + kData + "/f4.json"));
  for (const auto& r : corpus) {
    std::string text = render_ring(r);
    auto back = parse_ring(text);
    EXPECT_EQ(render_ring(back), text);
    EXPECT_EQ(back.kind(), r.kind()) << text;
    EXPECT_TRUE(same_ring(back, r)) << text;
  }
}

TEST(ParsePoset, Examples) {
  auto v = parse_poset_file(kData + "/v.poset");
  EXPECT_EQ(v.size(), 3u);
  EXPECT_EQ(v.labels(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(v.leq(0, 1) && v.leq(0, 2) && !v.leq(1, 2));
  EXPECT_EQ(parse_poset("a < b < c").covers().size(), 2u);
  EXPECT_EQ(parse_poset("# only a comment\n\n").size(), 0u);
}

TEST(ParsePoset, Errors) {
  EXPECT_EQ(kind_of([] { parse_poset_file(kData + "/cycle.poset"); }), ErrorKind::CycleDetected);
  EXPECT_EQ(kind_of([] { parse_poset_file(kData + "/cycle3.poset"); }), ErrorKind::CycleDetected);
  EXPECT_EQ(kind_of([] { parse_poset("a < a"); }), ErrorKind::CycleDetected);
  try {
    parse_poset_file(kData + "/bad.poset");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_EQ(kind_of([] { parse_poset("a <"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_poset("x y"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_poset("< b"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_poset_file(kData + "/missing.poset"); }), ErrorKind::ParseError);
}

TEST(ParsePoset, RoundTrip) {
  std::mt19937_64 rng(17);
  std::vector<SpectralPoset> corpus;
  for (std::size_t n = 0; n <= 4; ++n)
    for (const auto& rel : gen::all_labeled_posets(n)) corpus.push_back(make_poset(n, rel));
  for (int i = 0; i < 100; ++i) corpus.push_back(gen::random_poset(rng, 20));
  corpus.push_back(spec_poset(make_zmod(30)));
  for (const auto& x : corpus) EXPECT_TRUE(parse_poset(render_poset(x)) == x) << render_poset(x);
}

TEST(Dot, Examples) {
  auto chain = export_dot(parse_poset_file(kData + "/chain.poset"));
  EXPECT_NE(chain.find("n0 [label=\"0\""), std::string::npos);
  EXPECT_NE(chain.find("n1 [label=\"1\""), std::string::npos);
  EXPECT_NE(chain.find("n0 -> n1;"), std::string::npos);
  EXPECT_EQ(std::count(chain.begin(), chain.end(), '>'), 1);

  auto anti = export_dot(parse_poset_file(kData + "/antichain3.poset"));
  for (const char* c : {"cluster_0", "cluster_1", "cluster_2"}) EXPECT_NE(anti.find(c), std::string::npos);
  EXPECT_EQ(anti.find("->"), std::string::npos);

  auto z30 = export_dot(spec_poset(make_zmod(30)));
  for (const char* l : {"label=\"(2)\"", "label=\"(3)\"", "label=\"(5)\""}) EXPECT_NE(z30.find(l), std::string::npos);
  EXPECT_EQ(z30.find("->"), std::string::npos);
  EXPECT_NE(z30.find("cluster_2"), std::string::npos);
}

TEST(Dot, DualGraph) {
  DotOptions opts;
  opts.include_dual = true;
  auto text = export_dot(parse_poset_file(kData + "/chain.poset"), opts);
  EXPECT_NE(text.find("digraph \"spectrum_dual\""), std::string::npos);
  EXPECT_NE(text.find("n1 -> n0;"), std::string::npos);
}

TEST(Report, SectionsAndErrors) {
  ReportRequest req{RingSubject{"zmod 6", make_zmod(6)}, {"idempotents"}, 12, {}, false};
  auto r = run_report(req);
  EXPECT_EQ(r.json["idempotents"], json({0, 1, 3, 4}));
  EXPECT_FALSE(r.json.contains("timing_ms"));
  EXPECT_FALSE(r.json.contains("primes"));
  req.sections = {};
  EXPECT_EQ(kind_of([&] { run_report(req); }), ErrorKind::InvalidParameter);
  req.sections = {"closure"};
  EXPECT_EQ(kind_of([&] { run_report(req); }), ErrorKind::InvalidParameter);
  EXPECT_EQ(split_sections("a,b, c"), (std::vector<std::string>{"a", "b", "c"}));
}

TEST(Report, OracleOnRingPasses) {
  for (std::uint32_t n : {6u, 12u, 30u, 36u}) {
    ReportRequest req{RingSubject{"zmod", make_zmod(n)}, {"oracle"}, 12, {}, false};
    auto r = run_report(req);
    EXPECT_FALSE(r.oracle_failed) << n << r.json.dump(2);
    EXPECT_TRUE(r.json["summary"]["oracle_passed"].get<bool>());
  }
}

TEST(Report, OracleBoundIsNamed) {
  std::string text;
  for (int i = 0; i < 13; ++i) text += "p" + std::to_string(i) + "\n";
  ReportRequest req{PosetSubject{"x", parse_poset(text)}, {"oracle"}, 12, {}, false};
  try {
    run_report(req);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SizeBound);
    EXPECT_NE(std::string(e.what()).find("12"), std::string::npos) << e.what();
  }
  req.max_exhaustive = 13;
  EXPECT_FALSE(run_report(req).oracle_failed);
  req.max_exhaustive = 100;  // clamped, 13 is still under the hard maximum
  EXPECT_FALSE(run_report(req).oracle_failed);
}

TEST(Cli, RingZ6) {
  auto r = cli("ring \"zmod 6\" --report idempotents,pierce,components");
  ASSERT_EQ(r.status, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["idempotents"], json({0, 1, 3, 4}));
  EXPECT_EQ(j["pierce"]["points"].size(), 2u);
  EXPECT_EQ(j["components"]["connected"].size(), 2u);
  EXPECT_EQ(j["tool"]["version"], kVersion);
}

TEST(Cli, RingDescriptionMayBeSplitIntoWords) {
  EXPECT_EQ(cli("ring zmod 6 --report primes").out, cli("ring \"zmod 6\" --report primes").out);
}

TEST(Cli, PosetOracle) {
  auto r = cli("poset " + kData + "/v.poset --report oracle");
  EXPECT_EQ(r.status, 0);
  auto j = json::parse(r.out);
  EXPECT_TRUE(j["oracle"]["passed"].get<bool>());
  for (const auto& c : j["oracle"]["checks"]) EXPECT_TRUE(c["passed"].get<bool>()) << c.dump();
}

TEST(Cli, ZspecNoetherian) {
  auto r = cli("zspec --noetherian");
  ASSERT_EQ(r.status, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["noetherian"], json::parse(R"({"flat": false, "zariski": true, "both_noetherian_implies_finite": true})"));
}

TEST(Cli, SymbolicQueries) {
  auto r = cli("zspec --closure 'flat:{2,3}' --components flat --limit 3 --condition-vi all-primes:generic");
  ASSERT_EQ(r.status, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["closure"]["result"]["text"], "{2,3}+generic");
  ASSERT_EQ(j["components"]["materialized"].size(), 3u);
  EXPECT_EQ(j["components"]["materialized"][2]["text"], "{5}+generic");
  EXPECT_FALSE(j["condition_vi"]["holds"].get<bool>());
  auto f = json::parse(cli("fpspec 2 --components flat --limit 2").out);
  EXPECT_EQ(f["components"]["materialized"][1]["text"], "{x+1}+generic");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("--version").status, 0);
  EXPECT_EQ(cli("--help").status, 0);
  EXPECT_EQ(cli("").status, 2);
  EXPECT_EQ(cli("ring zmod 6").status, 2);  // --report is required
  EXPECT_EQ(cli("ring zmod 6 --report bogus").status, 2);
  EXPECT_EQ(cli("ring zmod --report primes").status, 2);
  EXPECT_EQ(cli("poset " + kData + "/cycle.poset --report topology").status, 2);
  EXPECT_EQ(cli("fpspec 4 --noetherian").status, 2);
  EXPECT_EQ(cli("zspec --closure 'sideways:{2}'").status, 2);

  auto big = scratch("antichain13.poset");
  std::ofstream(big) << "a\nb\nc\nd\ne\nf\ng\nh\ni\nj\nk\nl\nm\n";
  EXPECT_EQ(cli("poset " + big.string() + " --report oracle").status, 3);
  EXPECT_EQ(cli("poset " + big.string() + " --report oracle --max-exhaustive 13").status, 0);
  EXPECT_EQ(cli("ring zmod 5000 --report primes").status, 3);
}

TEST(Cli, OutputFiles) {
  auto out = scratch("z30.json"), dot = scratch("z30.dot");
  std::filesystem::remove(out);
  std::filesystem::remove(dot);
  auto r = cli("ring zmod 30 --report primes --json " + out.string() + " --dot " + dot.string() + " --dot-dual");
  ASSERT_EQ(r.status, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(json::parse(slurp(out))["primes"].size(), 3u);
  auto d = slurp(dot);
  EXPECT_NE(d.find("label=\"(5)\""), std::string::npos);
  EXPECT_NE(d.find("spectrum_dual"), std::string::npos);
}

TEST(Cli, Deterministic) {
  for (const std::string& args : std::vector<std::string>{"ring zmod 30 --report primes,idempotents,pierce,components,topology,dual,oracle,noetherian",
                                 "poset " + kData + "/v.poset --report components,topology,dual,oracle,noetherian",
                                 std::string("zspec --noetherian --closure 'zariski:{generic}' --components flat")}) {
    auto a = cli(args), b = cli(args);
    EXPECT_EQ(a.status, 0) << args;
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST(Cli, TimingIsOptIn) {
  auto j = json::parse(cli("ring zmod 6 --report primes --timing").out);
  EXPECT_TRUE(j.contains("timing_ms"));
  EXPECT_FALSE(json::parse(cli("ring zmod 6 --report primes").out).contains("timing_ms"));
}
