#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "fixtures.hpp"
#include "spdi/error.hpp"
#include "spdi/explorer.hpp"
#include "spdi/generator.hpp"
#include "spdi/io.hpp"

using namespace spdi;

namespace {

void check_same(const Spdi& a, const Spdi& b) {
  REQUIRE(a.vertices().size() == b.vertices().size());
  for (std::size_t i = 0; i < a.vertices().size(); ++i) {
    CHECK(a.vertices()[i].id == b.vertices()[i].id);
    CHECK(a.vertices()[i].p.x == b.vertices()[i].p.x);
    CHECK(a.vertices()[i].p.y == b.vertices()[i].p.y);
  }
  REQUIRE(a.regions().size() == b.regions().size());
  for (std::size_t i = 0; i < a.regions().size(); ++i) {
    const Region& x = a.regions()[i];
    const Region& y = b.regions()[i];
    CHECK(x.id == y.id);
    CHECK(x.vertex_ids == y.vertex_ids);
    CHECK(x.dyn_l.dx == y.dyn_l.dx);
    CHECK(x.dyn_l.dy == y.dyn_l.dy);
    CHECK(x.dyn_r.dx == y.dyn_r.dx);
    CHECK(x.dyn_r.dy == y.dyn_r.dy);
  }
  REQUIRE(a.edges().size() == b.edges().size());
  for (std::size_t i = 0; i < a.edges().size(); ++i) CHECK(a.edges()[i].name == b.edges()[i].name);
}

std::size_t error_line(const std::string& text) {
  try {
    parse_spdi(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

const char* kSquare =
    "spdi v1\n"
    "# unit square\n"
    "vertex 1 0 0\n"
    "vertex 2 1 0\n"
    "vertex 3 1 1\n"
    "vertex 4 0 1\n"
    "region 1 vertices 1 2 3 4 l 1 0.5 r 1 -0.5\n";

}  // namespace

TEST_CASE("numbers round-trip through 17 digits") {
  for (double x : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 1e-300, 123456789.123456789, std::nextafter(1.0, 2.0)}) {
    std::string s = format_number(x);
    CHECK(std::stod(s) == x);
  }
}

TEST_CASE("spdi round-trip") {
  SUBCASE("hcorridor") {
    Spdi h = fixtures::hcorridor();
    std::string text = write_spdi(h);
    Spdi back = parse_spdi(text);
    check_same(h, back);
    CHECK(write_spdi(back) == text);
  }
  SUBCASE("generated") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      Spdi g = generate_spdi({5 + seed % 20, seed});
      std::string text = write_spdi(g);
      Spdi back = parse_spdi(text);
      check_same(g, back);
      CHECK(write_spdi(back) == text);
    }
  }
  SUBCASE("comments and blank lines") {
    Spdi s = parse_spdi(std::string(kSquare) + "\n   \n# trailing\n");
    CHECK(s.regions().size() == 1);
    CHECK(s.find_edge("e1_2").has_value());
  }
}

TEST_CASE("spdi parse errors") {
  CHECK(error_line("vertex 1 0 0\n") == 1);
  CHECK(error_line("") == 1);
  CHECK(error_line("task v1\n") == 1);

  std::string bad_vertex = std::string(kSquare) + "region 2 vertices 1 2 99 l 1 0 r 1 0\n";
  CHECK(error_line(bad_vertex) == 8);
  try {
    parse_spdi(bad_vertex);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("region 2") != std::string::npos);
    CHECK(std::string(e.what()).find("99") != std::string::npos);
  }

  std::string cw =
      "spdi v1\nvertex 1 0 0\nvertex 2 1 0\nvertex 3 1 1\nregion 1 vertices 1 3 2 l 1 0 r 1 0\n";
  CHECK(error_line(cw) == 5);

  std::string dup = std::string(kSquare) + "region 1 vertices 1 2 3 l 1 0 r 1 0\n";
  CHECK(error_line(dup) == 8);
}

TEST_CASE("fuzzed spdi text never crashes and errors carry a line") {
  const std::string base = write_spdi(generate_spdi({8, 3}));
  std::vector<std::string> lines;
  std::istringstream in(base);
  for (std::string l; std::getline(in, l);) lines.push_back(l);

  SeededRng rng(17);
  int rejected = 0;
  for (int i = 0; i < 400; ++i) {
    std::vector<std::string> m = lines;
    std::size_t k = 1 + rng.below(m.size() - 1);
    switch (rng.below(5)) {
      case 0:
        m[k] = m[k].substr(0, rng.below(m[k].size()));
        break;
      case 1: {
        auto pos = m[k].rfind(' ');
        m[k] = m[k].substr(0, pos + 1) + (rng.below(2) ? "nan" : "inf");
        break;
      }
      case 2:
        m.insert(m.begin() + static_cast<std::ptrdiff_t>(k), m[k]);
        break;
      case 3:
        m[k] += " extra";
        break;
      default:
        m[k] = "bogus " + m[k];
        break;
    }
    std::string text;
    for (const auto& l : m) text += l + "\n";
    try {
      parse_spdi(text);
    } catch (const ParseError& e) {
      ++rejected;
      CHECK(e.line() >= 1);
      CHECK(e.line() <= m.size());
    }
  }
  CHECK(rejected > 300);
}

TEST_CASE("task round-trip and errors") {
  Spdi h = fixtures::hcorridor();
  ReachTask t{{{fixtures::edge(h, "e1_4"), 0.1, 0.25}}, {{fixtures::edge(h, "e3_6"), 0.5, 1.0}}};
  std::string text = write_task(h, t);
  CHECK(text == "task v1\nstart e1_4 0.10000000000000001 0.25\nfinal e3_6 0.5 1\n");
  ReachTask back = parse_task(text, h);
  CHECK(back.start == t.start);
  CHECK(back.final == t.final);

  CHECK_THROWS_AS(parse_task("task v1\nstart e1_4 0.9 0.2\nfinal e3_6 0 1\n", h), ParseError);
  CHECK_THROWS_AS(parse_task("task v1\nstart e1_4 0.1 0.2\n", h), ParseError);
  CHECK_THROWS_AS(parse_task("task v1\nfinal e1_4 0.1 0.2\n", h), ParseError);
  CHECK_THROWS_AS(parse_task("task v1\nstart e9_9 0.1 0.2\nfinal e3_6 0 1\n", h), ParseError);
  CHECK_THROWS_AS(parse_task("task v1\nstart e1_4 -0.1 0.2\nfinal e3_6 0 1\n", h), ParseError);
  CHECK_THROWS_AS(parse_task("task v1\nstart e1_4 0.1 1.5\nfinal e3_6 0 1\n", h), ParseError);
  CHECK_THROWS_AS(parse_task("task v1\nstart e1_4 nan 0.5\nfinal e3_6 0 1\n", h), ParseError);
  CHECK_THROWS_AS(parse_task("spdi v1\n", h), ParseError);
}

TEST_CASE("generated task files round-trip byte for byte") {
  Spdi g = generate_spdi({30, 4});
  SeededRng rng(8);
  for (const ReachTask& t : generate_tasks(g, 100, rng)) {
    std::string text = write_task(g, t);
    CHECK(write_task(g, parse_task(text, g)) == text);
  }
}

TEST_CASE("witness text") {
  SUBCASE("overlap gives a single hit line") {
    Spdi h = fixtures::hcorridor();
    EdgeId left = fixtures::edge(h, "e1_4");
    ReachResult r = solve_sequential(h, {{{left, 0.25, 0.5}}, {{left, 0.375, 0.75}}});
    CHECK(write_witness(h, r) == "hit e1_4 [0.375,0.5]\n");
  }
  SUBCASE("hcorridor path") {
    Spdi h = fixtures::hcorridor();
    ReachTask task{{{fixtures::edge(h, "e1_4"), 0.25, 0.5}}, {{fixtures::edge(h, "e3_6"), 0.375, 0.75}}};
    ReachResult r = solve_sequential(h, task);
    std::string text = write_witness(h, r);
    CHECK(text ==
          "edge e1_4 [0.25,0.5]\n"
          "edge e2_5 [0.25,0.5]\n"
          "edge e3_6 [0.25,0.5]\n"
          "hit e3_6 [0.375,0.5]\n");
    CHECK(parse_witness(text, h) == *r.witness);
  }
  SUBCASE("spinbox cycle block") {
    Spdi s = fixtures::spinbox();
    ReachTask task{{{fixtures::edge(s, "e1_2"), 0.1, 0.2}}, {{fixtures::edge(s, "e1_5"), 0.95, 0.96}}};
    ReachResult r = solve_sequential(s, task);
    REQUIRE(r.verdict == Verdict::kReachable);
    std::string text = write_witness(s, r);
    CHECK(text.find("cycle{\n") != std::string::npos);
    CHECK(text.find("  type=") != std::string::npos);
    CHECK(text.find("\n}\n") != std::string::npos);
    CHECK(parse_witness(text, s) == *r.witness);
    CHECK(write_witness(s, parse_witness(text, s)) == text);
  }
  SUBCASE("unreachable results have no witness") {
    Spdi h = fixtures::hcorridor();
    ReachTask task{{{fixtures::edge(h, "e3_6"), 0.1, 0.9}}, {{fixtures::edge(h, "e1_4"), 0.1, 0.9}}};
    ReachResult r = solve_sequential(h, task);
    CHECK_THROWS_AS(write_witness(h, r), Error);
  }
  SUBCASE("malformed witnesses") {
    Spdi h = fixtures::hcorridor();
    CHECK_THROWS_AS(parse_witness("edge e1_4 [0,1]\n", h), ParseError);
    CHECK_THROWS_AS(parse_witness("cycle{\n  edge e1_4 [0,1]\nhit e1_4 [0,1]\n", h), ParseError);
    CHECK_THROWS_AS(parse_witness("cycle{\n  type=SPIN\n}\nhit e1_4 [0,1]\n", h), ParseError);
    CHECK_THROWS_AS(parse_witness("hit e1_4 [0,1]\nedge e1_4 [0,1]\n", h), ParseError);
    CHECK_THROWS_AS(parse_witness("hit e1_4 [0.5,0.1]\n", h), ParseError);
  }
}

TEST_CASE("files") {
  auto dir = std::filesystem::temp_directory_path() / "spdi_io_test";
  std::filesystem::create_directories(dir);
  std::string path = (dir / "a.spdi").string();
  write_file(path, kSquare);
  CHECK(read_file(path) == kSquare);
  write_file(path, "spdi v1\n");
  CHECK(read_file(path) == "spdi v1\n");
  CHECK_THROWS_AS(read_file((dir / "missing.spdi").string()), IoError);
  CHECK_THROWS_AS(write_file((dir / "no/such/dir/x").string(), "x"), IoError);
  std::filesystem::remove_all(dir);
}
