#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "fixtures.hpp"
#include "spdi/io.hpp"

using namespace spdi;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(SPDI_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("spdi_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("validate") {
  TempDir d;
  write_file(d / "h.spdi", write_spdi(fixtures::hcorridor()));
  CHECK(run("validate " + (d / "h.spdi")).code == 0);

  write_file(d / "bad.spdi", "vertex 1 0 0\n");
  Run bad = run("validate " + (d / "bad.spdi"));
  CHECK(bad.code == 2);
  CHECK(bad.out.find("line 1") != std::string::npos);

  CHECK(run("validate " + (d / "missing.spdi")).code == 2);
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
}

TEST_CASE("solve exit codes and witness") {
  TempDir d;
  write_file(d / "h.spdi", write_spdi(fixtures::hcorridor()));
  write_file(d / "yes.task", "task v1\nstart e1_4 0.25 0.5\nfinal e3_6 0.375 0.75\n");
  write_file(d / "no.task", "task v1\nstart e3_6 0.1 0.9\nfinal e1_4 0.1 0.9\n");

  for (std::string mode : {"--seq", "--threads 1", "--threads 4"}) {
    Run yes = run("solve " + (d / "h.spdi") + " " + (d / "yes.task") + " " + mode + " --witness " +
                  (d / "w.txt"));
    CHECK(yes.code == 0);
    CHECK(yes.out.find("REACHABLE") != std::string::npos);
    CHECK(read_file(d / "w.txt") ==
          "edge e1_4 [0.25,0.5]\nedge e2_5 [0.25,0.5]\nedge e3_6 [0.25,0.5]\nhit e3_6 [0.375,0.5]\n");

    Run no = run("solve " + (d / "h.spdi") + " " + (d / "no.task") + " " + mode);
    CHECK(no.code == 1);
    CHECK(no.out.find("UNREACHABLE") != std::string::npos);
  }

  write_file(d / "bad.task", "task v1\nstart e1_4 0.9 0.2\nfinal e3_6 0 1\n");
  CHECK(run("solve " + (d / "h.spdi") + " " + (d / "bad.task")).code == 2);
}

TEST_CASE("gen, gen-tasks, bench and plot") {
  TempDir d;
  REQUIRE(run("gen --regions 15 --seed 3 -o " + (d / "a.spdi")).code == 0);
  REQUIRE(run("gen --regions 15 --seed 3 -o " + (d / "b.spdi")).code == 0);
  CHECK(read_file(d / "a.spdi") == read_file(d / "b.spdi"));
  CHECK(run("validate " + (d / "a.spdi")).code == 0);

  REQUIRE(run("gen-tasks --spdi " + (d / "a.spdi") + " --count 100 --seed 4 -o " + (d / "t.task")).code == 0);
  std::string tasks = read_file(d / "t.task");
  std::size_t headers = 0;
  for (auto p = tasks.find("task v1\n"); p != std::string::npos; p = tasks.find("task v1\n", p + 1)) ++headers;
  CHECK(headers == 100);

  Run b = run("bench --spdi " + (d / "a.spdi") + " --tasks " + (d / "t.task") +
              " --threads 1,2 --timeout 5 --csv " + (d / "r.csv") + " --name demo");
  CHECK(b.code == 0);
  CHECK(b.out.find("Absolute testing time, mean value (s)") != std::string::npos);
  CHECK(b.out.find("Relative speed-up") != std::string::npos);
  CHECK(b.out.find("demo") != std::string::npos);
  CHECK(read_file(d / "r.csv").find("demo,2,") != std::string::npos);

  Run range = run("bench --spdi " + (d / "a.spdi") + " --tasks " + (d / "t.task") + " --threads 1-3");
  CHECK(range.code == 0);
  CHECK(run("bench --spdi " + (d / "a.spdi") + " --tasks " + (d / "t.task") + " --threads 0,x").code == 2);

  write_file(d / "one.task", tasks.substr(0, tasks.find("task v1\n", 1)));
  Run s = run("solve " + (d / "a.spdi") + " " + (d / "one.task") + " --witness " + (d / "w.txt"));
  CHECK((s.code == 0 || s.code == 1));
  std::string plot_args = "plot --spdi " + (d / "a.spdi") + " --task " + (d / "one.task");
  if (s.code == 0) plot_args += " --witness " + (d / "w.txt");
  CHECK(run(plot_args + " -o " + (d / "p.svg")).code == 0);
  CHECK(read_file(d / "p.svg").rfind("<svg", 0) == 0);

  write_file(d / "badw.txt", "edge e999_1000 [0,1]\nhit e999_1000 [0,1]\n");
  CHECK(run("plot --spdi " + (d / "a.spdi") + " --witness " + (d / "badw.txt") + " -o " + (d / "q.svg")).code == 2);
  CHECK_FALSE(fs::exists(d / "q.svg"));
}
