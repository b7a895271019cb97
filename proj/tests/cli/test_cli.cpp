// Runs the command-line tool as a subprocess.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../solver.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr merged into stdout when `merge` is set.
Result run(const std::string &args, bool merge = false) {
  std::string cmd = std::string(CPNASP_CLI) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
  Result r;
  auto out = testing::run_capture(cmd, &r.code);
  REQUIRE(out.has_value());
  r.out = *out;
  return r;
}

std::string net(const std::string &name) { return std::string(CPNASP_NETS_DIR) + "/" + name; }

std::size_t count_of(const std::string &hay, const std::string &needle) {
  std::size_t n = 0;
  for (auto at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1))
    ++n;
  return n;
}

std::size_t lines(const std::string &s) { return count_of(s, "\n"); }

std::string slurp(const fs::path &p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("cpnasp_cli_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string &name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("simulate") {
  auto all = run("simulate " + net("fig1.cpn") + " --steps 5 --semantics max --limit all");
  CHECK(all.code == 0);
  CHECK(count_of(all.out, "Answer:") == 4);
  CHECK(all.out.find("SATISFIABLE") != std::string::npos);

  auto count = run("simulate " + net("fig1.cpn") + " --steps 5 --semantics max --count-only");
  CHECK(count.code == 0);
  CHECK(count.out == "4\n");

  auto one = run("simulate " + net("fig1.cpn") + " -k 5");
  CHECK(count_of(one.out, "Answer:") == 1);

  auto json = run("simulate " + net("fig1.cpn") + " -k 2 --format json --limit all");
  CHECK(json.code == 0);
  CHECK(json.out.front() == '{');

  auto waypoints = run("simulate " + net("fig1.cpn") + " -k 5 --count-only --constraints " +
                       net("fig1-waypoints.cns"));
  CHECK(waypoints.out == "2\n");

  auto set = run("simulate " + net("sec2-marking.cpn") + " -k 0 --semantics set --count-only");
  CHECK(set.out == "5\n");
}

TEST_CASE("the printed run appears verbatim modulo atom order") {
  auto all = run("simulate " + net("fig1.cpn") + " -k 5 --limit all");
  REQUIRE(all.code == 0);
  auto third = all.out.substr(all.out.find("Answer: 3"));
  third = third.substr(0, third.find("Answer: 4"));
  for (const char *atom :
       {"fires(t10;t12,0)", "fires(t1;t10;t12,1)", "fires(t1;t3;t10;t12,2)",
        "fires(t1;t3;t4;t10;t12,3)", "fires(t3;t4;t10;t12,4)", "fires(t1;t10;t12,5)",
        "holds(is,1,o2,1)", "holds(mm,10,h,2)", "holds(q,2,e,2)", "holds(cytc,2,e,3)",
        "holds(is,1,h2o,4)", "holds(mm,8,h,4)", "holds(is,16,h,5)", "holds(mm,6,nadp,5)",
        "holds(mm,4,nadh,5)", "holds(is,2,h2o,5)"})
    CHECK_MESSAGE(third.find(atom) != std::string::npos, atom);
}

TEST_CASE("input errors exit 2") {
  auto missing = run("simulate /nonexistent/x.cpn", true);
  CHECK(missing.code == 2);
  CHECK(missing.out.find("cannot open") != std::string::npos);

  TempDir tmp;
  std::ofstream(tmp.file("bad.cpn")) << "net b { colors c; places p; transition t { in q: c/1; } }";
  auto bad = run("simulate " + tmp.file("bad.cpn"), true);
  CHECK(bad.code == 2);
  CHECK(bad.out.find("UNKNOWN_PLACE") != std::string::npos);

  CHECK(run("simulate " + net("fig1.cpn") + " --semantics fancy").code == 2);
  CHECK(run("simulate " + net("fig1.cpn") + " --limit 0").code == 2);
  CHECK(run("bogus").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("emit-asp") {
  auto max = run("emit-asp " + net("fig1.cpn") + " --steps 5 --ntok 30 --semantics max");
  CHECK(max.code == 0);
  CHECK(max.out.find("time(0..5). num(0..30).") != std::string::npos);

  auto il = run("emit-asp " + net("fig1.cpn") + " --semantics interleaved");
  CHECK(il.out.find("more_than_one_fires") != std::string::npos);

  auto nr = run("emit-asp " + net("fig1.cpn") + " --nonreentrant", true);
  CHECK(nr.code == 0);
  CHECK(nr.out.find("warning") != std::string::npos);
  CHECK(nr.out.find("notenabled(T,TS1)") != std::string::npos);

  auto small = run("emit-asp " + net("fig1.cpn") + " --ntok 5", true);
  CHECK(small.code == 0);
  CHECK(small.out.find("--ntok") != std::string::npos);

  TempDir tmp;
  CHECK(run("emit-asp " + net("fig2.cpn") + " --dialect clingo5 -o " + tmp.file("p.lp")).code == 0);
  CHECK(slurp(tmp.file("p.lp")).find("#show fires/2.") != std::string::npos);
}

TEST_CASE("compare-asp") {
  TempDir tmp;
  auto all = run("simulate " + net("fig1.cpn") + " -k 5 --limit all");
  std::ofstream(tmp.file("good.txt")) << all.out;
  auto ok = run("compare-asp " + net("fig1.cpn") + " -k 5 --answers " + tmp.file("good.txt"));
  CHECK(ok.code == 0);
  CHECK(ok.out.find("matched: 4") != std::string::npos);

  std::ofstream(tmp.file("short.txt")) << all.out.substr(0, all.out.find("Answer: 2"));
  auto diff = run("compare-asp " + net("fig1.cpn") + " -k 5 --answers " + tmp.file("short.txt"));
  CHECK(diff.code == 3);
  CHECK(diff.out.find("native-only: 3") != std::string::npos);

  std::ofstream(tmp.file("junk.txt")) << "holds(mm,1,h\n";
  CHECK(run("compare-asp " + net("fig1.cpn") + " -k 5 --answers " + tmp.file("junk.txt")).code ==
        2);
}

TEST_CASE("trace") {
  auto one = run("trace " + net("fig1.cpn") +
                 " --steps 5 --semantics max --place is --color h --traj 0");
  CHECK(one.code == 0);
  CHECK(lines(one.out) == 7);
  CHECK(one.out.rfind("step,is.h\n", 0) == 0);

  CHECK(run("trace " + net("fig1.cpn") + " --place zz --color h --traj 0").code == 2);
  CHECK(run("trace " + net("fig1.cpn") + " --place is --color h --traj 9").code == 2);

  TempDir tmp;
  auto all = run("trace " + net("fig1.cpn") + " -k 5 --place is --color h --all -o " +
                 tmp.file("run"));
  CHECK(all.code == 0);
  for (int i = 0; i < 4; ++i)
    CHECK(fs::exists(tmp.file("run." + std::to_string(i) + ".csv")));
  CHECK_FALSE(fs::exists(tmp.file("run.4.csv")));
  CHECK(all.out.find("trajectories: 4") != std::string::npos);
  CHECK(all.out.find("min 16, max 16") != std::string::npos);
  CHECK(slurp(tmp.file("run.2.csv")) == "step,is.h\n0,0\n1,0\n2,2\n3,6\n4,12\n5,16\n");
}

TEST_CASE("efficiency and validate") {
  auto eff = run("efficiency " + net("fig2.cpn") + " -k 8 --place is --color h");
  CHECK(eff.code == 0);
  CHECK(eff.out.find("\n8,") != std::string::npos);

  CHECK(run("validate " + net("fig1.cpn")).out == "ok\n");
  auto rendered = run("validate " + net("fig2.cpn") + " --render -");
  CHECK(rendered.out.find("transition tq dur 2") != std::string::npos);
}

TEST_CASE("deterministic output") {
  std::string args = "simulate " + net("fig2.cpn") + " -k 6 --limit all --nonreentrant";
  CHECK(run(args).out == run(args).out);
}
