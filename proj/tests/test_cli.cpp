#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "logpic/fixtures.hpp"
#include "logpic/graph_zoo.hpp"
#include "logpic/io.hpp"
#include "logpic/log_curve.hpp"

using namespace logpic;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(LOGPIC_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

io::Json json(const Run& r) { return io::parse_text(r.out); }

const fs::path& dir() {
  static const fs::path d = [] {
    fs::path p = fs::temp_directory_path() / "logpic_cli_test";
    fs::remove_all(p);
    REQUIRE(run("fixtures --out " + p.string()).code == 0);
    return p;
  }();
  return d;
}

std::string fx(const std::string& name) { return (dir() / (name + ".json")).string(); }

std::string file(const std::string& name, const std::string& text) {
  const fs::path p = dir() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("fixtures are written bit-exactly and parse") {
  const fs::path again = fs::temp_directory_path() / "logpic_cli_test_again";
  fs::remove_all(again);
  REQUIRE(run("fixtures --out " + again.string()).code == 0);
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(again)) {
    ++count;
    CHECK(slurp(entry.path()) == slurp(dir() / entry.path().filename()));
  }
  CHECK(count == 16);
  for (const auto& [name, g] : graph_fixtures()) CHECK(io::graph_from_json(io::read_file(fx(name))).validation().ok());
  for (const auto& [name, c] : complex_fixtures()) CHECK(io::complex_from_json(io::read_file(fx(name))) == c);
  for (const auto& [name, x] : curve_fixtures())
    CHECK(same_curve_up_to_branch_order(io::curve_from_json(io::read_file(fx(name))), x));
  CHECK(slurp(fx("C3")) == io::dump(io::to_json(fixtures::c3())));
}

TEST_CASE("graph verbs") {
  const auto v1 = file("v1.json", R"({"v1":1})");
  const auto v2 = file("v2.json", R"({"v2":1})");
  const auto bad = file("bad.json", R"({"v1":1,"v9":2})");

  auto r = run("graph rank --divisor " + v1 + " " + fx("C3"));
  CHECK(r.code == 0);
  CHECK(json(r) == io::Json{{"rank", 0}});

  r = run("graph reduce --divisor " + v2 + " --base v1 " + fx("C3"));
  CHECK(r.code == 0);
  CHECK(json(r)["reduced"] == io::Json{{"v2", 1}});

  r = run("graph equiv --divisor " + v1 + " --divisor " + v2 + " " + fx("C3"));
  CHECK(json(r) == io::Json{{"equivalent", false}});

  r = run("graph jacobian " + fx("B3"));
  CHECK(json(r) == io::Json{{"invariants", {3}}, {"order", 3}});

  r = run("graph canonical " + fx("C3"));
  CHECK(json(r)["canonical"] == io::Json::object());

  r = run("graph rr-check " + fx("LOOP1"));
  CHECK(r.code == 0);
  CHECK(json(r)["violations"].empty());
  r = run("graph rr-check --naive-rank " + fx("LOOP1"));
  CHECK(r.code == 1);
  CHECK_FALSE(json(r)["violations"].empty());

  r = run("graph sweep --max-vertices 2 --max-edges 2");
  CHECK(r.code == 0);
  CHECK(json(r)["checked"].get<int>() > 0);

  CHECK(run("graph rank --divisor " + bad + " " + fx("C3")).code == 2);
  CHECK(run("graph ses-check " + fx("C3")).code == 2);
  CHECK(run("graph rank --divisor " + v1 + " " + file("broken.json", "{\"monoidRank\":")).code == 2);
}

TEST_CASE("complex verbs") {
  const auto p = file("p.json", R"({"v1":{"p":1}})");
  const auto q = file("q.json", R"({"v1":{"x1":1}})");
  const auto loop = fx("CPX-LOOP-RAT");

  auto r = run("complex rank --divisor " + p + " " + loop);
  CHECK(json(r) == io::Json{{"rank", 0}});
  r = run("complex rank --naive-rank --divisor " + p + " " + loop);
  CHECK(json(r) == io::Json{{"rank", 1}});

  r = run("complex reduce --divisor " + p + " " + loop);
  CHECK(json(r)["class"]["v1"]["degree"] == 1);

  r = run("complex equiv --divisor " + p + " --divisor " + q + " " + loop);
  CHECK(json(r) == io::Json{{"equivalent", true}});

  r = run("complex canonical " + fx("CPX-ELL5"));
  CHECK(json(r)["class"]["v1"]["degree"] == 0);

  r = run("complex tropicalize " + loop);
  CHECK(json(r)["graph"] == io::to_json(fixtures::loop1()));

  for (const char* verb : {"rr-check", "clifford", "roundtrip"}) {
    r = run(std::string("complex ") + verb + " " + fx("CPX-C3-RAT"));
    CHECK(r.code == 0);
    CHECK(json(r)["violations"].empty());
  }
  r = run("complex sweep --instances 5 --seed 3");
  CHECK(r.code == 0);

  auto dup = io::read_file(fx("CPX-B2-RAT"));
  dup["attach"]["e1b"] = dup["attach"]["e2b"];
  r = run("complex canonical " + file("dup.json", io::dump(dup)));
  CHECK(r.code == 2);
  CHECK(r.out.find("distinct") != std::string::npos);
}

TEST_CASE("curve verbs") {
  const auto one = file("b1.json", R"({"classes":{"v1":{"degree":1,"torsion":[]},"v2":{"degree":0,"torsion":[]}},"gluing":{}})");
  const auto xb2 = fx("X-B2");
  auto bundle = io::parse_text(slurp(one));
  bundle["gluing"] = {{"e1", 0}, {"e2", 0}};
  const auto l0 = file("l0.json", io::dump(bundle));
  bundle["gluing"]["e2"] = 1;
  const auto l1 = file("l1.json", io::dump(bundle));

  auto r = run("curve rank --bundle " + l0 + " " + xb2);
  CHECK(r.code == 0);
  CHECK(json(r) == io::Json{{"rank", 0}});

  r = run("curve reduce --bundle " + l1 + " --torus 3 " + xb2);
  CHECK(json(r)["tau"] == io::Json{{"v1", 1}});

  r = run("curve equiv --bundle " + l0 + " --bundle " + l1 + " --torus 3 " + xb2);
  CHECK(json(r) == io::Json{{"equivalent", false}});
  r = run("curve equiv --bundle " + l0 + " --bundle " + l1 + " --torus 1 " + xb2);
  CHECK(json(r) == io::Json{{"equivalent", true}});

  r = run("curve canonical " + xb2);
  CHECK(json(r)["bundle"]["classes"]["v1"]["degree"] == 0);

  r = run("curve tropicalize --bundle " + l0 + " " + xb2);
  CHECK(json(r)["tau"] == io::Json{{"v1", 1}});

  r = run("curve to-complex " + fx("X-NODALCUBIC"));
  CHECK(r.code == 0);
  const auto c = io::complex_from_json(json(r));
  CHECK(same_curve_up_to_branch_order(from_complex(c).curve, fixtures::x_nodalcubic()));

  r = run("curve ses-check " + xb2 + " --torus 3");
  CHECK(r.code == 0);
  CHECK(json(r) == io::Json{{"kernelOrder", 3}, {"expected", 3}});

  r = run("curve rr-check " + xb2 + " --degree-window -2..4");
  CHECK(r.code == 0);
  CHECK(json(r)["violations"].empty());

  for (const char* verb : {"clifford", "roundtrip"}) CHECK(run(std::string("curve ") + verb + " " + fx("X-B3")).code == 0);

  r = run("curve sweep --instances 4 --seed 9");
  CHECK(r.code == 0);
  CHECK(json(r)["riemannRoch"]["violations"].empty());
  CHECK(r.out == run("curve sweep --instances 4 --seed 9").out);

  auto marked = io::read_file(fx("X-ELL5"));
  marked["marks"] = io::Json::array({io::Json::array({"v1", "p1"})});
  r = run("curve rank --bundle " + file("e.json", R"({"classes":{"v1":{"degree":1,"torsion":[0]}},"gluing":{}})") +
          " " + file("marked.json", io::dump(marked)));
  CHECK(r.code == 2);
  CHECK(r.out.find("vertical") != std::string::npos);

  CHECK(run("curve rr-check " + xb2 + " --degree-window 4..1").code == 2);
  CHECK(run("curve bogus " + xb2).code == 2);
}

TEST_CASE("output is byte-identical across runs") {
  const std::string args = "graph sweep --max-vertices 2 --max-edges 3 --degree-window -1..2";
  CHECK(run(args).out == run(args).out);
}
