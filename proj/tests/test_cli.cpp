// End-to-end checks of the command-line tool: spawns the real binary with
// fixture files and inspects stdout + exit codes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

#ifndef CONIC_CLI_PATH
#error "CONIC_CLI_PATH must point at the built binary"
#endif

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(CONIC_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

class Fixtures {
 public:
  Fixtures() {
    dir_ = fs::temp_directory_path() / ("conic_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    write("descartes.json",
          R"({"balls": [{"center": [0, 0], "radius": 1},
                        {"center": [3, 0], "radius": 2},
                        {"center": [0, 4], "radius": 3}]})");
    write("circles.json",
          R"({"circles": [{"center": [0, 0], "radius": 1},
                          {"center": [3, 0], "radius": 2},
                          {"center": [0, 4], "radius": 3}]})");
    write("cone.json", R"({"kind": "Cone", "center": [0, 0, 0], "axis": [0, 0, 1],
                           "eccentricity": 2})");
    write("plane_parabolic.json",
          R"({"normal": [0, 0.5, 0.8660254037844386], "offset": 1})");
    write("hyperboloid.json", R"({"kind": "HyperboloidTwoSheets", "center": [0, 0, 0],
                                  "axis": [0, 0, 1], "a": 1, "c": 2})");
    write("plane_empty.json", R"({"normal": [0.3, 0, 0.9539392014169457], "offset": 0})");
    write("contained.json",
          R"({"balls": [{"center": [0, 0], "radius": 5},
                        {"center": [1, 0], "radius": 1},
                        {"center": [0, 1], "radius": 2}]})");
    write("bad.json", "{not json");
  }
  ~Fixtures() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  std::string path(const char* name) const { return (dir_ / name).string(); }

 private:
  void write(const char* name, const std::string& text) {
    std::ofstream out(dir_ / name);
    out << text;
  }
  fs::path dir_;
};

const Fixtures& fixtures() {
  static Fixtures f;
  return f;
}

}  // namespace

TEST_CASE("slice classifies the tangent-angle cone plane as parabolic") {
  const auto r = run_cli("slice --conic " + fixtures().path("cone.json") + " --plane " +
                         fixtures().path("plane_parabolic.json"));
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("class") == "ParabolicSlice");
  CHECK(j.at("conic").at("kind") == "Paraboloid");
}

TEST_CASE("intersect solves the Descartes configuration") {
  const auto r = run_cli("intersect --balls " + fixtures().path("descartes.json"));
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("kind") == "PointPair");
  CHECK(j.at("sheet_vertex")[0].get<double>() == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(j.at("sheet_vertex")[1].get<double>() == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(j.at("tangent_z").get<double>() == doctest::Approx(6.0).epsilon(1e-9));
  CHECK(!j.contains("diagnostics"));

  const auto rv = run_cli("intersect --verbose --balls " + fixtures().path("descartes.json"));
  CHECK(json::parse(rv.out).contains("diagnostics"));
}

TEST_CASE("apollonius emits eight circles with both Soddy radii") {
  const auto r = run_cli("apollonius --circles " + fixtures().path("circles.json"));
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j.at("circles").size() == 8);
  bool has6 = false, has_soddy = false;
  for (const auto& c : j.at("circles")) {
    const double radius = c.at("radius").get<double>();
    if (std::abs(radius - 6.0) <= 1e-9) has6 = true;
    if (std::abs(radius - 6.0 / 23.0) <= 1e-9) has_soddy = true;
  }
  CHECK(has6);
  CHECK(has_soddy);
}

TEST_CASE("bisector subcommand with an explicit pair") {
  const auto r =
      run_cli("bisector --balls " + fixtures().path("descartes.json") + " --pair 0 1");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("type") == "sheet");
  CHECK(j.at("conic").at("kind") == "HyperboloidTwoSheets");
  CHECK(j.at("pair")[0].get<int>() == 1);  // larger radius listed first
}

TEST_CASE("sample output is deterministic and verified") {
  const std::string cmd = "sample --conic " + fixtures().path("hyperboloid.json") +
                          " --count 50 --seed 7";
  const auto r1 = run_cli(cmd);
  const auto r2 = run_cli(cmd);
  CHECK(r1.exit_code == 0);
  CHECK(r1.out == r2.out);  // byte-identical
  const json j = json::parse(r1.out);
  CHECK(j.at("points").size() == 50);

  const auto r3 = run_cli(cmd + " --seed 8");
  CHECK(r3.out != r1.out);
}

TEST_CASE("exit code 3 for geometric infeasibility") {
  const auto empty = run_cli("slice --conic " + fixtures().path("hyperboloid.json") +
                             " --plane " + fixtures().path("plane_empty.json"));
  CHECK(empty.exit_code == 3);
  CHECK(json::parse(empty.out).at("error") == "EmptyIntersection");

  const auto contained = run_cli("intersect --balls " + fixtures().path("contained.json"));
  CHECK(contained.exit_code == 3);
  CHECK(json::parse(contained.out).at("error") == "ContainedBall");
}

TEST_CASE("exit code 2 for malformed input") {
  const auto bad = run_cli("slice --conic " + fixtures().path("bad.json") + " --plane " +
                           fixtures().path("plane_parabolic.json"));
  CHECK(bad.exit_code == 2);
  CHECK(json::parse(bad.out).at("error") == "InvalidArgument");

  const auto missing = run_cli("intersect --balls /nonexistent/file.json");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("verify reports diagnostics and success") {
  const auto r = run_cli("verify --balls " + fixtures().path("descartes.json") + " --count 10");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("ok") == true);
  CHECK(j.at("diagnostics").at("max_abs_u_dot_v1").get<double>() <= 1e-9);

  const auto rc = run_cli("verify --conic " + fixtures().path("cone.json") + " --count 200");
  CHECK(rc.exit_code == 0);
  CHECK(json::parse(rc.out).at("ok") == true);
}
