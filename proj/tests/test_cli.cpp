#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#ifndef KTENSOR_CLI_PATH
#error "KTENSOR_CLI_PATH must point at the built ktensor binary"
#endif

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string("\"") + KTENSOR_CLI_PATH + "\" " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "ktensor_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("identities: exit 0 and byte-identical JSON") {
  const auto a = scratch("id_a.json"), b = scratch("id_b.json");
  const std::string args = "identities --dims 2..3 --degrees 0..2 --trials 5 --seed 42 --json ";
  CHECK(run(args + a.string()).code == 0);
  CHECK(run(args + b.string()).code == 0);
  const std::string ja = slurp(a);
  CHECK_FALSE(ja.empty());
  CHECK(ja == slurp(b));
  const auto j = nlohmann::json::parse(ja);
  CHECK(j["pass"] == true);
  CHECK(j["seed"] == 42);
}

TEST_CASE("identities: --format json matches --json file") {
  const auto a = scratch("id_c.json");
  const Run r = run("identities --dims 2 --degrees 1 --trials 3 --format json --json " + a.string());
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out) == nlohmann::json::parse(slurp(a)));
}

TEST_CASE("verify: positives, negatives and expectations") {
  Run r = run("verify --construct hopf-stackel --samples 20 --format json");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["classification"]["verdicts"]["stackel"] == true);

  r = run("verify --construct special-flat --samples 20 --format json");
  CHECK(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["classification"]["verdicts"]["special"] == true);
  CHECK(j["classification"]["verdicts"]["killing"] == false);

  // negative control: the verdict fails, which is what the registry expects
  CHECK(run("verify --construct hopf-stackel:broken --samples 20").code == 0);

  r = run("verify --construct metric --manifold hyperbolic:3 --samples 10 --format json");
  CHECK(r.code == 0);
}

TEST_CASE("verify: a field file") {
  const auto f = scratch("k.json");
  {
    std::ofstream out(f);
    out << R"({"dim": 3, "degree": 2, "entries": [{"index": [1, 1], "value": 1.0}, {"index": [2, 3], "value": -0.5}]})";
  }
  const Run r = run("verify --manifold euclidean:3 --field-file " + f.string() + " --samples 10 --format json");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  // constant coefficients on flat space are parallel
  CHECK(j["classification"]["verdicts"]["killing"] == true);
  CHECK(j["classification"]["verdicts"]["trace_free"] == false);
}

TEST_CASE("geodesic: conserved integral and reproducible rows") {
  const auto a = scratch("geo_a.json"), b = scratch("geo_b.json");
  const std::string args = "geodesic --construct hopf-stackel --trajectories 2 --steps 500 --json ";
  CHECK(run(args + a.string()).code == 0);
  CHECK(run(args + b.string()).code == 0);
  CHECK(slurp(a) == slurp(b));
  const auto j = nlohmann::json::parse(slurp(a));
  CHECK(j["trajectories"].size() == 2);
}

TEST_CASE("exit codes for bad input") {
  CHECK(run("identities --dims 1..1").code == 2);
  CHECK(run("verify --construct no-such-thing").code == 2);
  CHECK(run("verify --construct metric --manifold klein:2").code == 2);
  CHECK(run("verify --construct metric --params '{\"bogus\": 1}'").code == 2);
  CHECK(run("verify --construct metric --format yaml").code == 2);
  CHECK(run("verify --field-file /nonexistent/k.json --manifold sphere:2").code == 2);
  CHECK(run("--no-such-flag").code == 2);
  CHECK(run("--help").code == 0);
  CHECK(run("list").code == 0);
}
