// End-to-end checks of the command-line tool: spawns the real binary, reads
// its JSON, and checks the exit-code contract (0 true, 1 false, 2 usage).
// Usage: cli_tests <path-to-triplekit-binary>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "triplekit/json_io.hpp"

using namespace triplekit;
using G = GaussianRational;

namespace {

int failures = 0;

#define CHECK(cond)                                                          \
  do {                                                                       \
    if (!(cond)) {                                                           \
      ++failures;                                                            \
      std::cerr << "FAIL " << __FILE__ << ":" << __LINE__ << "  " << #cond   \
                << '\n';                                                     \
    }                                                                        \
  } while (0)

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& cmd) {
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, std::move(out)};
}

std::string q(const std::string& s) { return "'" + s + "'"; }

Json read_json(const std::string& path) {
  std::ifstream in(path);
  Json j;
  in >> j;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_tests <triplekit-binary>\n";
    return 2;
  }
  const std::string bin = q(argv[1]);

  char tmpl[] = "/tmp/triplekit_cli_XXXXXX";
  if (!mkdtemp(tmpl)) {
    std::cerr << "mkdtemp failed\n";
    return 2;
  }
  const std::string dir = tmpl;

  // version
  {
    auto r = run(bin + " version");
    CHECK(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["name"] == "triplekit");
    CHECK(j["version"].is_string());
  }

  // gen is deterministic per seed
  {
    auto r1 = run(bin + " gen --n 2 --seed 7");
    auto r2 = run(bin + " gen --n 2 --seed 7");
    auto r3 = run(bin + " gen --n 2 --seed 8");
    CHECK(r1.code == 0);
    CHECK(r1.out == r2.out);
    CHECK(r1.out != r3.out);
  }

  // gen -> verify -> canon pipeline, exact backend
  {
    const std::string map = dir + "/map.json", spec = dir + "/spec.json";
    auto g = run(bin + " gen --n 3 --seed 5 --out " + q(map) + " --spec-out " + q(spec));
    CHECK(g.code == 0);

    auto v = run(bin + " verify --in " + q(map));
    CHECK(v.code == 0);
    CHECK(Json::parse(v.out)["verdict"] == true);
    CHECK(Json::parse(v.out)["backend"] == "exact");

    auto c = run(bin + " canon --in " + q(map));
    CHECK(c.code == 0);
    auto rep = report_from_json<G>(Json::parse(c.out));
    auto want = spec_from_json<G>(read_json(spec));
    CHECK(rep.residual == 0.0);
    CHECK(specs_equivalent(rep.spec, want));
  }

  // flag overrides are honored and recovered
  {
    const std::string map = dir + "/m2.json", spec = dir + "/s2.json";
    auto g = run(bin + " gen --n 2 --seed 9 --c -1 --variant transpose --scalar-auto conj --out " +
                 q(map) + " --spec-out " + q(spec));
    CHECK(g.code == 0);
    auto s = spec_from_json<G>(read_json(spec));
    CHECK(s.c == -1);
    CHECK(s.variant == Variant::Transpose);
    CHECK(s.scalar_auto == ScalarAuto::Conj);

    auto c = run(bin + " canon --in " + q(map));
    CHECK(c.code == 0);
    auto rep = report_from_json<G>(Json::parse(c.out));
    CHECK(rep.spec.c == -1);
    CHECK(rep.spec.variant == Variant::Transpose);
    CHECK(rep.spec.scalar_auto == ScalarAuto::Conj);
  }

  // verdict-false maps exit 1 from both verify and canon
  {
    const std::string bad = dir + "/double.json";
    std::ofstream(bad) << supermap_to_json(
                              SuperMap<G>::scalar_multiple(2, ScalarTraits<G>::from_int(2)))
                              .dump();
    auto v = run(bin + " verify --in " + q(bad));
    CHECK(v.code == 1);
    CHECK(Json::parse(v.out)["verdict"] == false);
    auto c = run(bin + " canon --in " + q(bad));
    CHECK(c.code == 1);
  }

  // float pipeline
  {
    const std::string map = dir + "/fmap.json";
    auto g = run(bin + " --backend float gen --n 3 --seed 11 --out " + q(map));
    CHECK(g.code == 0);
    auto v = run(bin + " verify --in " + q(map));
    CHECK(v.code == 0);
    CHECK(Json::parse(v.out)["backend"] == "float");
    auto c = run(bin + " canon --in " + q(map));
    CHECK(c.code == 0);
    auto rep = report_from_json<ComplexF>(Json::parse(c.out));
    CHECK(rep.residual <= 1e-9);

    // requesting the wrong backend for the file is a usage error
    auto w = run(bin + " --backend exact verify --in " + q(map));
    CHECK(w.code == 2);
  }

  // usage and parse errors exit 2
  {
    const std::string junk = dir + "/junk.json";
    std::ofstream(junk) << "{nope";
    CHECK(run(bin + " verify --in " + q(junk)).code == 2);
    CHECK(run(bin + " verify --in " + q(dir + "/missing.json")).code == 2);
    CHECK(run(bin + " gen --n 2").code == 2);        // --seed is required
    CHECK(run(bin + " gen --n 0 --seed 1").code == 2);
    CHECK(run(bin + " frobnicate").code == 2);
    CHECK(run(bin).code == 2);                       // a subcommand is required
    CHECK(run(bin + " --backend decimal version").code == 2);
  }

  // lab checks
  {
    auto five = run(bin + " lab five-tripotents");
    CHECK(five.code == 0);
    Json j = Json::parse(five.out);
    CHECK(j["verdict"] == true);
    CHECK(j["score"] == 0.0);

    CHECK(run(bin + " --backend float lab five-tripotents").code == 0);

    auto relax = run(bin + " lab m2-relaxation");
    CHECK(relax.code == 0);
    CHECK(Json::parse(relax.out)["score"] == 0.0);

    auto m2 = run(bin + " lab m2-search --trials 300 --seed 1");
    CHECK(m2.code == 0);
    Json mj = Json::parse(m2.out);
    CHECK(mj["verdict"] == true);
    CHECK(mj["score"].get<double>() > 0.05);
    CHECK(mj["witness"].contains("q1"));

    auto d1 = run(bin + " lab dim1 --samples 500 --seed 3");
    CHECK(d1.code == 0);
    Json dj = Json::parse(d1.out);
    CHECK(dj["verdict"] == true);
    CHECK(dj["witness"]["additivity_violation_at_one"] == 2.0);

    CHECK(run(bin + " lab m2-search --trials 300").code == 2);  // seed required
  }

  std::filesystem::remove_all(dir);

  if (failures == 0) {
    std::cout << "cli_tests: all checks passed\n";
    return 0;
  }
  std::cout << "cli_tests: " << failures << " check(s) failed\n";
  return 1;
}
