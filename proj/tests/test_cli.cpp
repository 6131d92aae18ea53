// End-to-end checks of the command-line tool: exit codes, report shape,
// determinism. The binary path comes in through WEYLKIT_CLI_PATH.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string cli = WEYLKIT_CLI_PATH;

std::string temp_path(const char* ext) {
  static int counter = 0;
  return "/tmp/weylkit_cli_test_" + std::to_string(getpid()) + "_" +
         std::to_string(counter++) + ext;
}

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string out_file = temp_path(".out");
  std::string cmd = cli + " " + args + " >" + out_file + " 2>&1";
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(rc);
  std::ifstream f(out_file);
  std::ostringstream ss;
  ss << f.rdbuf();
  r.output = ss.str();
  std::remove(out_file.c_str());
  return r;
}

std::string write_temp(const std::string& text) {
  std::string path = temp_path(".spec");
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("passing runs exit 0 and emit a JSON report") {
  RunResult r = run("curvature --catalog schwarzschild --points 3 --seed 7");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"tool\": \"weylkit\"") != std::string::npos);
  CHECK(r.output.find("\"pass\": true") != std::string::npos);
  CHECK(r.output.find("first_bianchi") != std::string::npos);
}

TEST_CASE("spec parse problems exit 2 with a position") {
  std::string bad = write_temp("[metric]\ng 0 0 = 1\n");
  RunResult r = run("curvature --spec " + bad);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("missing section [coords]") != std::string::npos);
  std::remove(bad.c_str());

  RunResult missing = run("curvature --spec /no/such/file.spec");
  CHECK(missing.exit_code == 2);

  RunResult usage = run("not-a-subcommand");
  CHECK(usage.exit_code == 2);

  RunResult noinput = run("curvature");
  CHECK(noinput.exit_code == 2);
}

TEST_CASE("degenerate geometry exits 3") {
  std::string deg = write_temp("[coords]\nx y\n[metric]\ng 0 0 = 0\ng 1 1 = 0\n");
  RunResult r = run("curvature --spec " + deg + " --point 0.1,0.2");
  CHECK(r.exit_code == 3);
  std::remove(deg.c_str());
}

TEST_CASE("check failures exit 1") {
  // a spec whose stated signature disagrees with the metric
  std::string bad = write_temp(
      "[meta]\nsignature = 1 1\n[coords]\nx y\n[metric]\ng 0 0 = 1\ng 1 1 = 1\n");
  RunResult r = run("curvature --spec " + bad + " --points 2 --seed 1");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("\"pass\": false") != std::string::npos);
  std::remove(bad.c_str());
}

TEST_CASE("reports are byte-identical for a fixed seed") {
  std::string a = run("classify --catalog godel --points 3 --seed 42").output;
  std::string b = run("classify --catalog godel --points 3 --seed 42").output;
  CHECK(a == b);
  std::string c = run("classify --catalog godel --points 3 --seed 43").output;
  CHECK(a != c);
}

TEST_CASE("catalog listing names every entry") {
  RunResult r = run("catalog");
  CHECK(r.exit_code == 0);
  for (const char* name : {"minkowski", "schwarzschild", "godel", "pp_wave",
                           "hyperboloid_embedding"})
    CHECK(r.output.find(name) != std::string::npos);
}

TEST_CASE("explicit points and output files work") {
  std::string out = temp_path(".json");
  RunResult r = run("curvature --catalog schwarzschild --point 0,5,1.2,0.4 -o " + out);
  CHECK(r.exit_code == 0);
  std::ifstream f(out);
  std::ostringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str().find("\"pass\": true") != std::string::npos);
  std::remove(out.c_str());
}

TEST_CASE("subcommands cover the documented surface") {
  CHECK(run("classify --catalog pp_wave --points 2 --seed 5 --null 0,1,0,0").exit_code == 0);
  CHECK(run("compat --catalog de_sitter_static --points 2 --seed 5").exit_code == 0);
  CHECK(run("hypersurface --catalog 'sphere_embedding(2)' --points 2 --seed 5").exit_code == 0);
  CHECK(run("geodesic-map --catalog frw_flat --psi 0.1*t --points 2 --seed 5").exit_code == 0);
}
