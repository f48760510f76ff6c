// Error-path and format checks for the command-line tool. Takes the CLI path
// as argv[1]; exits nonzero on the first failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

std::string g_cli;
int g_failures = 0;

void check(bool ok, const std::string& what) {
  std::printf("%s  %s\n", ok ? "ok  " : "FAIL", what.c_str());
  if (!ok) ++g_failures;
}

int run(const std::string& args, std::string* out = nullptr) {
  const std::string out_file = "/tmp/steinkit_cli_test_out";
  const std::string cmd = g_cli + " " + args + " > " + out_file + " 2>&1";
  const int rc = std::system(cmd.c_str());
  if (out) {
    std::ifstream in(out_file);
    std::ostringstream ss;
    ss << in.rdbuf();
    *out = ss.str();
  }
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

int count_lines(const std::string& path) {
  std::ifstream in(path);
  int n = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++n;
  return n;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_tests <path-to-steinkit>\n");
    return 2;
  }
  g_cli = argv[1];

  std::string out;

  check(run("sample --family gig --p -1 --a 2 --b 2 --n 0 --seed 1 --out /tmp/x.csv",
            &out) == 2,
        "sample with n=0 exits 2");

  {
    std::ofstream empty("/tmp/steinkit_cli_empty.csv");
    empty << "value\n";
  }
  check(run("gof --family kummer --a 1 --b 1 --c 1 --sample /tmp/steinkit_cli_empty.csv",
            &out) == 2,
        "gof on an empty sample exits 2");

  check(run("gof --family kummer --a 1 --b 1 --c 1 --sample /tmp/steinkit_no_such_file.csv",
            &out) == 2,
        "gof on a missing file exits 2");

  check(run("verify --family gig --p -1 --a 2 --b 2 --grid 1e-2:20:40:log "
            "--debug-corrupt-tau",
            &out) == 1,
        "verify with corrupted tau exits 1");

  {
    const int rc = run("bound --family gig --p 0 --a 1 --b 1", &out);
    check(rc == 2, "bound outside the hypothesis exits 2");
    check(out.find("p <= -1") != std::string::npos,
          "bound error message cites the p <= -1 hypothesis");
    check(out.find("\"error\"") != std::string::npos,
          "errors are reported as JSON");
  }

  check(run("density --family gig --p -1 --a 2 --b 0 --grid 1:2:5:lin --out -",
            &out) == 2,
        "invalid parameters exit 2");

  {
    const int rc = run(
        "density --family kummer --a 1 --b 1 --c 1 --grid 0.5:2:2:lin --out "
        "/tmp/steinkit_cli_density.csv");
    check(rc == 0 && count_lines("/tmp/steinkit_cli_density.csv") == 3,
          "density with an n=2 grid writes exactly 2 rows plus the header");
  }

  {
    const int rc = run(
        "solve --family gig --p -1 --a 2 --b 2 --h const --grid 0.1:10:40:log "
        "--out /tmp/steinkit_cli_solve.csv",
        &out);
    bool all_zero = rc == 0;
    std::ifstream in("/tmp/steinkit_cli_solve.csv");
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      const auto c1 = line.find(',');
      const auto c2 = line.find(',', c1 + 1);
      const double f = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
      all_zero = all_zero && std::abs(f) < 1e-9;
    }
    check(all_zero, "solve with constant h writes an all-zero f column");
  }

  {
    const int rc = run(
        "solve --family gig --p -1 --a 2 --b 2 --h exp-decay --grid "
        "1e-3:50:100:log --out /tmp/steinkit_cli_masked.csv",
        &out);
    std::ifstream in("/tmp/steinkit_cli_masked.csv");
    std::string line;
    std::getline(in, line);
    bool header_has_masked = line == "x,f,f_prime,residual,masked";
    int masked_rows = 0;
    while (std::getline(in, line))
      if (line.size() > 2 && line.substr(line.size() - 2) == ",1") ++masked_rows;
    check(rc == 0 && header_has_masked && masked_rows > 0,
          "underflowed grid points are flagged in the masked column");
    check(out.find("\"masked_points\"") != std::string::npos,
          "solve summary reports the masked point count");
  }

  {
    const int rc = run(
        "bound --params-json "
        "'{\"family\":\"kummer\",\"a\":1,\"b\":1,\"c\":1}'",
        &out);
    check(rc == 0 && out.find("\"alpha\": 0.618033988") != std::string::npos,
          "params accepted as a JSON object");
  }

  check(run("bogus-subcommand", &out) != 0, "unknown subcommand is rejected");

  if (g_failures > 0) {
    std::printf("%d CLI check(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all CLI checks passed\n");
  return 0;
}
