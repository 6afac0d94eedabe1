// End-to-end checks of the fcpower binary: exit codes, output formats,
// determinism and the measure-file round trip. The binary location and the
// data directory come in through compile definitions.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using doctest::Approx;
namespace fs = std::filesystem;

namespace {

const std::string kBin = FCPOWER_BIN;
const std::string kData = DATA_DIR;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

RunResult run(const std::string& args) {
  const std::string out = (fs::temp_directory_path() / "fcpower_stdout.txt").string();
  const std::string cmd = kBin + " " + args + " > " + out + " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  RunResult res;
  res.exit_code = WEXITSTATUS(rc);
  std::ifstream f(out);
  std::ostringstream ss;
  ss << f.rdbuf();
  res.output = ss.str();
  return res;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

TEST_CASE("density of the arcsine law through the CLI") {
  const RunResult r =
      run("density --measure " + kData + "/bernoulli.json --t 2.0");
  REQUIRE(r.exit_code == 0);
  const auto rows = csv_rows(r.output);
  REQUIRE(rows.size() >= 2);
  CHECK(rows[0] == std::vector<std::string>{"u", "pdf"});
  // pdf at the sample nearest u = 0 is about 1/(2 pi)
  double best_u = 1e9, best_pdf = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double u = std::stod(rows[i][0]);
    if (std::abs(u) < std::abs(best_u)) {
      best_u = u;
      best_pdf = std::stod(rows[i][1]);
    }
  }
  CHECK(best_pdf == Approx(0.15915494309189535).epsilon(1e-4));
}

TEST_CASE("ncurve breakpoints of mu_eps(0.3) through the CLI") {
  const RunResult r = run("ncurve --measure " + kData +
                          "/mu_eps_03.json --t-min 1.05 --t-max 4 --t-steps 64");
  REQUIRE(r.exit_code == 0);
  const auto rows = csv_rows(r.output);
  REQUIRE(rows.size() == 65);
  CHECK(rows[0] == std::vector<std::string>{"t", "n"});
  int prev = 99;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double t = std::stod(rows[i][0]);
    const int n = std::stoi(rows[i][1]);
    CHECK(n <= prev);
    prev = n;
    const double b1 = 2.0 / 1.7, b2 = 10.0 / 3.0;
    if (t < b1 - 1e-9)
      CHECK(n == 5);
    else if (t < b2 - 1e-9)
      CHECK(n == 3);
    else if (t > b2 + 1e-9)
      CHECK(n == 1);
  }
}

TEST_CASE("merge threshold formatting") {
  const RunResult r = run("merge --measure " + kData + "/mu_eps_05.json");
  REQUIRE(r.exit_code == 0);
  double m = 0.0, t0 = 0.0;
  REQUIRE(std::sscanf(r.output.c_str(), "m=%lf t0=%lf", &m, &t0) == 2);
  CHECK(m == Approx(1.0).epsilon(1e-9));
  CHECK(t0 == Approx(2.0).epsilon(1e-9));
}

TEST_CASE("nu measures route through the Maassen construction") {
  const RunResult r = run("rho --measure " + kData + "/nu_delta0.json --format json");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("\"a\":0.0") != std::string::npos);
  CHECK(r.output.find("\"mass\":1.0") != std::string::npos);

  const RunResult atoms = run("atoms --measure " + kData + "/nu_delta0.json --t 1.5");
  REQUIRE(atoms.exit_code == 0);
  const auto rows = csv_rows(atoms.output);
  REQUIRE(rows.size() == 3);  // header + the two Bernoulli endpoint atoms
  CHECK(std::stod(rows[1][0]) == Approx(-1.5).epsilon(1e-9));
  CHECK(std::stod(rows[1][1]) == Approx(0.25).epsilon(1e-9));
}

TEST_CASE("support table through the CLI") {
  const RunResult r =
      run("support --measure " + kData + "/bernoulli.json --t 1.5");
  REQUIRE(r.exit_code == 0);
  const auto rows = csv_rows(r.output);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"lo", "hi", "kind"});
  CHECK(rows[1][2] == "atom_point");
  CHECK(std::stod(rows[1][0]) == Approx(-1.5));
  CHECK(rows[2][2] == "ac_component");
  CHECK(std::stod(rows[2][0]) == Approx(-std::sqrt(2.0)).epsilon(1e-9));
  CHECK(std::stod(rows[2][1]) == Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(rows[3][2] == "atom_point");
}

TEST_CASE("exit codes") {
  CHECK(run("density --measure " + kData + "/empty.json --t 2").exit_code == 1);
  CHECK(run("density --measure /nonexistent/mu.json --t 2").exit_code == 2);
  CHECK(run("density --measure " + kData + "/bernoulli.json --t 0.5").exit_code == 1);
  CHECK(run("merge --measure " + kData + "/dirac.json").exit_code == 1);
  CHECK(run("bogus-command").exit_code == 1);
}

TEST_CASE("deterministic byte-identical output files") {
  const std::string out1 = (fs::temp_directory_path() / "fc_out1.csv").string();
  const std::string out2 = (fs::temp_directory_path() / "fc_out2.csv").string();
  const std::string base = "oracle-compare --measure " + kData +
                           "/bernoulli.json --t 2 --dim 64 --trials 2 --seed 9 --out ";
  REQUIRE(run(base + out1).exit_code == 0);
  REQUIRE(run(base + out2).exit_code == 0);
  const std::string a = slurp(out1), b = slurp(out2);
  CHECK(!a.empty());
  CHECK(a == b);

  double ks = -1.0;
  REQUIRE(std::sscanf(a.c_str(), "ks=%lf", &ks) == 1);
  CHECK(ks >= 0.0);
  CHECK(ks <= 1.0);
}

TEST_CASE("measure round trip through parse and serialize") {
  // continuous input: discretized once, then the serialized atomic form must
  // reparse to the identical measure (same rho, same support report)
  const std::string d1 = (fs::temp_directory_path() / "fc_rho1.csv").string();
  REQUIRE(run("rho --measure " + kData + "/semicircle.json --n-atoms 64 --out " + d1)
              .exit_code == 0);
  const auto rows = csv_rows(slurp(d1));
  CHECK(rows.size() == 64);  // header + 63 rho atoms
}
