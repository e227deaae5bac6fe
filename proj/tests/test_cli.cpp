#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "levytail/csv.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LEVYTAIL_CLI_BINARY) + " " + args +
                          " > /dev/null 2> /dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / "levytail_cli_test";
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("cli: simulate writes a deterministic headerless CSV") {
  TempDir dir;
  const std::string out = dir / "jumps.csv";
  const std::string flags =
      "simulate --dist powerlaw --alpha0 1.6 --rho0 0.5 --n 10000 --seed 7 --out " + out;
  REQUIRE(run_cli(flags) == 0);

  const std::string first = slurp(out);
  std::size_t lines = 0;
  for (char c : first) lines += (c == '\n');
  CHECK(lines == 10000);

  // all jumps sit on the support
  std::istringstream in(first);
  std::string line;
  while (std::getline(in, line)) {
    CHECK(std::stod(line) >= 0.5);
  }

  // rerunning with identical flags reproduces the bytes
  REQUIRE(run_cli(flags) == 0);
  CHECK(slurp(out) == first);
  CHECK(fs::exists(out + ".manifest.json"));

  // usage errors
  CHECK(run_cli("simulate --dist powerlaw --alpha0 -1 --n 10 --out " + (dir / "x.csv")) == 1);
  CHECK(run_cli("simulate --n 10") == 1);
  CHECK(run_cli("nonsense") == 1);
}

TEST_CASE("cli: curve on simulated data") {
  TempDir dir;
  const std::string data = dir / "jumps.csv";
  REQUIRE(run_cli("simulate --dist powerlaw --alpha0 1.6 --rho0 0.5 --n 20000 --seed 3 --out " +
                  data) == 0);

  const std::string prefix = dir / "fit";
  REQUIRE(run_cli("curve --input " + data +
                  " --increments-given --no-normalize --side pos --rho 0.5 "
                  "--alpha-grid 1.0:2.2:0.01 --s 1 --out-prefix " + prefix) == 0);

  const std::string curve_csv = slurp(prefix + "_curve.csv");
  CHECK(curve_csv.rfind("alpha,w_tilde\n", 0) == 0);

  const std::string summary = slurp(prefix + "_summary.json");
  CHECK(summary.find("\"alpha_hat\"") != std::string::npos);
  CHECK(summary.find("\"iqr\"") != std::string::npos);

  // missing input file is an I/O failure
  CHECK(run_cli("curve --input " + (dir / "absent.csv") +
                " --rho 0.5 --out-prefix " + (dir / "z")) == 2);
}

TEST_CASE("cli: curve scaling flags reproduce the x4 relation") {
  TempDir dir;
  const std::string data = dir / "jumps.csv";
  REQUIRE(run_cli("simulate --dist powerlaw --alpha0 1.6 --rho0 0.5 --n 5000 --seed 11 --out " +
                  data) == 0);

  // scale the data by 2 into a second file
  const auto column = levytail::read_csv_column(data);
  std::ofstream scaled_file(dir / "scaled.csv");
  for (double v : column.values)
    scaled_file << levytail::format_double(2.0 * v) << "\n";
  scaled_file.close();

  REQUIRE(run_cli("curve --input " + data +
                  " --increments-given --no-normalize --side pos --rho 0.5 "
                  "--alpha-grid 1.2:2.0:0.02 --s 1 --out-prefix " + (dir / "base")) == 0);
  REQUIRE(run_cli("curve --input " + (dir / "scaled.csv") +
                  " --increments-given --no-normalize --side pos --rho 1.0 "
                  "--alpha-grid 1.2:2.0:0.02 --s 4 --out-prefix " + (dir / "x2")) == 0);

  const auto base = levytail::read_csv_column(dir / "base_curve.csv", "w_tilde");
  const auto x2 = levytail::read_csv_column(dir / "x2_curve.csv", "w_tilde");
  REQUIRE(base.values.size() == x2.values.size());
  for (std::size_t k = 0; k < base.values.size(); ++k) {
    CHECK(x2.values[k] == doctest::Approx(4.0 * base.values[k]).epsilon(1e-10));
  }
}

TEST_CASE("cli: sweep emits long, locus and best outputs") {
  TempDir dir;
  const std::string data = dir / "jumps.csv";
  REQUIRE(run_cli("simulate --dist powerlaw --alpha0 1.6 --rho0 0.5 --n 20000 --seed 5 --out " +
                  data) == 0);

  const std::string prefix = dir / "sw";
  REQUIRE(run_cli("sweep --input " + data +
                  " --increments-given --no-normalize --side pos "
                  "--rho-grid 0.2:1.2:8 --alpha-grid 1.0:2.2:0.02 --s 1 "
                  "--out-prefix " + prefix) == 0);

  const auto locus = levytail::read_csv_column(prefix + "_locus.csv", "n_points");
  CHECK(locus.values.size() == 8);
  for (std::size_t k = 1; k < locus.values.size(); ++k)
    CHECK(locus.values[k] <= locus.values[k - 1]);

  const std::string best = slurp(prefix + "_best.json");
  CHECK(best.find("\"rho_star\"") != std::string::npos);
  CHECK(best.find("\"alpha_star\"") != std::string::npos);
}

TEST_CASE("cli: convergence on a reduced grid mirrors the table layout") {
  TempDir dir;
  const std::string prefix = dir / "conv";
  REQUIRE(run_cli("convergence --alpha0 1.4 --n-list 100 1000 --m 5 --seed 2 "
                  "--out-prefix " + prefix) == 0);

  const std::string t1 = slurp(prefix + "_table1.csv");
  CHECK(t1.rfind("alpha0,n,alpha_hat_mean,alpha_hat_var,w_star_mean,w_star_var\n", 0) == 0);
  const std::string t2 = slurp(prefix + "_table2.csv");
  CHECK(t2.rfind("alpha0,theoretical,q_100_1000\n", 0) == 0);
  const std::string t3 = slurp(prefix + "_table3.csv");
  CHECK(t3.rfind("alpha0,theoretical,r_100_1000\n", 0) == 0);

  // identical rerun produces identical tables
  const std::string prefix2 = dir / "conv2";
  REQUIRE(run_cli("convergence --alpha0 1.4 --n-list 100 1000 --m 5 --seed 2 "
                  "--out-prefix " + prefix2) == 0);
  CHECK(slurp(prefix2 + "_table1.csv") == t1);
}

TEST_CASE("cli: bound writes the constants it used") {
  TempDir dir;
  const std::string out = dir / "bound.json";
  REQUIRE(run_cli("bound --nu1 stable:1.4:1:1 --nu2 stable:1.8:1:1 "
                  "--ell 1 --lambda 1 --out " + out) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("\"bound\"") != std::string::npos);
  CHECK(text.find("\"t_lambda\"") != std::string::npos);
  CHECK(text.find("\"exact\"") != std::string::npos);

  CHECK(run_cli("bound --nu1 bogus:1 --nu2 stable:1.8:1:1 --ell 1 --lambda 1 --out " +
                (dir / "b2.json")) == 1);
}

TEST_CASE("cli: csv ingestion rules") {
  TempDir dir;
  // headered multi-column input with a missing cell and a gap row
  {
    std::ofstream f(dir / "series.csv");
    f << "time,value\n0,1.0\n1,1.5\n2,\n3,2.5\n4,2.0\n";
  }
  REQUIRE(run_cli("curve --input " + (dir / "series.csv") +
                  " --column value --side both --rho 0.1 --no-normalize "
                  "--alpha-grid 1:2:0.5 --out-prefix " + (dir / "c")) == 0);

  // a non-numeric cell is an error with the row number
  {
    std::ofstream f(dir / "bad.csv");
    f << "1.0\n2.0\nbogus\n";
  }
  CHECK(run_cli("curve --input " + (dir / "bad.csv") +
                " --side both --rho 0.1 --no-normalize --alpha-grid 1:2:0.5 "
                "--out-prefix " + (dir / "d")) == 2);
}
