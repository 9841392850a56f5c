#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "helpers.hpp"
#include "posdef/io.hpp"
#include "posdef/models.hpp"

using namespace posdef;
namespace fs = std::filesystem;

namespace {

const std::string kCli = POSDEF_CLI_PATH;

fs::path work_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "posdef_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path(const std::string& name) { return (work_dir() / name).string(); }

int run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " > " + path("stdout.txt") + " 2> " +
                          path("stderr.txt");
  const int rc = std::system(cmd.c_str());
  return rc == -1 ? -1 : WEXITSTATUS(rc);
}

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, std::string> read_report(const std::string& p) {
  std::map<std::string, std::string> out;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    const auto colon = line.find(": ");
    if (colon != std::string::npos)
      out[line.substr(0, colon)] = line.substr(colon + 2);
  }
  return out;
}

bool values_match_12_digits(const SampledSignal& a, const SampledSignal& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double scale = std::max({std::abs(a.values[j].real()), std::abs(a.values[j].imag()),
                                   1e-300});
    if (std::abs(a.values[j] - b.values[j]) > 1e-12 * std::max(scale, 1.0)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("generate writes the dimer value and a sidecar") {
  REQUIRE(run("generate --model dimer -o " + path("dimer.csv")) == 0);
  const auto s = read_signal_csv(path("dimer.csv"));
  REQUIRE(s.size() == 101);
  CHECK(std::abs(s.values[0].real() - 0.289444) < 1e-6);
  CHECK(s.values[0].imag() == 0.0);
  CHECK(s.dt == 0.1);

  const auto meta = read_report(path("dimer.csv.meta"));
  CHECK(meta.at("model") == "dimer");
  CHECK(meta.at("n") == "101");
  CHECK(std::abs(std::stod(meta.at("f0")) - 0.289444) < 1e-6);
}

TEST_CASE("sigma zero generation is byte-identical to clean") {
  REQUIRE(run("generate --model dimer -o " + path("clean.csv")) == 0);
  REQUIRE(run("generate --model dimer --sigma 0 --seed 42 -o " + path("zero.csv")) == 0);
  CHECK(slurp(path("clean.csv")) == slurp(path("zero.csv")));
}

TEST_CASE("ssh generation is vacuum normalized") {
  REQUIRE(run("generate --model ssh -o " + path("ssh.csv")) == 0);
  const auto s = read_signal_csv(path("ssh.csv"));
  CHECK(std::abs(s.values[0] - cdouble(1.0, 0.0)) < 1e-12);
}

TEST_CASE("file round trip preserves values") {
  REQUIRE(run("generate --model dimer --sigma 0.1 --seed 7 -o " + path("noisy.csv")) == 0);
  const auto s = read_signal_csv(path("noisy.csv"));
  write_signal_csv(path("copy.csv"), s);
  const auto s2 = read_signal_csv(path("copy.csv"));
  CHECK(testutil::max_abs_diff(s.values, s2.values) == 0.0);  // 17-digit output
}

TEST_CASE("denoise on a clean file is the identity within conv_tol") {
  REQUIRE(run("generate --model dimer -o " + path("d0.csv")) == 0);
  REQUIRE(run("denoise -i " + path("d0.csv") + " -o " + path("d1.csv") + " --report " +
              path("d1.rep")) == 0);
  const auto in = read_signal_csv(path("d0.csv"));
  const auto out = read_signal_csv(path("d1.csv"));
  CHECK(testutil::max_abs_diff(in.values, out.values) < 1e-7);
  const auto rep = read_report(path("d1.rep"));
  CHECK(rep.at("converged") == "true");
  CHECK(std::stoi(rep.at("iterations")) <= 2);
}

TEST_CASE("denoising a noisy file halves the oracle rmse") {
  const std::string seed = std::to_string(kNoiseSeed);
  REQUIRE(run("generate --model dimer -o " + path("exact.csv")) == 0);
  REQUIRE(run("generate --model dimer --sigma 0.1 --seed " + seed + " -o " +
              path("n01.csv")) == 0);
  REQUIRE(run("denoise -i " + path("n01.csv") + " -o " + path("dn01.csv") +
              " --f0 0.289444 --report " + path("dn01.rep")) == 0);
  const auto exact = read_signal_csv(path("exact.csv"));
  const auto noisy = read_signal_csv(path("n01.csv"));
  const auto den = read_signal_csv(path("dn01.csv"));
  CHECK(testutil::rmse(den.values, exact.values) <=
        0.5 * testutil::rmse(noisy.values, exact.values));
  const auto rep = read_report(path("dn01.rep"));
  CHECK(rep.at("converged") == "true");
  CHECK(std::stod(rep.at("min_eig")) >= -1e-10 * 0.289444);
}

TEST_CASE("malformed input exits nonzero") {
  {
    std::ofstream f(path("bad.csv"));
    f << "t,re,im\n0,1,0\n0.1,0.9,0\n0.25,0.8,0\n";  // non-uniform spacing
  }
  CHECK(run("denoise -i " + path("bad.csv") + " -o " + path("bad_out.csv")) != 0);
  {
    std::ofstream f(path("junk.csv"));
    f << "hello world\n";
  }
  CHECK(run("denoise -i " + path("junk.csv") + " -o " + path("junk_out.csv")) != 0);
  CHECK(run("denoise -i " + path("missing.csv") + " -o " + path("x.csv")) != 0);
}

TEST_CASE("flagged non-convergence still exits zero") {
  const std::string seed = std::to_string(kNoiseSeed);
  REQUIRE(run("generate --model dimer --sigma 0.1 --seed " + seed + " -o " +
              path("nc_in.csv")) == 0);
  REQUIRE(run("denoise -i " + path("nc_in.csv") + " -o " + path("nc_out.csv") +
              " --f0 0.289444 --max-iter 2 --report " + path("nc.rep")) == 0);
  const auto rep = read_report(path("nc.rep"));
  CHECK(rep.at("converged") == "false");
  CHECK(rep.at("iterations") == "2");
}

TEST_CASE("extend continues a truncated file toward the oracle") {
  REQUIRE(run("generate --model dimer --tmax 3 -o " + path("full3.csv")) == 0);
  REQUIRE(run("generate --model dimer --tmax 2 -o " + path("head2.csv")) == 0);
  REQUIRE(run("extend -i " + path("head2.csv") + " -o " + path("ext.csv") +
              " --points 10 --report " + path("ext.rep")) == 0);
  const auto full = read_signal_csv(path("full3.csv"));
  const auto ext = read_signal_csv(path("ext.csv"));
  REQUIRE(ext.size() == 31);
  double dev = 0.0;
  for (std::size_t j = 21; j < 31; ++j)
    dev = std::max(dev, std::abs(ext.values[j] - full.values[j]));
  CHECK(dev <= 1e-2 * full.f0());
  const auto rep = read_report(path("ext.rep"));
  CHECK(rep.at("points") == "10");
}

TEST_CASE("poles of a constant signal is the single zero-frequency row") {
  REQUIRE(run("generate --model dimer --u 0 --eps 0 --hopping 0 -o " + path("const.csv")) ==
          0);
  REQUIRE(run("poles -i " + path("const.csv") + " -o " + path("const_poles.csv") +
              " --report " + path("const_poles.rep")) == 0);
  const auto lines = slurp(path("const_poles.csv"));
  std::istringstream ss(lines);
  std::string header, row, extra;
  REQUIRE(std::getline(ss, header));
  CHECK(header == "omega,weight");
  REQUIRE(std::getline(ss, row));
  double omega = 0.0, weight = 0.0;
  REQUIRE(std::sscanf(row.c_str(), "%lf,%lf", &omega, &weight) == 2);
  CHECK(std::abs(omega) < 1e-8);
  CHECK(std::abs(weight - 0.5) < 1e-8);
  CHECK_FALSE(std::getline(ss, extra));  // exactly one pole

  const auto rep = read_report(path("const_poles.rep"));
  CHECK(rep.at("rank_used") == "1");
  CHECK(std::stod(rep.at("recon_residual")) < 1e-8);
}

TEST_CASE("spectrum reports positivity of a clean signal") {
  REQUIRE(run("generate --model ssh --tmax 50 -o " + path("sshlong.csv")) == 0);
  REQUIRE(run("spectrum -i " + path("sshlong.csv") + " -o " + path("ssh_spec.csv") +
              " --tau 8 --report " + path("ssh_spec.rep")) == 0);
  const auto rep = read_report(path("ssh_spec.rep"));
  CHECK(rep.at("omega_points") == "2048");
  // the spectrum file parses: header + 2048 rows of "omega,re,im"
  std::istringstream ss(slurp(path("ssh_spec.csv")));
  std::string line;
  REQUIRE(std::getline(ss, line));
  CHECK(line == "omega,re,im");
  int rows = 0;
  while (std::getline(ss, line)) ++rows;
  CHECK(rows == 2048);
}

TEST_CASE("config files feed options and unknown keys are rejected") {
  {
    std::ofstream f(path("gen.conf"));
    f << "[generate]\nmodel=dimer\nsigma=0.05\nseed=11\ntmax=5\n";
  }
  REQUIRE(run("generate --config " + path("gen.conf") + " -o " + path("cfg.csv")) == 0);
  const auto s = read_signal_csv(path("cfg.csv"));
  CHECK(s.size() == 51);

  // command line overrides the config value
  REQUIRE(run("generate --config " + path("gen.conf") + " --sigma 0 -o " +
              path("cfg0.csv")) == 0);
  REQUIRE(run("generate --model dimer --tmax 5 -o " + path("clean5.csv")) == 0);
  CHECK(slurp(path("cfg0.csv")) == slurp(path("clean5.csv")));

  {
    std::ofstream f(path("bad.conf"));
    f << "[generate]\nmodel=dimer\nbogus_key=1\n";
  }
  CHECK(run("generate --config " + path("bad.conf") + " -o " + path("cfgbad.csv")) != 0);
}

TEST_CASE("pipelines are reproducible to 12 significant digits") {
  const std::string seed = std::to_string(kNoiseSeed);
  for (int pass = 0; pass < 2; ++pass) {
    const std::string sfx = pass == 0 ? "_a" : "_b";
    REQUIRE(run("generate --model ssh --sigma 0.1 --seed " + seed + " --tmax 6 -o " +
                path("pipe" + sfx + ".csv")) == 0);
    REQUIRE(run("denoise -i " + path("pipe" + sfx + ".csv") + " -o " +
                path("pden" + sfx + ".csv") + " --strategy penalty --f0 1 --sweeps 2 " +
                "--golden-iters 16") == 0);
    REQUIRE(run("extend -i " + path("pden" + sfx + ".csv") + " -o " +
                path("pext" + sfx + ".csv") + " --points 5 --strategy pole_model " +
                "--singular-tol 0.05") == 0);
    REQUIRE(run("spectrum -i " + path("pext" + sfx + ".csv") + " -o " +
                path("pspec" + sfx + ".csv") + " --tau 20") == 0);
  }
  CHECK(values_match_12_digits(read_signal_csv(path("pden_a.csv")),
                               read_signal_csv(path("pden_b.csv"))));
  CHECK(values_match_12_digits(read_signal_csv(path("pext_a.csv")),
                               read_signal_csv(path("pext_b.csv"))));
  CHECK(slurp(path("pspec_a.csv")) == slurp(path("pspec_b.csv")));
}

TEST_CASE("usage errors exit nonzero") {
  CHECK(run("") != 0);                                  // subcommand required
  CHECK(run("generate --model nosuch -o " + path("z.csv")) != 0);
  CHECK(run("generate --model dimer") != 0);            // missing -o
  CHECK(run("frobnicate") != 0);
}
