// Black-box tests of the installed CLI: spawn the real binary, capture its
// streams, and check exit codes against the documented contract
// (0 success, 1 execution error, 2 negative verdict).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace {

using json = nlohmann::ordered_json;

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  const std::string out_path = "/tmp/hlab_cli_stdout.txt";
  const std::string err_path = "/tmp/hlab_cli_stderr.txt";
  const std::string cmd = std::string(HLAB_CLI_PATH) + " " + args + " >" +
                          out_path + " 2>" + err_path;
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

std::string write_temp(const char* name, const std::string& text) {
  std::string path = std::string("/tmp/") + name;
  std::ofstream out(path);
  out << text;
  return path;
}

}  // namespace

TEST_CASE("cli: help and success paths") {
  auto help = run_cli("--help");
  CHECK(help.code == 0);
  CHECK(help.out.find("weights") != std::string::npos);
  CHECK(help.out.find("riesz") != std::string::npos);

  auto ok = run_cli("weights --weight bergman:1 -N 64 --no-meta");
  REQUIRE(ok.code == 0);
  CHECK(ok.err.empty());
  json j = json::parse(ok.out);
  CHECK(j.at("schema").get<std::string>() == "hlab-report/1");
  CHECK(j.at("command").get<std::string>() == "weights");
  CHECK(j.at("results").at("weight").get<std::string>() == "bergman:1");
  CHECK(j.at("exit_code").get<int>() == 0);
  CHECK(!j.contains("meta"));

  // Without --no-meta the report carries provenance.
  auto meta = run_cli("weights --weight bergman:1 -N 64");
  REQUIRE(meta.code == 0);
  json mj = json::parse(meta.out);
  REQUIRE(mj.contains("meta"));
  CHECK(mj.at("meta").at("version").get<std::string>() == "0.1.0");
}

TEST_CASE("cli: error paths exit 1 with a diagnostic") {
  auto bad_spec = run_cli("weights --weight bergman:x");
  CHECK(bad_spec.code == 1);
  CHECK(bad_spec.out.empty());
  CHECK(bad_spec.err.rfind("error:", 0) == 0);
  CHECK(bad_spec.err.find("bergman") != std::string::npos);

  auto missing = run_cli("weights");
  CHECK(missing.code == 1);
  CHECK(missing.err.rfind("error:", 0) == 0);

  auto bad_file = run_cli("weights --weight file:/tmp/hlab_cli_nofile.txt");
  CHECK(bad_file.code == 1);
  CHECK(bad_file.err.find("cannot open") != std::string::npos);

  // Argument-parser failures are also nonzero and never look like verdicts.
  auto unknown = run_cli("frobnicate");
  CHECK(unknown.code != 0);
  CHECK(unknown.code != 2);
  CHECK(!unknown.err.empty());
}

TEST_CASE("cli: expectation mismatch exits 2, match exits 0") {
  const std::string base =
      "riesz --weight bergman:1 --family monomials --ladder 16,32 --no-meta";
  auto hit = run_cli(base + " --expect riesz");
  REQUIRE(hit.code == 0);
  json hj = json::parse(hit.out);
  CHECK(hj.at("results").at("verdict").get<std::string>() == "RieszEvidence");

  auto miss = run_cli(base + " --expect not-bounded");
  REQUIRE(miss.code == 2);  // ran fine, verdict disagreed
  json mj = json::parse(miss.out);
  CHECK(mj.at("exit_code").get<int>() == 2);
  CHECK(mj.at("results").at("expected").get<std::string>() == "NotBounded");
  CHECK(mj.at("results").at("verdict").get<std::string>() == "RieszEvidence");

  auto ix = run_cli("index --symbol poly:-2,1 --expect-index -1 --no-meta");
  CHECK(ix.code == 2);
  auto ix0 = run_cli("index --symbol poly:-2,1 --expect-index 0 --no-meta");
  CHECK(ix0.code == 0);
}

TEST_CASE("cli: --no-meta reruns are byte-identical") {
  const std::string cmd =
      "growth --symbol mobius:0.5,0 --weight bergman:1 --n 1,2,4 "
      "--ladder 64 --no-meta";
  auto first = run_cli(cmd);
  auto second = run_cli(cmd);
  REQUIRE(first.code == 0);
  CHECK(first.out == second.out);
  CHECK(!first.out.empty());
}

TEST_CASE("cli: --output diverts the report to a file") {
  const std::string path = "/tmp/hlab_cli_report.json";
  auto r = run_cli("weights --weight dirichlet:1 -N 64 --no-meta --output " +
                   path);
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());  // nothing on stdout when --output is given
  json j = json::parse(slurp(path));
  CHECK(j.at("results").at("weight").get<std::string>() == "dirichlet:1");
  std::remove(path.c_str());
}

TEST_CASE("cli: --csv writes the tabular view") {
  const std::string path = "/tmp/hlab_cli_view.csv";
  auto g = run_cli("growth --symbol mobius:0.5,0 --weight bergman:1 "
                   "--n 1,2,4 --ladder 64 --no-meta --csv " + path);
  REQUIRE(g.code == 0);
  std::string csv = slurp(path);
  CHECK(csv.rfind("n,r,log_r", 0) == 0);
  // header + one row per requested power
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

  auto r = run_cli("riesz --weight bergman:1 --family monomials "
                   "--ladder 16,32 --no-meta --csv " + path);
  REQUIRE(r.code == 0);
  csv = slurp(path);
  CHECK(csv.rfind("N,sigma_max,sigma_min", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  std::remove(path.c_str());
}

TEST_CASE("cli: --dump-matrix emits the documented binary layout") {
  const std::string path = "/tmp/hlab_cli_gram.bin";
  auto r = run_cli("gram --weight bergman:1 --family random --seed 3 "
                   "--ladder 12 --no-meta --dump-matrix " + path);
  REQUIRE(r.code == 0);

  std::string blob = slurp(path);
  REQUIRE(blob.size() == 16 + 12 * 12 * 2 * sizeof(double));
  CHECK(std::memcmp(blob.data(), "HLAB", 4) == 0);
  std::uint32_t n = 0;
  std::memcpy(&n, blob.data() + 4, 4);
  REQUIRE(n == 12);

  // For sizes <= 16 the JSON report embeds the same matrix; the binary dump
  // must agree entry for entry (JSON doubles round-trip exactly).
  json j = json::parse(r.out);
  const auto& jm = j.at("results").at("matrix");
  REQUIRE(jm.size() == n);
  const double* data = reinterpret_cast<const double*>(blob.data() + 16);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t k = 0; k < n; ++k) {
      CHECK(data[2 * (i * n + k)] == jm[i][k][0].get<double>());
      CHECK(data[2 * (i * n + k) + 1] == jm[i][k][1].get<double>());
    }
  }
  // A Gram matrix is Hermitian with a real positive diagonal.
  for (std::uint32_t i = 0; i < n; ++i) {
    CHECK(data[2 * (i * n + i)] > 0.0);
    CHECK(data[2 * (i * n + i) + 1] == doctest::Approx(0.0).epsilon(1e-14));
    for (std::uint32_t k = 0; k < n; ++k) {
      CHECK(data[2 * (i * n + k)] ==
            doctest::Approx(data[2 * (k * n + i)]).epsilon(1e-12));
      CHECK(data[2 * (i * n + k) + 1] ==
            doctest::Approx(-data[2 * (k * n + i) + 1]).epsilon(1e-12));
    }
  }
  std::remove(path.c_str());
}

TEST_CASE("cli: --config supplies defaults, flags override") {
  auto cfg = write_temp("hlab_cli_cfg.txt",
                        "# comment lines and blanks are skipped\n\n"
                        "weight = bergman:1\n"
                        "ladder = 64\n"
                        "no_meta = 1\n");
  auto from_file = run_cli("weights --config " + cfg);
  REQUIRE(from_file.code == 0);
  json j = json::parse(from_file.out);
  CHECK(j.at("results").at("weight").get<std::string>() == "bergman:1");

  auto overridden = run_cli("weights --config " + cfg + " --weight dirichlet:1");
  REQUIRE(overridden.code == 0);
  json oj = json::parse(overridden.out);
  CHECK(oj.at("results").at("weight").get<std::string>() == "dirichlet:1");
  std::remove(cfg.c_str());

  auto gone = run_cli("weights --config /tmp/hlab_cli_missing_cfg.txt");
  CHECK(gone.code != 0);
  CHECK(!gone.err.empty());
}
