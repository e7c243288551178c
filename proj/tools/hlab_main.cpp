// hlab command-line interface.
//
// Every subcommand assembles a flat key=value config and hands it to the
// shared library; the CLI itself contains no mathematics. Exit codes:
//   0  success
//   1  execution error (malformed specs, I/O, precondition violations)
//   2  the experiment ran but reached a negative mathematical verdict
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "hlab/hlab.h"

namespace {

using KV = std::map<std::string, std::string>;

// Lowest-precedence layer: key=value lines from --config FILE.
void load_config_file(const std::string& path, KV& kv) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    const auto a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    const auto b = line.find_last_not_of(" \t\r");
    const std::string t = line.substr(a, b - a + 1);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--config", "expected key=value, got '" + t + "'");
    auto trim = [](std::string s) {
      const auto x = s.find_first_not_of(" \t");
      const auto y = s.find_last_not_of(" \t");
      return x == std::string::npos ? std::string() : s.substr(x, y - x + 1);
    };
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
}

std::string to_text(const KV& kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

struct SubOpts {
  CLI::App* sub;
  KV* kv;

  // Registers a string-valued option that lands verbatim in the config.
  void opt(const std::string& flag, const std::string& key,
           const std::string& help) {
    auto* kvp = kv;
    sub->add_option_function<std::string>(
        flag, [kvp, key](const std::string& v) { (*kvp)[key] = v; }, help);
  }
  void flag(const std::string& flag_name, const std::string& key,
            const std::string& help) {
    auto* kvp = kv;
    sub->add_flag_function(
        flag_name,
        [kvp, key](std::int64_t n) {
          if (n > 0) (*kvp)[key] = "true";
        },
        help);
  }

  void weight(bool secondary = false) {
    if (!secondary) {
      opt("--weight", "weight",
          "weight spec: bergman:a | dirichlet:l | sobolev | logrecip | "
          "powerlog | flipbergman:a:seed | constant | file:PATH");
      flag("--invert", "invert", "replace w_k by 1/w_k");
      flag("--lift", "lift", "replace beta_n by (n+1) beta_n");
    } else {
      opt("--weight2", "weight2", "second weight spec (comparison side)");
      flag("--invert2", "invert2", "invert the second weight");
      flag("--lift2", "lift2", "lift the second weight");
    }
  }
  void symbol(const std::string& help) {
    opt("--symbol", "symbol", help);
  }
  void ladder(const std::string& help) {
    opt("--ladder", "ladder", help);
    opt("-N,--order", "ladder", "single truncation order (same key as --ladder)");
  }
  void tolerances() {
    auto* kvp = kv;
    sub->add_option_function<std::vector<std::string>>(
        "--tol",
        [kvp](const std::vector<std::string>& entries) {
          for (const auto& e : entries) {
            const auto eq = e.find('=');
            if (eq == std::string::npos || eq == 0)
              throw CLI::ValidationError("--tol", "expected NAME=VALUE");
            (*kvp)["tol." + e.substr(0, eq)] = e.substr(eq + 1);
          }
        },
        "tolerance override NAME=VALUE (repeatable); names: sigma, plateau, "
        "collapse, residual, identities");
  }
  void output() {
    opt("--output", "output", "write the JSON report here instead of stdout");
    opt("--csv", "csv", "write the CSV view to this file");
    opt("--dump-matrix", "dump_matrix",
        "write the command's matrix (binary: magic HLAB, u32 N, row-major "
        "re/im float64 pairs)");
    flag("--no-meta", "no_meta",
         "omit the meta block (timestamps) for byte-identical reruns");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "hlab: weighted Hardy space workbench.\n"
      "Sequence-space experiments on H^2_beta: Riesz-base ladders, similarity\n"
      "intertwiners, growth traces, lower bounds, and Fredholm indices."};
  app.require_subcommand(1);

  KV kv;
  std::string config_path;

  auto make_sub = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path,
                    "key=value config file (flags override its entries)");
    sub->parse_complete_callback([&kv, &config_path, sub, name]() {
      KV merged;
      if (!config_path.empty()) load_config_file(config_path, merged);
      for (const auto& [k, v] : kv) merged[k] = v;
      merged["command"] = name;
      kv = std::move(merged);
    });
    return SubOpts{sub, &kv};
  };

  {
    auto s = make_sub("weights", "sample a weight sequence and classify its growth");
    s.weight();
    s.opt("--n", "n", "comma list of indices k to sample (default powers of 2)");
    s.ladder("classification window (default 4096)");
    s.output();
  }
  {
    auto s = make_sub("series", "expand a symbol as a truncated power series");
    s.symbol("symbol spec: poly:c0,c1,... | mobius:re,im[,theta] | "
             "blaschke:re,im;re,im[,theta]");
    s.weight();
    s.ladder("truncation order (default 32)");
    s.output();
  }
  {
    auto s = make_sub("gram", "Gram matrix of a family, direct vs factored");
    s.weight();
    s.symbol("family symbol (mobius powers or blaschke kernels)");
    s.opt("--family", "family", "monomials | mobius | blaschke | random");
    s.opt("--seed", "seed", "seed for --family random");
    s.ladder("family size (default 16)");
    s.output();
  }
  {
    auto s = make_sub("riesz", "Riesz-base ladder verdict for a family");
    s.weight();
    s.symbol("family symbol (mobius powers or blaschke kernels)");
    s.opt("--family", "family", "monomials | mobius | blaschke | random");
    s.opt("--seed", "seed", "seed for --family random");
    s.ladder("truncation ladder, e.g. 128,256,512 (default)");
    s.opt("--expect", "expect",
          "expected verdict (exit 2 on mismatch): riesz | not-lower-bounded | "
          "not-bounded | inconclusive");
    s.tolerances();
    s.output();
    s.sub->footer("CSV columns: N,sigma_max,sigma_min");
  }
  {
    auto s = make_sub("growth", "trace r_n = ||phi^n||/beta_n against n");
    s.weight();
    s.symbol("mobius:re,im[,theta]");
    s.opt("--n", "n", "comma list of powers n (required)");
    s.ladder("series truncation (default 4*max n)");
    s.opt("--expect", "expect", "'increasing' (exit 2 if the trace is not)");
    s.output();
    s.sub->footer("CSV columns: n,r,log_r");
  }
  {
    auto s = make_sub("dnlower", "H^2 lower bound for (phi_t')^alpha on a grid");
    s.opt("--t", "t", "comma list of t in (0,1) (default 0.3,0.6,0.9)");
    s.opt("--alpha", "alpha", "comma list of alpha > 1/2 (default 0.75,1,2,4)");
    s.ladder("series truncation (default 8192)");
    s.output();
    s.sub->footer("CSV columns: t,alpha,norm,bound,pass");
  }
  {
    auto s = make_sub("blower", "Bergman-space lower bound for phi_t^n");
    s.opt("--t", "t", "parameter t in (0,1) (default 0.5)");
    s.opt("--alpha", "alpha", "Bergman parameter alpha > 1/2 (default 1)");
    s.opt("--n", "n", "comma list of powers n (default 4)");
    s.ladder("series truncation (default max(256, 4*max n))");
    s.output();
  }
  {
    auto s = make_sub("cowen", "boundedness transfer between two weights");
    s.weight();
    s.weight(/*secondary=*/true);
    s.symbol("transfer symbol psi with psi(0)=0");
    s.ladder("truncation order (default 256)");
    s.output();
  }
  {
    auto s = make_sub("index", "Fredholm index of M_{f - lambda} by winding");
    s.symbol("symbol f: poly or blaschke");
    s.opt("--lambda", "lambda", "complex point re[,im] (default 0,0)");
    s.opt("--expect-index", "expect_index",
          "expected index (exit 2 on mismatch)");
    s.ladder("series truncation for non-polynomial symbols (default 64)");
    s.output();
  }
  {
    auto s = make_sub("intertwine",
                      "build and verify a similarity intertwiner ladder");
    s.weight();
    s.symbol("mobius map (composition) or blaschke product (kernel basis)");
    s.ladder("truncation ladder (default 256)");
    s.flag("--identities", "identities",
           "also verify the closed-form inner-product identities (mobius)");
    s.opt("--n", "n", "identity indices i[,j] (default 3,3)");
    s.tolerances();
    s.output();
  }
  {
    auto s = make_sub("expand", "expand f in powers of a mobius map");
    s.symbol("mobius:re,im[,theta]");
    s.opt("--symbol2", "symbol2", "the function f to expand (default poly:0,1)");
    s.ladder("truncation order (default 256)");
    s.tolerances();
    s.output();
  }
  {
    auto s = make_sub("compose-check", "verify f = h(B) for a blaschke B");
    s.symbol("blaschke product B");
    s.opt("--symbol2", "symbol2", "outer function h");
    s.opt("--symbol3", "symbol3", "target function f");
    s.ladder("truncation order (default 256)");
    s.tolerances();
    s.output();
  }
  {
    auto s = make_sub("bench", "convolution and SVD benchmarks");
    s.ladder("sizes to benchmark (default 1024,4096,16384)");
    s.opt("--seed", "seed", "series generator seed (default 42)");
    s.output();
    s.sub->footer("CSV columns: N,naive_ns,fft_ns,speedup,agreement,svd_n,svd_ns");
  }

  CLI11_PARSE(app, argc, argv);

  hlab_report* report = nullptr;
  const hlab_status st = hlab_run_config_text(to_text(kv).c_str(), &report);
  if (st != HLAB_OK) {
    std::fprintf(stderr, "error: %s\n", hlab_last_error());
    return 1;
  }
  if (!kv.count("output")) std::fputs(hlab_report_json(report), stdout);
  const int code = hlab_report_exit_code(report);
  hlab_report_free(report);
  return code;
}
