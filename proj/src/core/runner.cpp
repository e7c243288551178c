#include "core/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <memory>
#include <random>
#include <stdexcept>

#include "core/diagnostics.hpp"
#include "core/fft.hpp"
#include "core/matrix_io.hpp"
#include "core/similarity.hpp"
#include "core/specs.hpp"

namespace hlab {

using json = nlohmann::ordered_json;

namespace {

std::string iso_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string csv_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

WeightSequence weight_from(const ExperimentConfig& cfg, bool secondary = false) {
  const std::string key = secondary ? "weight2" : "weight";
  if (!cfg.has(key))
    throw std::invalid_argument("config: command requires key '" + key + "'");
  WeightSequence seq = parse_weight_spec(cfg.get_string(key));
  if (cfg.get_bool(secondary ? "invert2" : "invert")) seq = seq.invert();
  if (cfg.get_bool(secondary ? "lift2" : "lift")) seq = seq.lift();
  return seq;
}

SymbolSpec symbol_from(const ExperimentConfig& cfg, const std::string& key) {
  if (!cfg.has(key))
    throw std::invalid_argument("config: command requires key '" + key + "'");
  return parse_symbol_spec(cfg.get_string(key));
}

std::vector<int> ladder_from(const ExperimentConfig& cfg,
                             std::vector<int> fallback) {
  const std::vector<long> raw = cfg.get_longs("ladder");
  if (raw.empty()) return fallback;
  std::vector<int> out;
  for (long v : raw) {
    if (v <= 0 || v > (1 << 24))
      throw std::invalid_argument("config: ladder entries must be in [1, 2^24]");
    out.push_back(static_cast<int>(v));
  }
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1])
      throw std::invalid_argument("config: ladder must be strictly increasing");
  return out;
}

json complex_json(cplx v) { return json::array({v.real(), v.imag()}); }

json coeffs_json(const PowerSeries& f, std::size_t cap = 64) {
  json arr = json::array();
  for (std::size_t k = 0; k < f.size() && k < cap; ++k)
    arr.push_back(complex_json(f[k]));
  return arr;
}

json matrix_json(const Matrix& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(complex_json(M(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json bounds_json(const SingularBounds& b) {
  return json{{"sigma_max", b.sigma_max},
              {"sigma_min", b.sigma_min},
              {"rows", b.rows},
              {"cols", b.cols}};
}

json intertwiner_json(const IntertwinerReport& r) {
  return json{{"N", r.N},
              {"residual_exact", r.residual_exact},
              {"exact_region", r.exact_region},
              {"residual_tail", r.residual_tail},
              {"tail_region", r.tail_region},
              {"invertibility", bounds_json(r.invertibility)}};
}

// Family selection shared by `gram` and `riesz`: explicit `family` key wins,
// otherwise the symbol kind decides, otherwise monomials.
FamilyBuilder family_from(const ExperimentConfig& cfg) {
  const std::string requested = cfg.get_string("family");
  if (requested == "monomials") return monomial_family();
  if (requested == "random") return random_family(cfg.get_u64("seed", 42));
  if (!requested.empty() && requested != "mobius" && requested != "blaschke")
    throw std::invalid_argument("config: unknown family '" + requested + "'");
  if (requested.empty() && !cfg.has("symbol")) return monomial_family();
  const SymbolSpec sym = symbol_from(cfg, "symbol");
  if (requested == "mobius" || (requested.empty() && sym.kind == SymbolSpec::Kind::Mobius)) {
    if (sym.kind != SymbolSpec::Kind::Mobius)
      throw std::invalid_argument("config: family 'mobius' needs a mobius symbol");
    return mobius_power_family(*sym.mobius);
  }
  if (requested == "blaschke" || (requested.empty() && sym.kind == SymbolSpec::Kind::Blaschke)) {
    if (sym.kind != SymbolSpec::Kind::Blaschke)
      throw std::invalid_argument("config: family 'blaschke' needs a blaschke symbol");
    return blaschke_kernel_family(*sym.blaschke);
  }
  throw std::invalid_argument(
      "config: cannot build a family from symbol '" + sym.text + "'");
}

struct CommandResult {
  json results;
  std::string csv;
  int exit_code = 0;
  // Commands with a natural matrix view park it here for --dump-matrix.
  std::unique_ptr<Matrix> dump;
};

CommandResult cmd_weights(const ExperimentConfig& cfg) {
  const WeightSequence seq = weight_from(cfg);
  const long window = ladder_from(cfg, {4096}).back();
  std::vector<long> samples = cfg.get_longs("n");
  if (samples.empty())
    for (long k = 1; k <= std::min(window, 1024L); k *= 2) samples.push_back(k);
  const GrowthVerdict verdict = classify_growth(seq, window);

  CommandResult out;
  out.results["weight"] = seq.label();
  out.results["anomalous"] = seq.anomalous();
  json growth{{"class", growth_class_name(verdict.cls)},
              {"empirical_sup", verdict.empirical_sup},
              {"analytic_bound", nullptr},
              {"window", verdict.window},
              {"decade_ratio", verdict.decade_ratio}};
  if (verdict.analytic_bound) growth["analytic_bound"] = *verdict.analytic_bound;
  out.results["growth"] = std::move(growth);
  json arr = json::array();
  for (long k : samples) {
    if (k < 1) throw std::invalid_argument("weights: sample indices must be >= 1");
    arr.push_back(json{{"k", k},
                       {"w", seq.w(k)},
                       {"beta", seq.beta(k)},
                       {"log_beta", seq.log_beta(k)}});
  }
  out.results["samples"] = std::move(arr);
  return out;
}

CommandResult cmd_series(const ExperimentConfig& cfg) {
  const SymbolSpec sym = symbol_from(cfg, "symbol");
  const int N = ladder_from(cfg, {32}).back();
  const PowerSeries f = symbol_series(sym, N);

  CommandResult out;
  out.results["symbol"] = sym.text;
  out.results["order"] = N;
  out.results["coeffs"] = coeffs_json(f);
  out.results["coeffs_shown"] = std::min<std::size_t>(f.size(), 64);
  if (cfg.has("weight")) {
    const WeightSequence seq = weight_from(cfg);
    const double ln = weighted_log_norm(f, seq);
    out.results["weight"] = seq.label();
    out.results["log_norm"] = ln;
    out.results["norm"] = std::exp(ln);
  }
  out.dump = std::make_unique<Matrix>(mult_matrix(f, N));
  return out;
}

CommandResult cmd_gram(const ExperimentConfig& cfg) {
  const WeightSequence seq = weight_from(cfg);
  const FamilyBuilder fam = family_from(cfg);
  const int N = ladder_from(cfg, {16}).back();
  const std::vector<PowerSeries> F = fam.build(N);
  const Matrix G = gram(normalize_family(F, seq), seq);
  const Matrix Gf = gram_factored(F, seq);
  const double factored_dev = (G - Gf).cwiseAbs().maxCoeff();
  const double hermitian_dev = (G - G.adjoint()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Matrix> eig((G + G.adjoint()) / 2.0);

  CommandResult out;
  out.results["family"] = fam.label;
  out.results["weight"] = seq.label();
  out.results["N"] = N;
  out.results["factored_dev"] = factored_dev;
  out.results["hermitian_dev"] = hermitian_dev;
  out.results["eig_min"] = eig.eigenvalues().minCoeff();
  out.results["eig_max"] = eig.eigenvalues().maxCoeff();
  if (N <= 16) out.results["matrix"] = matrix_json(G);
  out.dump = std::make_unique<Matrix>(G);
  return out;
}

CommandResult cmd_riesz(const ExperimentConfig& cfg) {
  const WeightSequence seq = weight_from(cfg);
  const FamilyBuilder fam = family_from(cfg);
  const std::vector<int> ladder = ladder_from(cfg, {128, 256, 512});
  const double tol = cfg.tolerance("sigma", 1e-6);
  const double plateau = cfg.tolerance("plateau", 0.05);
  const double collapse = cfg.tolerance("collapse", 0.25);
  const RieszReport rep = riesz_verdict(fam, seq, ladder, tol, plateau, collapse);

  CommandResult out;
  out.results["family"] = rep.family;
  out.results["weight"] = rep.weight;
  json rungs = json::array();
  out.csv = "N,sigma_max,sigma_min\n";
  for (const auto& r : rep.rungs) {
    rungs.push_back(json{{"N", r.N},
                         {"sigma_max", r.bounds.sigma_max},
                         {"sigma_min", r.bounds.sigma_min},
                         {"rows", r.bounds.rows},
                         {"cols", r.bounds.cols}});
    out.csv += std::to_string(r.N) + "," + csv_real(r.bounds.sigma_max) + "," +
               csv_real(r.bounds.sigma_min) + "\n";
  }
  out.results["rungs"] = std::move(rungs);
  out.results["verdict"] = riesz_class_name(rep.verdict);
  out.results["tol"] = rep.tol;
  out.results["plateau"] = rep.plateau;
  out.results["collapse"] = rep.collapse;
  if (cfg.has("expect")) {
    const RieszClass want = riesz_class_from_name(cfg.get_string("expect"));
    out.results["expected"] = riesz_class_name(want);
    if (want != rep.verdict) out.exit_code = 2;
  }
  return out;
}

CommandResult cmd_growth(const ExperimentConfig& cfg) {
  const WeightSequence seq = weight_from(cfg);
  const SymbolSpec sym = symbol_from(cfg, "symbol");
  if (sym.kind != SymbolSpec::Kind::Mobius)
    throw std::invalid_argument("growth: symbol must be a mobius map");
  const std::vector<long> n_list = cfg.get_longs("n");
  if (n_list.empty())
    throw std::invalid_argument("growth: key 'n' (power list) is required");
  const long nmax = *std::max_element(n_list.begin(), n_list.end());
  const int N = ladder_from(cfg, {int(4 * std::max(nmax, 1L))}).back();
  const GrowthTrace tr = growth_trace(*sym.mobius, seq, n_list, N);

  CommandResult out;
  out.results["weight"] = tr.weight;
  out.results["symbol"] = tr.symbol;
  out.results["N"] = tr.N;
  json pts = json::array();
  out.csv = "n,r,log_r\n";
  for (std::size_t i = 0; i < tr.n.size(); ++i) {
    pts.push_back(json{{"n", tr.n[i]},
                       {"log_r", tr.log_r[i]},
                       {"r", std::exp(tr.log_r[i])}});
    out.csv += std::to_string(tr.n[i]) + "," + csv_real(std::exp(tr.log_r[i])) +
               "," + csv_real(tr.log_r[i]) + "\n";
  }
  out.results["points"] = std::move(pts);
  // monotonicity of log r_n in n (computed on the points sorted by n)
  std::vector<std::size_t> idx(tr.n.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return tr.n[a] < tr.n[b]; });
  bool increasing = true;
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (tr.log_r[idx[i]] <= tr.log_r[idx[i - 1]]) increasing = false;
  out.results["increasing"] = increasing;
  if (cfg.has("expect")) {
    const std::string want = cfg.get_string("expect");
    if (want != "increasing")
      throw std::invalid_argument("growth: expect only supports 'increasing'");
    out.results["expected"] = want;
    if (!increasing) out.exit_code = 2;
  }
  return out;
}

CommandResult cmd_dnlower(const ExperimentConfig& cfg) {
  std::vector<double> ts = cfg.get_reals("t");
  std::vector<double> alphas = cfg.get_reals("alpha");
  if (ts.empty()) ts = {0.3, 0.6, 0.9};
  if (alphas.empty()) alphas = {0.75, 1.0, 2.0, 4.0};
  const int N = ladder_from(cfg, {8192}).back();

  CommandResult out;
  out.results["N"] = N;
  json arr = json::array();
  out.csv = "t,alpha,norm,bound,pass\n";
  bool all_pass = true;
  for (double t : ts)
    for (double a : alphas) {
      const DnLowerReport r = dnlower_check(t, a, N);
      all_pass = all_pass && r.pass;
      arr.push_back(json{{"t", r.t},
                         {"alpha", r.alpha},
                         {"norm", r.norm},
                         {"bound", r.bound},
                         {"pass", r.pass}});
      out.csv += csv_real(r.t) + "," + csv_real(r.alpha) + "," + csv_real(r.norm) +
                 "," + csv_real(r.bound) + "," + (r.pass ? "1" : "0") + "\n";
    }
  out.results["points"] = std::move(arr);
  out.results["pass"] = all_pass;
  if (!all_pass) out.exit_code = 2;
  return out;
}

CommandResult cmd_blower(const ExperimentConfig& cfg) {
  const std::vector<double> ts = cfg.get_reals("t");
  const std::vector<double> alphas = cfg.get_reals("alpha");
  const double t = ts.empty() ? 0.5 : ts.front();
  const double alpha = alphas.empty() ? 1.0 : alphas.front();
  std::vector<long> n_list = cfg.get_longs("n");
  if (n_list.empty()) n_list = {4};
  const long nmax = *std::max_element(n_list.begin(), n_list.end());
  const int N = ladder_from(cfg, {std::max(256, int(4 * nmax))}).back();

  CommandResult out;
  out.results["t"] = t;
  out.results["alpha"] = alpha;
  out.results["N"] = N;
  json arr = json::array();
  bool all_pass = true;
  for (long n : n_list) {
    const BLowerReport r = blower_check(t, alpha, n, N);
    all_pass = all_pass && r.pass;
    arr.push_back(json{{"n", r.n}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"pass", r.pass}});
  }
  out.results["points"] = std::move(arr);
  out.results["pass"] = all_pass;
  if (!all_pass) out.exit_code = 2;
  return out;
}

CommandResult cmd_cowen(const ExperimentConfig& cfg) {
  const WeightSequence a = weight_from(cfg);
  const WeightSequence b = weight_from(cfg, /*secondary=*/true);
  const SymbolSpec sym = symbol_from(cfg, "symbol");
  const int N = ladder_from(cfg, {256}).back();
  const PowerSeries psi = symbol_series(sym, N);
  const CowenReport rep = cowen_transfer_check(psi, a, b, N);

  CommandResult out;
  out.results["weight_a"] = rep.weight_a;
  out.results["weight_b"] = rep.weight_b;
  out.results["symbol"] = sym.text;
  out.results["N"] = rep.N;
  out.results["sigma_a"] = rep.sigma_a;
  out.results["sigma_b"] = rep.sigma_b;
  out.results["pass"] = rep.pass;
  if (!rep.pass) out.exit_code = 2;
  return out;
}

CommandResult cmd_index(const ExperimentConfig& cfg) {
  const SymbolSpec sym = symbol_from(cfg, "symbol");
  const cplx lambda = cfg.get_complex("lambda", cplx(0.0, 0.0));
  int order = 64;
  if (sym.kind == SymbolSpec::Kind::Poly)
    order = static_cast<int>(sym.poly.size());
  const int N = std::max(order, ladder_from(cfg, {64}).back());
  const PowerSeries f = symbol_series(sym, N);
  const int grid = int(next_pow2(std::max<std::size_t>(4 * f.size(), 16)));
  const IndexReport rep = fredholm_index(f, lambda, grid);

  CommandResult out;
  out.results["symbol"] = sym.text;
  out.results["lambda"] = complex_json(lambda);
  out.results["order"] = N;
  out.results["index"] = rep.index;
  out.results["winding"] = rep.winding;
  out.results["grid"] = rep.grid;
  out.results["residual"] = rep.residual;
  if (cfg.has("expect_index")) {
    const long want = cfg.get_long("expect_index", 0);
    out.results["expected_index"] = want;
    if (want != rep.index) out.exit_code = 2;
  }
  return out;
}

CommandResult cmd_intertwine(const ExperimentConfig& cfg) {
  const WeightSequence seq = weight_from(cfg);
  const SymbolSpec sym = symbol_from(cfg, "symbol");
  const std::vector<int> ladder = ladder_from(cfg, {256});
  const double tol = cfg.tolerance("residual", 1e-8);

  CommandResult out;
  out.results["symbol"] = sym.text;
  out.results["weight"] = seq.label();
  json reports = json::array();
  double last_exact = 0.0;
  if (sym.kind == SymbolSpec::Kind::Mobius) {
    for (int N : ladder) {
      const IntertwinerReport r = composition_intertwiner(*sym.mobius, seq, N);
      last_exact = r.residual_exact;
      reports.push_back(intertwiner_json(r));
    }
  } else if (sym.kind == SymbolSpec::Kind::Blaschke) {
    json gram_block;
    for (int N : ladder) {
      const BlaschkeIntertwinerReport r = blaschke_intertwiner(*sym.blaschke, seq, N);
      last_exact = r.base.residual_exact;
      json one = intertwiner_json(r.base);
      one["m"] = r.m;
      reports.push_back(std::move(one));
      gram_block = matrix_json(r.gram_block);
    }
    out.results["gram_block"] = std::move(gram_block);
  } else {
    throw std::invalid_argument("intertwine: symbol must be mobius or blaschke");
  }
  out.results["reports"] = std::move(reports);

  bool pass = last_exact <= tol;
  if (cfg.get_bool("identities")) {
    if (sym.kind != SymbolSpec::Kind::Mobius)
      throw std::invalid_argument("intertwine: identities need a mobius symbol");
    const std::vector<long> ij = cfg.get_longs("n");
    const int i = ij.size() > 0 ? int(ij[0]) : 3;
    const int j = ij.size() > 1 ? int(ij[1]) : i;
    const InnerIdentityReport idr =
        verify_inner_identities(sym.mobius->z0, i, j, ladder.back());
    json ident{{"i", idr.i},
               {"j", idr.j},
               {"N", idr.N},
               {"kb_kb", complex_json(idr.kb_kb.value)},
               {"kzb_kzb", complex_json(idr.kzb_kzb.value)},
               {"kzb_kb", complex_json(idr.kzb_kb.value)},
               {"dev_max", idr.dev_max}};
    out.results["identities"] = std::move(ident);
    pass = pass && idr.dev_max <= cfg.tolerance("identities", 1e-6);
  }
  out.results["pass"] = pass;
  if (!pass) out.exit_code = 2;
  return out;
}

CommandResult cmd_expand(const ExperimentConfig& cfg) {
  const SymbolSpec sym = symbol_from(cfg, "symbol");
  if (sym.kind != SymbolSpec::Kind::Mobius)
    throw std::invalid_argument("expand: symbol must be the mobius map");
  const int N = ladder_from(cfg, {256}).back();
  const SymbolSpec fsym = cfg.has("symbol2")
                              ? symbol_from(cfg, "symbol2")
                              : parse_symbol_spec("poly:0,1");
  const PowerSeries f = symbol_series(fsym, N);
  const ExpandReport rep = mobius_power_expand(f, *sym.mobius);
  const double tol = cfg.tolerance("residual", 1e-8);
  const bool pass = rep.recon_residual_rel <= tol;

  CommandResult out;
  out.results["symbol"] = sym.text;
  out.results["f"] = fsym.text;
  out.results["N"] = rep.N;
  out.results["lambda"] = coeffs_json(rep.lambda);
  out.results["recon_residual"] = rep.recon_residual;
  out.results["recon_residual_rel"] = rep.recon_residual_rel;
  out.results["tail_estimate"] = rep.tail_estimate;
  out.results["pass"] = pass;
  if (!pass) out.exit_code = 2;
  return out;
}

CommandResult cmd_compose_check(const ExperimentConfig& cfg) {
  const SymbolSpec bsym = symbol_from(cfg, "symbol");
  if (bsym.kind != SymbolSpec::Kind::Blaschke)
    throw std::invalid_argument("compose-check: symbol must be a blaschke product");
  const SymbolSpec hsym = symbol_from(cfg, "symbol2");
  const SymbolSpec fsym = symbol_from(cfg, "symbol3");
  const int N = ladder_from(cfg, {256}).back();
  const PowerSeries h = symbol_series(hsym, N);
  const PowerSeries f = symbol_series(fsym, N);
  const ComposeCheckReport rep = check_h_circ_B(f, h, *bsym.blaschke, N);
  const double tol = cfg.tolerance("residual", 1e-8);
  const bool pass = rep.residual <= tol;

  CommandResult out;
  out.results["B"] = bsym.text;
  out.results["h"] = hsym.text;
  out.results["f"] = fsym.text;
  out.results["N"] = rep.N;
  out.results["residual"] = rep.residual;
  out.results["precomposed"] = rep.precomposed;
  out.results["pass"] = pass;
  if (!pass) out.exit_code = 2;
  return out;
}

CommandResult cmd_bench(const ExperimentConfig& cfg) {
  const std::vector<int> sizes = ladder_from(cfg, {1024, 4096, 16384});
  std::mt19937_64 rng(cfg.get_u64("seed", 42));
  std::normal_distribution<double> gauss(0.0, 1.0);
  const WeightSequence bench_weight = WeightSequence::bergman(1.0);
  const MobiusMap bench_map(cplx(0.5, 0.0));

  CommandResult out;
  json arr = json::array();
  out.csv = "N,naive_ns,fft_ns,speedup,agreement,svd_n,svd_ns\n";
  using clock = std::chrono::steady_clock;
  for (int N : sizes) {
    PowerSeries f(static_cast<size_t>(N)), g(static_cast<size_t>(N));
    for (int k = 0; k < N; ++k) {
      f[size_t(k)] = cplx(gauss(rng), gauss(rng));
      g[size_t(k)] = cplx(gauss(rng), gauss(rng));
    }
    auto t0 = clock::now();
    const PowerSeries naive = mul(f, g, MulPolicy::Naive);
    auto t1 = clock::now();
    const PowerSeries fast = mul(f, g, MulPolicy::Fft);
    auto t2 = clock::now();
    double maxabs = 1.0, maxdiff = 0.0;
    for (int k = 0; k < N; ++k) {
      maxabs = std::max(maxabs, std::abs(naive[size_t(k)]));
      maxdiff = std::max(maxdiff, std::abs(naive[size_t(k)] - fast[size_t(k)]));
    }
    const double agreement = maxdiff / maxabs;
    if (agreement > 1e-10)
      throw std::runtime_error("bench: naive/FFT disagreement " +
                               std::to_string(agreement) + " at N=" +
                               std::to_string(N));
    // SVD leg: the riesz-rung decomposition, capped so huge convolution sizes
    // do not drag in an O(N^3) factorization.
    const int svd_n = std::min(N, 512);
    const std::vector<PowerSeries> F = mobius_power_family(bench_map).build(svd_n);
    const Matrix X = scale_conjugate(transformation_matrix(F, svd_n), bench_weight,
                                     ScaleDirection::Beta);
    auto t3 = clock::now();
    const SingularBounds sb =
        singular_bounds(X, svd_n, int((svd_n * 4 + 4) / 5));
    auto t4 = clock::now();
    (void)sb;
    const double naive_ns = std::chrono::duration<double, std::nano>(t1 - t0).count();
    const double fft_ns = std::chrono::duration<double, std::nano>(t2 - t1).count();
    const double svd_ns = std::chrono::duration<double, std::nano>(t4 - t3).count();
    arr.push_back(json{{"N", N},
                       {"naive_ns", naive_ns},
                       {"fft_ns", fft_ns},
                       {"speedup", naive_ns / std::max(fft_ns, 1.0)},
                       {"agreement", agreement},
                       {"svd_n", svd_n},
                       {"svd_ns", svd_ns}});
    out.csv += std::to_string(N) + "," + csv_real(naive_ns) + "," +
               csv_real(fft_ns) + "," + csv_real(naive_ns / std::max(fft_ns, 1.0)) +
               "," + csv_real(agreement) + "," + std::to_string(svd_n) + "," +
               csv_real(svd_ns) + "\n";
  }
  out.results["points"] = std::move(arr);
  out.results["agreement_tol"] = 1e-10;
  return out;
}

}  // namespace

RunReport run_config(const ExperimentConfig& cfg) {
  const std::string command = cfg.get_string("command");
  if (command.empty())
    throw std::invalid_argument("config: key 'command' is required");

  CommandResult r;
  if (command == "weights") r = cmd_weights(cfg);
  else if (command == "series") r = cmd_series(cfg);
  else if (command == "gram") r = cmd_gram(cfg);
  else if (command == "riesz") r = cmd_riesz(cfg);
  else if (command == "growth") r = cmd_growth(cfg);
  else if (command == "dnlower") r = cmd_dnlower(cfg);
  else if (command == "blower") r = cmd_blower(cfg);
  else if (command == "cowen") r = cmd_cowen(cfg);
  else if (command == "index") r = cmd_index(cfg);
  else if (command == "intertwine") r = cmd_intertwine(cfg);
  else if (command == "expand") r = cmd_expand(cfg);
  else if (command == "compose-check") r = cmd_compose_check(cfg);
  else if (command == "bench") r = cmd_bench(cfg);
  else
    throw std::invalid_argument("config: unknown command '" + command + "'");

  RunReport rep;
  rep.json["schema"] = "hlab-report/1";
  rep.json["command"] = command;
  json cfg_echo = json::object();
  for (const auto& [k, v] : cfg.entries()) cfg_echo[k] = v;
  rep.json["config"] = std::move(cfg_echo);
  rep.json["results"] = std::move(r.results);
  rep.json["exit_code"] = r.exit_code;
  if (!cfg.get_bool("no_meta"))
    rep.json["meta"] = json{{"version", "0.1.0"}, {"generated_at", iso_now()}};
  rep.csv = std::move(r.csv);
  rep.exit_code = r.exit_code;

  if (cfg.has("output")) {
    std::ofstream f(cfg.get_string("output"));
    if (!f) throw std::runtime_error("cannot write output file");
    f << report_to_string(rep);
  }
  if (cfg.has("csv")) {
    if (rep.csv.empty())
      throw std::invalid_argument("config: command '" + command +
                                  "' has no CSV view");
    std::ofstream f(cfg.get_string("csv"));
    if (!f) throw std::runtime_error("cannot write csv file");
    f << rep.csv;
  }
  if (cfg.has("dump_matrix")) {
    if (!r.dump)
      throw std::invalid_argument("config: command '" + command +
                                  "' has no matrix to dump");
    write_matrix(cfg.get_string("dump_matrix"), *r.dump);
  }
  return rep;
}

std::string report_to_string(const RunReport& report) {
  return report.json.dump(2) + "\n";
}

bool validate_report(const nlohmann::ordered_json& j, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!j.is_object()) return fail("report is not an object");
  if (!j.contains("schema") || j["schema"] != "hlab-report/1")
    return fail("missing or wrong schema tag");
  if (!j.contains("command") || !j["command"].is_string())
    return fail("missing command");
  if (!j.contains("config") || !j["config"].is_object())
    return fail("missing config echo");
  if (!j.contains("results") || !j["results"].is_object())
    return fail("missing results");
  if (!j.contains("exit_code") || !j["exit_code"].is_number_integer())
    return fail("missing exit_code");
  const int code = j["exit_code"].get<int>();
  if (code != 0 && code != 2) return fail("exit_code out of range");
  // the config echo must re-parse and name the same command
  try {
    ExperimentConfig cfg;
    for (const auto& [k, v] : j["config"].items())
      cfg.set(k, v.get<std::string>());
    if (cfg.get_string("command") != j["command"].get<std::string>())
      return fail("config echo disagrees with command");
  } catch (const std::exception& e) {
    return fail(std::string("config echo rejected: ") + e.what());
  }
  return true;
}

}  // namespace hlab
