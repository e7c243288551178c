#include "core/weights.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace hlab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t xorshift64(std::uint64_t& s) {
  s ^= s << 13;
  s ^= s >> 7;
  s ^= s << 17;
  return s;
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

const char* growth_class_name(GrowthClass c) {
  switch (c) {
    case GrowthClass::Polynomial: return "Polynomial";
    case GrowthClass::IntermediateEvidence: return "IntermediateEvidence";
    case GrowthClass::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct WeightSequence::Rep {
  WeightKind kind = WeightKind::Constant;
  double alpha = 0.0;  // Bergman/flip alpha, Dirichlet lambda
  std::uint64_t seed = 0;
  std::vector<double> table;
  enum class Mod { Invert, Lift };
  std::vector<Mod> mods;  // applied to the base weight in order
  std::string label;
  bool anomalous = false;
  std::optional<double> bound;  // analytic bound for limsup (k+1)|w_k-1|

  mutable std::shared_mutex mu;
  mutable std::vector<double> wv;   // wv[k-1] = w_k
  mutable std::vector<double> bv;   // bv[k] = beta_k
  mutable std::vector<double> lbv;  // lbv[k] = log beta_k
  mutable std::uint64_t rng = 0;    // flip sign stream, advanced in index order

  double base_w(long k) const {
    switch (kind) {
      case WeightKind::Constant:
        return 1.0;
      case WeightKind::Bergman:
        return std::sqrt(double(k + 1) / double(k + 2 * alpha + 1));
      case WeightKind::Dirichlet:
        return std::sqrt(double(k + 2 * alpha + 1) / double(k + 1));
      case WeightKind::Sobolev: {
        double kk = double(k);
        return std::sqrt((kk + 1) / (3 * kk * kk * kk * kk - kk * kk + 2 * kk + 1));
      }
      case WeightKind::LogReciprocal:
        return k == 1 ? 1.0 / std::log(2.0)
                      : std::log(double(k)) / std::log(double(k + 1));
      case WeightKind::PowerLog: {
        double a = std::log(double(k + 1)), b = std::log(double(k));
        return std::exp(a * a - b * b);
      }
      case WeightKind::RandomFlipBergman: {
        double w = std::sqrt(double(k + 1) / double(k + 2 * alpha + 1));
        // rng already advanced by extend(); bit 63 picks the exponent sign
        return (rng >> 63) ? w : 1.0 / w;
      }
      case WeightKind::Tabulated:
        if (k > long(table.size()))
          throw std::out_of_range("tabulated weights exhausted at k=" + std::to_string(k) +
                                  " (table has " + std::to_string(table.size()) + " entries)");
        return table[size_t(k - 1)];
    }
    throw std::logic_error("unreachable weight kind");
  }

  // Extends the memo so that w_1..w_k, beta_0..beta_k are available.
  void extend(long k) const {
    if (bv.empty()) {
      bv.push_back(1.0);
      lbv.push_back(0.0);
      rng = splitmix64(seed);
      if (rng == 0) rng = 0x9e3779b97f4a7c15ULL;
    }
    while (long(wv.size()) < k) {
      long j = long(wv.size()) + 1;
      if (kind == WeightKind::RandomFlipBergman) xorshift64(rng);
      double w = base_w(j);
      for (Mod m : mods)
        w = (m == Mod::Invert) ? 1.0 / w : w * double(j + 1) / double(j);
      if (!(w > 0.0) || !std::isfinite(w))
        throw std::domain_error("weight w_" + std::to_string(j) + " is not a positive real");
      wv.push_back(w);
      bv.push_back(bv.back() * w);  // the defining recurrence, evaluated incrementally
      lbv.push_back(lbv.back() + std::log(w));
    }
  }
};

namespace {
std::shared_ptr<WeightSequence::Rep> new_rep(WeightKind kind, std::string label) {
  auto rep = std::make_shared<WeightSequence::Rep>();
  rep->kind = kind;
  rep->label = std::move(label);
  return rep;
}
}  // namespace

WeightSequence WeightSequence::constant() {
  auto rep = new_rep(WeightKind::Constant, "constant");
  rep->bound = 0.0;
  return WeightSequence(std::move(rep));
}

WeightSequence WeightSequence::bergman(double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("bergman: alpha must be >= 0");
  auto rep = new_rep(WeightKind::Bergman, "bergman:" + format_real(alpha));
  rep->alpha = alpha;
  rep->bound = alpha;  // x(1 - sqrt(x/(x+2a))) <= a for all x > 0
  return WeightSequence(std::move(rep));
}

WeightSequence WeightSequence::dirichlet(double lambda) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("dirichlet: lambda must be >= 0");
  auto rep = new_rep(WeightKind::Dirichlet, "dirichlet:" + format_real(lambda));
  rep->alpha = lambda;
  rep->bound = lambda;
  return WeightSequence(std::move(rep));
}

WeightSequence WeightSequence::sobolev() {
  auto rep = new_rep(WeightKind::Sobolev, "sobolev");
  rep->anomalous = true;  // printed formula decays to 0; kept verbatim, flagged
  return WeightSequence(std::move(rep));
}

WeightSequence WeightSequence::log_reciprocal() {
  return WeightSequence(new_rep(WeightKind::LogReciprocal, "logrecip"));
}

WeightSequence WeightSequence::power_log() {
  return WeightSequence(new_rep(WeightKind::PowerLog, "powerlog"));
}

WeightSequence WeightSequence::random_flip_bergman(double alpha, std::uint64_t seed) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("flipbergman: alpha must be >= 0");
  auto rep = new_rep(WeightKind::RandomFlipBergman,
                     "flipbergman:" + format_real(alpha) + ":" + std::to_string(seed));
  rep->alpha = alpha;
  rep->seed = seed;
  rep->bound = alpha;
  return WeightSequence(std::move(rep));
}

WeightSequence WeightSequence::tabulated(std::vector<double> values, std::string label) {
  for (size_t i = 0; i < values.size(); ++i)
    if (!(values[i] > 0.0) || !std::isfinite(values[i]))
      throw std::invalid_argument("tabulated: w_" + std::to_string(i + 1) +
                                  " must be a positive real");
  auto rep = new_rep(WeightKind::Tabulated,
                     label.empty() ? "tabulated[" + std::to_string(values.size()) + "]"
                                   : std::move(label));
  rep->table = std::move(values);
  return WeightSequence(std::move(rep));
}

WeightSequence WeightSequence::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open weight file '" + path + "'");
  std::vector<double> values;
  double v;
  while (in >> v) values.push_back(v);
  if (!in.eof())
    throw std::runtime_error("weight file '" + path + "' has a malformed entry");
  if (values.empty())
    throw std::runtime_error("weight file '" + path + "' is empty");
  return tabulated(std::move(values), "file:" + path);
}

// Transformed sequences share the base parameters but own a fresh memo.
static std::shared_ptr<WeightSequence::Rep> clone_base(const WeightSequence::Rep& r) {
  auto rep = std::make_shared<WeightSequence::Rep>();
  rep->kind = r.kind;
  rep->alpha = r.alpha;
  rep->seed = r.seed;
  rep->table = r.table;
  rep->mods = r.mods;
  rep->anomalous = r.anomalous;
  return rep;
}

WeightSequence WeightSequence::invert() const {
  auto rep = clone_base(*rep_);
  rep->mods.push_back(Rep::Mod::Invert);
  rep->label = "invert(" + rep_->label + ")";
  // For w = sqrt(x/(x+2a)) (x = k+1), x(1/w - 1) <= a iff x(x+2a) <= (x+a)^2,
  // which holds with slack a^2; the same algebra covers the reciprocal shape.
  // So the alpha bound survives inversion for the sqrt-rational kinds, but only
  // when it is the first modifier (after lift() no such certificate remains).
  const bool certified = rep_->mods.empty() &&
                         (rep_->kind == WeightKind::Constant || rep_->kind == WeightKind::Bergman ||
                          rep_->kind == WeightKind::Dirichlet ||
                          rep_->kind == WeightKind::RandomFlipBergman);
  if (certified)
    rep->bound = rep_->bound;
  else
    rep->bound.reset();
  return WeightSequence(std::move(rep));
}

WeightSequence WeightSequence::lift() const {
  auto rep = clone_base(*rep_);
  rep->mods.push_back(Rep::Mod::Lift);
  rep->label = "lift(" + rep_->label + ")";
  // (k+1)|w (k+1)/k - 1| <= ((k+1)^2/k)|w - 1| + (k+1)/k <= 2 b + 2 for k >= 1.
  // The naive "+1" limsup shift is not a window bound: the constant weight
  // attains (k+1)/k = 2 at k = 1, and 2 b + 2 is tight exactly there.
  if (rep_->bound) rep->bound = 2.0 * *rep_->bound + 2.0;
  return WeightSequence(std::move(rep));
}

double WeightSequence::w(long k) const {
  if (k < 1) throw std::invalid_argument("w(k) requires k >= 1");
  {
    std::shared_lock lk(rep_->mu);
    if (k <= long(rep_->wv.size())) return rep_->wv[size_t(k - 1)];
  }
  std::unique_lock lk(rep_->mu);
  rep_->extend(k);
  return rep_->wv[size_t(k - 1)];
}

double WeightSequence::beta(long k) const {
  if (k < 0) throw std::invalid_argument("beta(k) requires k >= 0");
  {
    std::shared_lock lk(rep_->mu);
    if (k < long(rep_->bv.size())) return rep_->bv[size_t(k)];
  }
  std::unique_lock lk(rep_->mu);
  rep_->extend(k);
  return rep_->bv[size_t(k)];
}

double WeightSequence::log_beta(long k) const {
  if (k < 0) throw std::invalid_argument("log_beta(k) requires k >= 0");
  {
    std::shared_lock lk(rep_->mu);
    if (k < long(rep_->lbv.size())) return rep_->lbv[size_t(k)];
  }
  std::unique_lock lk(rep_->mu);
  rep_->extend(k);
  return rep_->lbv[size_t(k)];
}

WeightKind WeightSequence::kind() const { return rep_->kind; }
const std::string& WeightSequence::label() const { return rep_->label; }
bool WeightSequence::anomalous() const { return rep_->anomalous; }
std::optional<double> WeightSequence::analytic_bound() const { return rep_->bound; }

GrowthVerdict classify_growth(const WeightSequence& seq, long window) {
  if (window < 16) throw std::invalid_argument("classify_growth: window must be >= 16");
  long mark = std::max(1L, window / 10);  // start of the final decade
  double sup = 0.0, sup_at_mark = 0.0;
  for (long k = 1; k <= window; ++k) {
    double v = double(k + 1) * std::abs(seq.w(k) - 1.0);
    if (v > sup) sup = v;
    if (k == mark) sup_at_mark = sup;
  }
  double ratio = sup_at_mark > 0.0 ? sup / sup_at_mark : (sup > 0.0 ? HUGE_VAL : 1.0);

  GrowthVerdict v;
  v.empirical_sup = sup;
  v.analytic_bound = seq.analytic_bound();
  v.window = window;
  v.decade_ratio = ratio;
  v.anomalous = seq.anomalous();
  // A certified bound is a proof and outranks the empirical decade ratio,
  // which mislabels slowly-saturating polynomial weights at small windows.
  if (seq.analytic_bound().has_value())
    v.cls = GrowthClass::Polynomial;
  else if (ratio >= 1.05)
    v.cls = GrowthClass::IntermediateEvidence;
  else if (ratio <= 1.0 + 1e-9)
    v.cls = GrowthClass::Polynomial;
  else
    v.cls = GrowthClass::Inconclusive;
  return v;
}

}  // namespace hlab
