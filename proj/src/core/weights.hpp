// Weight sequences w_k and their cumulative products beta_k: the space
// descriptor for H^2_beta. Sequences are immutable; beta values are memoized
// (append-only, shared_mutex guarded) together with log beta so that large
// weights never force a norm computation out of range.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hlab {

enum class WeightKind {
  Constant,
  Bergman,            // w_j = sqrt((j+1)/(j+2a+1))
  Dirichlet,          // w_j = sqrt((j+2l+1)/(j+1))
  Sobolev,            // verbatim-from-text formula; does NOT tend to 1 (flagged)
  LogReciprocal,      // beta_k = 1/ln(k+1) for k >= 1
  PowerLog,           // beta_k = (k+1)^{ln(k+1)}
  RandomFlipBergman,  // Bergman weights raised to random signs eps_j
  Tabulated,
};

enum class GrowthClass { Polynomial, IntermediateEvidence, Inconclusive };
const char* growth_class_name(GrowthClass c);

struct GrowthVerdict {
  GrowthClass cls;
  double empirical_sup;   // max over 1 <= k <= window of (k+1)|w_k - 1|
  std::optional<double> analytic_bound;
  long window;
  double decade_ratio;    // running-sup ratio across the final decade
  bool anomalous;         // sequence is flagged (w_k does not tend to 1)
};

class WeightSequence {
 public:
  static WeightSequence constant();
  static WeightSequence bergman(double alpha);
  static WeightSequence dirichlet(double lambda);
  static WeightSequence sobolev();
  static WeightSequence log_reciprocal();
  static WeightSequence power_log();
  static WeightSequence random_flip_bergman(double alpha, std::uint64_t seed);
  // values[i] is w_{i+1}; label names the source (e.g. "file:PATH").
  static WeightSequence tabulated(std::vector<double> values, std::string label = "");
  // Whitespace-separated w_1 w_2 ... read from a text file.
  static WeightSequence from_file(const std::string& path);

  WeightSequence invert() const;  // w -> 1/w
  WeightSequence lift() const;    // beta~_n = (n+1) beta_n, i.e. w~_k = w_k (k+1)/k

  double w(long k) const;         // k >= 1
  double beta(long k) const;      // k >= 0; may overflow to +inf, log_beta stays finite
  double log_beta(long k) const;

  WeightKind kind() const;
  const std::string& label() const;
  bool anomalous() const;
  std::optional<double> analytic_bound() const;

  struct Rep;  // implementation detail, defined in weights.cpp

 private:
  explicit WeightSequence(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

// Empirical polynomial-growth classification over k <= window (window >= 16).
GrowthVerdict classify_growth(const WeightSequence& seq, long window);

}  // namespace hlab
