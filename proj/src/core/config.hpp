// Flat key=value experiment configuration.
//
// The canonical text form is one `key=value` line per entry, sorted by key.
// Blank lines and lines starting with '#' are ignored on input. Unknown and
// duplicate keys are rejected. parse(to_text(c)) == c for every config c.
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hlab {

class ExperimentConfig {
 public:
  ExperimentConfig() = default;

  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig from_file(const std::string& path);
  std::string to_text() const;

  // Setting a value validates the key name; values are stored verbatim.
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key,
                         const std::string& fallback = "") const;
  bool get_bool(const std::string& key, bool fallback = false) const;
  long get_long(const std::string& key, long fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  double get_real(const std::string& key, double fallback) const;
  std::complex<double> get_complex(const std::string& key,
                                   std::complex<double> fallback) const;
  std::vector<long> get_longs(const std::string& key) const;    // comma list
  std::vector<double> get_reals(const std::string& key) const;  // comma list

  // tol.NAME entries; fallback when the name is absent.
  double tolerance(const std::string& name, double fallback) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }
  bool operator==(const ExperimentConfig& o) const { return kv_ == o.kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace hlab
