#include "core/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hlab {

namespace {

// Every key the runner understands; anything else is a config error.
const char* const kKnownKeys[] = {
    "command",   "weight",  "weight2",      "invert",  "lift",
    "invert2",   "lift2",   "symbol",       "symbol2", "symbol3",
    "ladder",    "n",       "t",            "alpha",   "lambda",
    "family",    "expect",  "expect_index", "seed",    "output",
    "csv",       "dump_matrix", "no_meta",  "identities",
};

bool known_key(const std::string& key) {
  if (key.rfind("tol.", 0) == 0 && key.size() > 4) return true;
  for (const char* k : kKnownKeys)
    if (key == k) return true;
  return false;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_real(const std::string& v, const std::string& key) {
  char* end = nullptr;
  double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size())
    throw std::invalid_argument("config: key '" + key + "' expects a real, got '" +
                                v + "'");
  return x;
}

long to_long(const std::string& v, const std::string& key) {
  char* end = nullptr;
  long x = std::strtol(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size())
    throw std::invalid_argument("config: key '" + key +
                                "' expects an integer, got '" + v + "'");
  return x;
}

std::vector<std::string> split_commas(const std::string& v) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = v.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(trim(v.substr(start)));
      return out;
    }
    out.push_back(trim(v.substr(start, pos - start)));
    start = pos + 1;
  }
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value, got '" + t + "'");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (cfg.kv_.count(key))
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": duplicate key '" + key + "'");
    cfg.set(key, value);
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string ExperimentConfig::to_text() const {
  std::string out;
  for (const auto& [k, v] : kv_) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  }
  return out;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (!known_key(key))
    throw std::invalid_argument("config: unknown key '" + key + "'");
  kv_[key] = value;
}

bool ExperimentConfig::has(const std::string& key) const {
  return kv_.count(key) != 0;
}

std::string ExperimentConfig::get_string(const std::string& key,
                                         const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

bool ExperimentConfig::get_bool(const std::string& key, bool fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  const std::string& v = it->second;
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("config: key '" + key + "' expects a boolean, got '" +
                              v + "'");
}

long ExperimentConfig::get_long(const std::string& key, long fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : to_long(it->second, key);
}

std::uint64_t ExperimentConfig::get_u64(const std::string& key,
                                        std::uint64_t fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  const std::string& v = it->second;
  char* end = nullptr;
  unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size())
    throw std::invalid_argument("config: key '" + key +
                                "' expects an unsigned integer, got '" + v + "'");
  return static_cast<std::uint64_t>(x);
}

double ExperimentConfig::get_real(const std::string& key, double fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : to_real(it->second, key);
}

std::complex<double> ExperimentConfig::get_complex(
    const std::string& key, std::complex<double> fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  auto parts = split_commas(it->second);
  if (parts.size() == 1) return {to_real(parts[0], key), 0.0};
  if (parts.size() == 2)
    return {to_real(parts[0], key), to_real(parts[1], key)};
  throw std::invalid_argument("config: key '" + key +
                              "' expects re[,im], got '" + it->second + "'");
}

std::vector<long> ExperimentConfig::get_longs(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return {};
  std::vector<long> out;
  for (const auto& tok : split_commas(it->second)) out.push_back(to_long(tok, key));
  return out;
}

std::vector<double> ExperimentConfig::get_reals(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return {};
  std::vector<double> out;
  for (const auto& tok : split_commas(it->second)) out.push_back(to_real(tok, key));
  return out;
}

double ExperimentConfig::tolerance(const std::string& name, double fallback) const {
  return get_real("tol." + name, fallback);
}

}  // namespace hlab
