#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace nehari {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Flat "key = value" text config; '#' starts a comment, dotted keys give
// nesting (solve.grad_tol). Every key must be consumed by the run mode or
// the config is rejected.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long get_int(const std::string& key) const;
  long get_int(const std::string& key, long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_doubles(const std::string& key) const;  // comma list

  // Keys present in the file but never requested through a getter.
  std::vector<std::string> unused_keys() const;

 private:
  std::map<std::string, std::string> entries_;
  mutable std::set<std::string> used_;
};

}  // namespace nehari
