#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace wgnls {

// Flat key = value configuration file (TOML-style scalars only):
//   # comment
//   nx = 128
//   ic = random_low_band
//   orders = 1, 1.5, 2
// Unquoted strings, numbers, booleans, and comma-separated number lists.
class Config {
 public:
  Config() = default;
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& key) const { return kv_.count(key) != 0; }
  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::string require_string(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long get_int(const std::string& key, long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& key,
                               const std::vector<double>& fallback) const;

  // sorted key=value dump, the input to content hashing
  std::string canonical_text() const;
  std::uint64_t content_hash() const;  // FNV-1a over canonical_text()

 private:
  std::map<std::string, std::string> kv_;
};

std::uint64_t fnv1a_hash(const std::string& text);

}  // namespace wgnls
