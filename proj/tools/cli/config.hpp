#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace deconv::cli {

//! Flat `key = value` configuration. Lines starting with '#' and blank lines
//! are ignored; unknown keys are rejected by the consumer.
class KeyValueConfig {
public:
  static KeyValueConfig parse_file(const std::string& path);
  static KeyValueConfig parse_text(const std::string& text);

  bool has(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::vector<std::string> get_list(const std::string& key,
                                    const std::vector<std::string>& fallback) const;
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& fallback) const;

  //! Throws listing the first key outside `allowed`.
  void require_known_keys(const std::vector<std::string>& allowed) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

private:
  std::map<std::string, std::string> entries_;
};

std::string trim(const std::string& s);
std::vector<std::string> split_list(const std::string& s);

} // namespace deconv::cli
