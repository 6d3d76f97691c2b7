#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ptq/model.hpp"

namespace ptq {

/// Flat `key = value` configuration. Values are comma-separated lists;
/// `#` starts a comment. Keys are case-sensitive and unique.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::istream& in);
  static KeyValueConfig parse_string(const std::string& text);
  static KeyValueConfig load(const std::string& path);

  bool contains(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, const std::string& value);

  std::string get_string(const std::string& key) const;
  std::optional<std::string> find_string(const std::string& key) const;
  std::vector<double> get_doubles(const std::string& key) const;
  std::optional<std::vector<double>> find_doubles(const std::string& key) const;
  double get_double(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return values_; }

  /// Canonical text: sorted keys, one per line.
  std::string to_string() const;

 private:
  std::map<std::string, std::string> values_;
};

/// Reads n_qubits, gamma/kappa/omega/delta (scalar broadcasts to all qubits)
/// and j. Missing kappa/delta default to zero.
SystemSpec spec_from_config(const KeyValueConfig& cfg);

/// Writes the keys read by spec_from_config using 17 significant digits.
void spec_to_config(const SystemSpec& spec, KeyValueConfig& cfg);

/// Shortest round-trip formatting is not used; every number is printed
/// with 17 significant digits so output is stable across runs.
std::string format_double(double v);

}  // namespace ptq
