#include "ptq/config.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ptq {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& token, const std::string& key) {
  const std::string t = trim(token);
  if (t.empty()) throw std::invalid_argument("empty value in key '" + key + "'");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE) {
    throw std::invalid_argument("bad number '" + t + "' in key '" + key + "'");
  }
  return v;
}

std::vector<double> per_qubit(const KeyValueConfig& cfg, const std::string& key, std::size_t n,
                              double fallback) {
  auto vals = cfg.find_doubles(key);
  if (!vals) return std::vector<double>(n, fallback);
  if (vals->size() == 1) return std::vector<double>(n, vals->front());
  if (vals->size() != n) {
    throw std::invalid_argument("key '" + key + "' needs 1 or " + std::to_string(n) + " values");
  }
  return *vals;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_double(v[i]);
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
  KeyValueConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw std::invalid_argument("line " + std::to_string(lineno) + ": empty key");
    if (cfg.contains(key)) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    cfg.values_[key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return parse(in);
}

void KeyValueConfig::set(const std::string& key, const std::string& value) { values_[key] = value; }

std::optional<std::string> KeyValueConfig::find_string(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key) const {
  auto v = find_string(key);
  if (!v) throw std::invalid_argument("missing key '" + key + "'");
  return *v;
}

std::optional<std::vector<double>> KeyValueConfig::find_doubles(const std::string& key) const {
  auto raw = find_string(key);
  if (!raw) return std::nullopt;
  std::vector<double> out;
  std::stringstream ss(*raw);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_number(tok, key));
  if (out.empty()) throw std::invalid_argument("key '" + key + "' has no values");
  return out;
}

std::vector<double> KeyValueConfig::get_doubles(const std::string& key) const {
  auto v = find_doubles(key);
  if (!v) throw std::invalid_argument("missing key '" + key + "'");
  return *v;
}

double KeyValueConfig::get_double(const std::string& key) const {
  auto v = get_doubles(key);
  if (v.size() != 1) throw std::invalid_argument("key '" + key + "' must be a single value");
  return v.front();
}

std::string KeyValueConfig::to_string() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
  return out;
}

SystemSpec spec_from_config(const KeyValueConfig& cfg) {
  const double nq = cfg.get_double("n_qubits");
  if (nq < 1 || nq != static_cast<double>(static_cast<long>(nq))) {
    throw std::invalid_argument("n_qubits must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(nq);
  if (n > SystemSpec::kMaxQubits) {
    throw std::invalid_argument("n_qubits above " + std::to_string(SystemSpec::kMaxQubits));
  }
  const auto gamma = per_qubit(cfg, "gamma", n, 0.0);
  const auto kappa = per_qubit(cfg, "kappa", n, 0.0);
  const auto omega = per_qubit(cfg, "omega", n, 0.0);
  const auto delta = per_qubit(cfg, "delta", n, 0.0);

  SystemSpec spec;
  spec.coupling_j = cfg.contains("j") ? cfg.get_double("j") : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    spec.qubits.push_back({gamma[i], kappa[i], omega[i], delta[i]});
  }
  spec.validate();
  return spec;
}

void spec_to_config(const SystemSpec& spec, KeyValueConfig& cfg) {
  std::vector<double> g, k, o, d;
  for (const auto& q : spec.qubits) {
    g.push_back(q.gamma);
    k.push_back(q.kappa);
    o.push_back(q.omega);
    d.push_back(q.delta);
  }
  cfg.set("n_qubits", std::to_string(spec.size()));
  cfg.set("gamma", join(g));
  cfg.set("kappa", join(k));
  cfg.set("omega", join(o));
  cfg.set("delta", join(d));
  cfg.set("j", format_double(spec.coupling_j));
}

}  // namespace ptq
