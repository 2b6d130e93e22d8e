#pragma once
// Flat configuration files: one `key = value` assignment per line, with '#'
// starting a comment, bare numbers and booleans, and double-quoted strings.
// This covers the proof configuration files shipped in configs/ without
// pulling in a configuration-language dependency.

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace nlscap {

class Config {
 public:
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string get_string(const std::string& key) const { return raw(key); }
  std::string get_string(const std::string& key,
                         const std::string& fallback) const {
    return has(key) ? raw(key) : fallback;
  }

  double get_double(const std::string& key) const { return to_double(key); }
  double get_double(const std::string& key, double fallback) const {
    return has(key) ? to_double(key) : fallback;
  }

  int get_int(const std::string& key) const { return to_int(key); }
  int get_int(const std::string& key, int fallback) const {
    return has(key) ? to_int(key) : fallback;
  }

  bool get_bool(const std::string& key) const { return to_bool(key); }
  bool get_bool(const std::string& key, bool fallback) const {
    return has(key) ? to_bool(key) : fallback;
  }

  const std::map<std::string, std::string>& entries() const { return values_; }

  void set(const std::string& key, const std::string& value) {
    values_[key] = value;
  }

 private:
  std::string raw(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end())
      throw std::runtime_error("missing configuration key: " + key);
    return it->second;
  }
  double to_double(const std::string& key) const {
    const std::string s = raw(key);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
      throw std::runtime_error("configuration key " + key +
                               " is not a number: " + s);
    return v;
  }
  int to_int(const std::string& key) const {
    const std::string s = raw(key);
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size() || v < -2147483647L ||
        v > 2147483647L)
      throw std::runtime_error("configuration key " + key +
                               " is not an integer: " + s);
    return int(v);
  }
  bool to_bool(const std::string& key) const {
    const std::string s = raw(key);
    if (s == "true") return true;
    if (s == "false") return false;
    throw std::runtime_error("configuration key " + key +
                             " is not a boolean: " + s);
  }

  std::map<std::string, std::string> values_;
};

inline Config parse_config(std::istream& in) {
  Config cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // strip comments, respecting quoted strings
    bool quoted = false;
    std::string body;
    for (char ch : line) {
      if (ch == '"') quoted = !quoted;
      if (ch == '#' && !quoted) break;
      body.push_back(ch);
    }
    const auto first = body.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = body.find_last_not_of(" \t\r");
    body = body.substr(first, last - first + 1);

    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("configuration line " + std::to_string(lineno) +
                               " is not an assignment: " + body);
    std::string key = body.substr(0, eq);
    std::string value = body.substr(eq + 1);
    const auto kend = key.find_last_not_of(" \t");
    if (kend == std::string::npos)
      throw std::runtime_error("configuration line " + std::to_string(lineno) +
                               " has an empty key");
    key = key.substr(0, kend + 1);
    for (char ch : key)
      if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' ||
            ch == '.' || ch == '-'))
        throw std::runtime_error("configuration line " +
                                 std::to_string(lineno) +
                                 " has a malformed key: " + key);
    const auto vfirst = value.find_first_not_of(" \t");
    value = vfirst == std::string::npos ? "" : value.substr(vfirst);
    if (!value.empty() && value.front() == '"') {
      if (value.size() < 2 || value.back() != '"')
        throw std::runtime_error("configuration line " +
                                 std::to_string(lineno) +
                                 " has an unterminated string");
      value = value.substr(1, value.size() - 2);
    }
    if (value.empty())
      throw std::runtime_error("configuration line " + std::to_string(lineno) +
                               " has an empty value for key: " + key);
    cfg.set(key, value);
  }
  return cfg;
}

inline Config load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read configuration file: " + path);
  return parse_config(f);
}

}  // namespace nlscap
