#include "spreadlab/cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace spreadlab::cli {

namespace pt = boost::property_tree;

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Config from_stream(std::istream& in, const std::string& origin) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(origin + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  Config cfg;
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      cfg.set(name, trim(node.data()));
      continue;
    }
    for (const auto& [key, leaf] : node) {
      if (!leaf.empty()) throw ConfigError("nested key " + name + "." + key);
      cfg.set(name + "." + key, trim(leaf.data()));
    }
  }
  return cfg;
}

}  // namespace

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  return from_stream(in, path.string());
}

Config Config::parse(const std::string& text) {
  std::istringstream in(text);
  return from_stream(in, "<string>");
}

std::string Config::lookup(const std::string& key) const {
  const auto it = raw_.find(key);
  if (it == raw_.end()) throw ConfigError("missing required key '" + key + "'");
  return it->second;
}

void Config::record(const std::string& key, const std::string& value) {
  consumed_[key] = true;
  for (auto& kv : resolved_) {
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  }
  resolved_.emplace_back(key, value);
}

void Config::erase(const std::string& key) {
  raw_.erase(key);
  consumed_.erase(key);
  std::erase_if(resolved_, [&](const auto& kv) { return kv.first == key; });
}

void Config::ignore(const std::string& key) { consumed_[key] = true; }

std::string Config::text(const std::string& key) {
  const std::string v = lookup(key);
  if (v.empty()) throw ConfigError("key '" + key + "' is empty");
  record(key, v);
  return v;
}

std::string Config::text(const std::string& key, const std::string& fallback) {
  return has(key) ? text(key) : (record(key, fallback), fallback);
}

double Config::real(const std::string& key) {
  const std::string v = lookup(key);
  char* end = nullptr;
  errno = 0;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(d)) {
    throw ConfigError("key '" + key + "' is not a finite number: '" + v + "'");
  }
  record(key, format_real(d));
  return d;
}

double Config::real(const std::string& key, double fallback) {
  if (has(key)) return real(key);
  record(key, format_real(fallback));
  return fallback;
}

long Config::integer(const std::string& key) {
  const std::string v = lookup(key);
  char* end = nullptr;
  errno = 0;
  const long n = std::strtol(v.c_str(), &end, 10);
  if (v.empty() || *end != '\0' || errno == ERANGE) {
    throw ConfigError("key '" + key + "' is not an integer: '" + v + "'");
  }
  record(key, std::to_string(n));
  return n;
}

long Config::integer(const std::string& key, long fallback) {
  if (has(key)) return integer(key);
  record(key, std::to_string(fallback));
  return fallback;
}

std::uint64_t Config::unsigned_integer(const std::string& key, std::uint64_t fallback) {
  if (!has(key)) {
    record(key, std::to_string(fallback));
    return fallback;
  }
  const std::string v = lookup(key);
  char* end = nullptr;
  errno = 0;
  const unsigned long long n = std::strtoull(v.c_str(), &end, 10);
  if (v.empty() || v[0] == '-' || *end != '\0' || errno == ERANGE) {
    throw ConfigError("key '" + key + "' is not an unsigned integer: '" + v + "'");
  }
  record(key, std::to_string(n));
  return n;
}

bool Config::flag(const std::string& key, bool fallback) {
  if (!has(key)) {
    record(key, fallback ? "true" : "false");
    return fallback;
  }
  const std::string v = lookup(key);
  bool b;
  if (v == "true" || v == "1" || v == "yes") {
    b = true;
  } else if (v == "false" || v == "0" || v == "no") {
    b = false;
  } else {
    throw ConfigError("key '" + key + "' is not a boolean: '" + v + "'");
  }
  record(key, b ? "true" : "false");
  return b;
}

std::vector<std::string> Config::list(const std::string& key) {
  const std::string v = lookup(key);
  std::vector<std::string> items;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    items.push_back(item);
  }
  record(key, v);
  return items;
}

void Config::finish() const {
  for (const auto& [key, value] : raw_) {
    if (!consumed_.count(key)) throw ConfigError("unknown key '" + key + "'");
  }
}

std::string Config::to_ini() const {
  std::ostringstream out;
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections;
  for (const auto& [key, value] : resolved_) {
    const auto dot = key.find('.');
    if (dot == std::string::npos) {
      out << key << " = " << value << '\n';
    } else {
      sections[key.substr(0, dot)].emplace_back(key.substr(dot + 1), value);
    }
  }
  for (const auto& [name, entries] : sections) {
    out << "\n[" << name << "]\n";
    for (const auto& [k, v] : entries) out << k << " = " << v << '\n';
  }
  return out.str();
}

}  // namespace spreadlab::cli
