#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spreadlab/errors.hpp"

namespace spreadlab::cli {

/// Malformed or missing configuration. The message names the key.
class ConfigError : public BadParams {
 public:
  using BadParams::BadParams;
};

/**
 * Flat `key = value` configuration with [sections], addressed as
 * "section.key" (top-level keys have no prefix). Every lookup records the
 * resolved value, defaults included, so the run can be echoed and replayed.
 * finish() rejects keys that no lookup consumed.
 */
class Config {
 public:
  static Config load(const std::filesystem::path& path);
  static Config parse(const std::string& text);

  bool has(const std::string& key) const { return raw_.count(key) != 0; }
  void set(const std::string& key, const std::string& value) { raw_[key] = value; }
  /// Forgets the key entirely, including its resolved echo.
  void erase(const std::string& key);

  std::string text(const std::string& key);
  std::string text(const std::string& key, const std::string& fallback);
  double real(const std::string& key);
  double real(const std::string& key, double fallback);
  long integer(const std::string& key);
  long integer(const std::string& key, long fallback);
  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback);
  bool flag(const std::string& key, bool fallback);
  std::vector<std::string> list(const std::string& key);

  /// Marks a key as consumed without resolving it.
  void ignore(const std::string& key);

  /// Throws ConfigError for any key present in the file but never read.
  void finish() const;

  const std::vector<std::pair<std::string, std::string>>& resolved() const { return resolved_; }
  /// Resolved values in loadable form.
  std::string to_ini() const;

 private:
  std::string lookup(const std::string& key) const;
  void record(const std::string& key, const std::string& value);

  std::map<std::string, std::string> raw_;
  std::vector<std::pair<std::string, std::string>> resolved_;
  std::map<std::string, bool> consumed_;
};

/// "%.17g": round-trips every double.
std::string format_real(double v);

}  // namespace spreadlab::cli
