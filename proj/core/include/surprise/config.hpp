#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace surprise::config {

/// Scalar or flat array; numbers are kept as doubles.
struct Value {
    std::variant<bool, double, std::string, std::vector<double>, std::vector<std::string>> data;
    int line = 0;
};

/// Parsed key-value configuration. A small TOML-style subset:
///
///   # comment
///   [net.geo]            sections prefix the keys below them
///   weight = 0.1
///   enabled = true
///   label = "fig1"
///   grid = [0.0, 0.1, 0.2]
///   grid = "0:0.1:1"     start:step:stop range, inclusive
///   [[series]]           array-of-tables, collected separately
///   delta = -0.1
///
/// Scalar keys are stored flat under their dotted path.
class Parsed {
  public:
    bool has(const std::string& key) const { return values_.count(key) != 0; }

    double require_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    std::int64_t require_count(const std::string& key) const;
    std::string require_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    /// Numeric array; a "start:step:stop" string expands to the inclusive grid.
    std::vector<double> require_grid(const std::string& key) const;

    const std::vector<Parsed>& tables(const std::string& name) const;

    /// Keys never read back, for typo diagnostics.
    std::vector<std::string> unused_keys() const;

    static Parsed from_string(const std::string& text, const std::string& origin = "<string>");
    static Parsed from_file(const std::filesystem::path& path);

  private:
    const Value& require(const std::string& key) const;
    std::string origin_;
    std::map<std::string, Value> values_;
    std::map<std::string, std::vector<Parsed>> table_arrays_;
    mutable std::map<std::string, bool> read_;
    friend class Parser;
};

/// Expands "start:step:stop" into an inclusive grid with exact multiples of
/// the step (values computed as start + k*step, never accumulated).
std::vector<double> expand_range(const std::string& text);

}  // namespace surprise::config
