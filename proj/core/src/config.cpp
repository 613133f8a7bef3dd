#include "surprise/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace surprise::config {

namespace {

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
    std::ostringstream msg;
    msg << origin << ":" << line << ": " << what;
    throw std::runtime_error(msg.str());
}

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// Strips a trailing comment, respecting double quotes.
std::string strip_comment(const std::string& s) {
    bool quoted = false;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
        else if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
}

bool parse_number(const std::string& text, double& out) {
    if (text.empty()) return false;
    char* end = nullptr;
    out = std::strtod(text.c_str(), &end);
    return end == text.c_str() + text.size();
}

std::vector<std::string> split_elements(const std::string& body, const std::string& origin,
                                        int line) {
    std::vector<std::string> parts;
    std::string current;
    bool quoted = false;
    for (char ch : body) {
        if (ch == '"') quoted = !quoted;
        if (ch == ',' && !quoted) {
            parts.push_back(trim(current));
            current.clear();
        } else {
            current += ch;
        }
    }
    const std::string last = trim(current);
    if (!last.empty()) parts.push_back(last);
    if (quoted) fail(origin, line, "unterminated string in array");
    return parts;
}

Value parse_value(const std::string& text, const std::string& origin, int line) {
    Value v;
    v.line = line;
    if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
        v.data = text.substr(1, text.size() - 2);
        return v;
    }
    if (text == "true") { v.data = true; return v; }
    if (text == "false") { v.data = false; return v; }
    if (!text.empty() && text.front() == '[') {
        if (text.back() != ']') fail(origin, line, "unterminated array");
        const auto parts = split_elements(text.substr(1, text.size() - 2), origin, line);
        bool all_numbers = true;
        std::vector<double> numbers;
        std::vector<std::string> strings;
        for (const auto& part : parts) {
            double d;
            if (parse_number(part, d)) {
                numbers.push_back(d);
            } else {
                all_numbers = false;
            }
            if (part.size() >= 2 && part.front() == '"' && part.back() == '"')
                strings.push_back(part.substr(1, part.size() - 2));
        }
        if (all_numbers) { v.data = std::move(numbers); return v; }
        if (strings.size() == parts.size()) { v.data = std::move(strings); return v; }
        fail(origin, line, "array must hold all numbers or all quoted strings");
    }
    double d;
    if (parse_number(text, d)) { v.data = d; return v; }
    fail(origin, line, "cannot parse value '" + text + "' (strings need quotes)");
}

}  // namespace

std::vector<double> expand_range(const std::string& text) {
    const auto first = text.find(':');
    const auto second = text.find(':', first == std::string::npos ? 0 : first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw std::runtime_error("range '" + text + "' must look like start:step:stop");
    double start = 0.0, step = 0.0, stop = 0.0;
    if (!parse_number(trim(text.substr(0, first)), start) ||
        !parse_number(trim(text.substr(first + 1, second - first - 1)), step) ||
        !parse_number(trim(text.substr(second + 1)), stop))
        throw std::runtime_error("range '" + text + "' has non-numeric fields");
    if (step == 0.0) throw std::runtime_error("range step must be nonzero");
    const double span = (stop - start) / step;
    if (span < -1e-9) throw std::runtime_error("range '" + text + "' never reaches its stop");
    const auto count = std::int64_t(std::floor(span + 1e-9)) + 1;
    if (count > 1000000) throw std::runtime_error("range '" + text + "' is unreasonably large");
    std::vector<double> grid(static_cast<size_t>(count));
    for (std::int64_t k = 0; k < count; ++k) grid[size_t(k)] = start + double(k) * step;
    return grid;
}

class Parser {
  public:
    static Parsed run(const std::string& text, const std::string& origin) {
        Parsed root;
        root.origin_ = origin;
        Parsed* target = &root;
        std::string prefix;

        std::istringstream in(text);
        std::string raw;
        int line = 0;
        while (std::getline(in, raw)) {
            ++line;
            std::string s = trim(strip_comment(raw));
            if (s.empty()) continue;

            if (s.size() >= 4 && s.substr(0, 2) == "[[" && s.substr(s.size() - 2) == "]]") {
                const std::string name = trim(s.substr(2, s.size() - 4));
                if (name.empty()) fail(origin, line, "empty table-array name");
                auto& list = root.table_arrays_[name];
                list.emplace_back();
                list.back().origin_ = origin;
                target = &list.back();
                prefix.clear();
                continue;
            }
            if (s.front() == '[' && s.back() == ']') {
                const std::string name = trim(s.substr(1, s.size() - 2));
                if (name.empty()) fail(origin, line, "empty section name");
                target = &root;
                prefix = name + ".";
                continue;
            }

            const auto eq = s.find('=');
            if (eq == std::string::npos) fail(origin, line, "expected key = value");
            const std::string key = trim(s.substr(0, eq));
            const std::string value_text = trim(s.substr(eq + 1));
            if (key.empty()) fail(origin, line, "empty key");
            if (value_text.empty()) fail(origin, line, "empty value for key '" + key + "'");

            const std::string full = (target == &root ? prefix : std::string()) + key;
            if (target->values_.count(full))
                fail(origin, line, "duplicate key '" + full + "'");
            target->values_.emplace(full, parse_value(value_text, origin, line));
        }
        return root;
    }
};

Parsed Parsed::from_string(const std::string& text, const std::string& origin) {
    return Parser::run(text, origin);
}

Parsed Parsed::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return Parser::run(buffer.str(), path.string());
}

const Value& Parsed::require(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end())
        throw std::runtime_error(origin_ + ": missing required key '" + key + "'");
    read_[key] = true;
    return it->second;
}

double Parsed::require_double(const std::string& key) const {
    const Value& v = require(key);
    if (const double* d = std::get_if<double>(&v.data)) return *d;
    throw std::runtime_error(origin_ + ": key '" + key + "' must be a number");
}

double Parsed::get_double(const std::string& key, double fallback) const {
    return has(key) ? require_double(key) : fallback;
}

std::int64_t Parsed::require_count(const std::string& key) const {
    const double d = require_double(key);
    const auto n = std::int64_t(std::llround(d));
    if (double(n) != d || n < 0)
        throw std::runtime_error(origin_ + ": key '" + key + "' must be a nonnegative integer");
    return n;
}

std::string Parsed::require_string(const std::string& key) const {
    const Value& v = require(key);
    if (const auto* s = std::get_if<std::string>(&v.data)) return *s;
    throw std::runtime_error(origin_ + ": key '" + key + "' must be a quoted string");
}

std::string Parsed::get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? require_string(key) : fallback;
}

bool Parsed::get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const Value& v = require(key);
    if (const bool* b = std::get_if<bool>(&v.data)) return *b;
    throw std::runtime_error(origin_ + ": key '" + key + "' must be true or false");
}

std::vector<double> Parsed::require_grid(const std::string& key) const {
    const Value& v = require(key);
    if (const auto* xs = std::get_if<std::vector<double>>(&v.data)) return *xs;
    if (const auto* s = std::get_if<std::string>(&v.data)) return expand_range(*s);
    if (const double* d = std::get_if<double>(&v.data)) return {*d};
    throw std::runtime_error(origin_ + ": key '" + key +
                             "' must be a numeric array or a start:step:stop range");
}

const std::vector<Parsed>& Parsed::tables(const std::string& name) const {
    static const std::vector<Parsed> empty;
    auto it = table_arrays_.find(name);
    return it == table_arrays_.end() ? empty : it->second;
}

std::vector<std::string> Parsed::unused_keys() const {
    std::vector<std::string> unused;
    for (const auto& [key, value] : values_)
        if (!read_.count(key)) unused.push_back(key);
    return unused;
}

}  // namespace surprise::config
