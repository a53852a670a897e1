#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace casimech::io {

/// Minimal TOML-compatible subset: [section] headers, `key = value` pairs,
/// `#` comments; values are numbers, quoted strings, booleans, or flat arrays
/// of numbers. One file = one run.
using ConfigValue = std::variant<double, std::string, bool, std::vector<double>>;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Config {
public:
    using Section = std::map<std::string, ConfigValue>;

    bool has(const std::string& section, const std::string& key) const {
        auto s = sections_.find(section);
        return s != sections_.end() && s->second.count(key) > 0;
    }

    const ConfigValue& get(const std::string& section,
                           const std::string& key) const {
        auto s = sections_.find(section);
        if (s == sections_.end() || !s->second.count(key))
            throw ConfigError("missing config key: [" + section + "] " + key);
        return s->second.at(key);
    }

    double number(const std::string& section, const std::string& key) const {
        const auto& v = get(section, key);
        if (const double* d = std::get_if<double>(&v)) return *d;
        throw ConfigError("config key is not a number: [" + section + "] " + key);
    }

    double number_or(const std::string& section, const std::string& key,
                     double fallback) const {
        return has(section, key) ? number(section, key) : fallback;
    }

    std::string text(const std::string& section, const std::string& key) const {
        const auto& v = get(section, key);
        if (const std::string* s = std::get_if<std::string>(&v)) return *s;
        throw ConfigError("config key is not a string: [" + section + "] " + key);
    }

    std::string text_or(const std::string& section, const std::string& key,
                        const std::string& fallback) const {
        return has(section, key) ? text(section, key) : fallback;
    }

    std::vector<double> array(const std::string& section,
                              const std::string& key) const {
        const auto& v = get(section, key);
        if (const auto* a = std::get_if<std::vector<double>>(&v)) return *a;
        if (const double* d = std::get_if<double>(&v)) return {*d};
        throw ConfigError("config key is not an array: [" + section + "] " + key);
    }

    const std::map<std::string, Section>& sections() const { return sections_; }
    Section& section(const std::string& name) { return sections_[name]; }

private:
    std::map<std::string, Section> sections_;
};

namespace detail {

inline std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline double parse_number(const std::string& tok, int lineno) {
    // std::from_chars handles the round-trippable forms we emit; fall back to
    // strtod for exponent styles like "1e-5" with leading '+'.
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": bad number '" + tok + "'");
        return v;
    } catch (const std::invalid_argument&) {
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": bad number '" + tok + "'");
    } catch (const std::out_of_range&) {
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": number out of range '" + tok + "'");
    }
}

} // namespace detail

inline Config parse_config(const std::string& text) {
    Config cfg;
    std::string current = "";
    std::size_t pos = 0;
    int lineno = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string line = text.substr(
            pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = (nl == std::string::npos) ? text.size() + 1 : nl + 1;
        ++lineno;
        const std::size_t hash = line.find('#');
        // Keep '#' inside quoted strings.
        if (hash != std::string::npos &&
            std::count(line.begin(), line.begin() + hash, '"') % 2 == 0)
            line = line.substr(0, hash);
        line = detail::strip(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": malformed section header");
            current = detail::strip(line.substr(1, line.size() - 2));
            cfg.section(current);
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = detail::strip(line.substr(0, eq));
        const std::string val = detail::strip(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": empty key or value");
        ConfigValue out;
        if (val.front() == '"') {
            if (val.size() < 2 || val.back() != '"')
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": unterminated string");
            out = val.substr(1, val.size() - 2);
        } else if (val == "true" || val == "false") {
            out = (val == "true");
        } else if (val.front() == '[') {
            if (val.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": unterminated array");
            std::vector<double> arr;
            std::string body = val.substr(1, val.size() - 2);
            std::size_t p = 0;
            while (p < body.size()) {
                std::size_t c = body.find(',', p);
                if (c == std::string::npos) c = body.size();
                const std::string tok = detail::strip(body.substr(p, c - p));
                if (!tok.empty()) arr.push_back(detail::parse_number(tok, lineno));
                p = c + 1;
            }
            out = std::move(arr);
        } else {
            out = detail::parse_number(val, lineno);
        }
        cfg.section(current)[key] = std::move(out);
    }
    return cfg;
}

} // namespace casimech::io
