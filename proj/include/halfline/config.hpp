#pragma once

#include <cctype>
#include <cstdlib>
#include <limits>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "halfline/errors.hpp"

namespace hls {

/// One parsed configuration value: number, string, boolean, or a flat array
/// of numbers/strings.
struct ConfigValue {
    enum class Kind { Number, String, Boolean, Array };
    Kind kind = Kind::Number;
    double number = 0.0;
    std::string text;
    bool boolean = false;
    std::vector<ConfigValue> items;
};

namespace config_detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline ConfigValue parse_scalar(const std::string& raw, int line_no) {
    const std::string t = trim(raw);
    if (t.empty()) throw ConfigError("empty value on line " + std::to_string(line_no));
    ConfigValue v;
    if (t.front() == '"') {
        if (t.size() < 2 || t.back() != '"')
            throw ConfigError("unterminated string on line " + std::to_string(line_no));
        v.kind = ConfigValue::Kind::String;
        v.text = t.substr(1, t.size() - 2);
        return v;
    }
    if (t == "true" || t == "false") {
        v.kind = ConfigValue::Kind::Boolean;
        v.boolean = (t == "true");
        return v;
    }
    if (t == "inf" || t == "+inf") {
        v.number = std::numeric_limits<double>::infinity();
        return v;
    }
    if (t == "-inf") {
        v.number = -std::numeric_limits<double>::infinity();
        return v;
    }
    char* end = nullptr;
    v.number = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0')
        throw ConfigError("cannot parse value '" + t + "' on line " + std::to_string(line_no));
    return v;
}

inline ConfigValue parse_value(const std::string& raw, int line_no) {
    const std::string t = trim(raw);
    if (!t.empty() && t.front() == '[') {
        if (t.back() != ']')
            throw ConfigError("unterminated array on line " + std::to_string(line_no));
        ConfigValue v;
        v.kind = ConfigValue::Kind::Array;
        std::string inner = t.substr(1, t.size() - 2);
        std::string cur;
        bool in_string = false;
        for (char c : inner) {
            if (c == '"') in_string = !in_string;
            if (c == ',' && !in_string) {
                if (!trim(cur).empty()) v.items.push_back(parse_scalar(cur, line_no));
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!trim(cur).empty()) v.items.push_back(parse_scalar(cur, line_no));
        return v;
    }
    return parse_scalar(raw, line_no);
}

// strips a trailing comment that is not inside a quoted string
inline std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

} // namespace config_detail

/// Sectioned key/value configuration: [section] headers, key = value lines,
/// '#' comments. Values: numbers (inf allowed), "strings", booleans, and flat
/// arrays.
class Config {
  public:
    static Config parse(const std::string& text) {
        Config cfg;
        std::istringstream in(text);
        std::string line, section;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            line = config_detail::trim(config_detail::strip_comment(line));
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw ConfigError("malformed section header on line " +
                                      std::to_string(line_no));
                section = config_detail::trim(line.substr(1, line.size() - 2));
                if (section.empty())
                    throw ConfigError("empty section name on line " + std::to_string(line_no));
                cfg.tables_[section]; // materialize even if empty
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("expected key = value on line " + std::to_string(line_no));
            const std::string key = config_detail::trim(line.substr(0, eq));
            if (key.empty())
                throw ConfigError("empty key on line " + std::to_string(line_no));
            if (section.empty())
                throw ConfigError("key '" + key + "' outside any [section] on line " +
                                  std::to_string(line_no));
            cfg.tables_[section][key] = config_detail::parse_value(line.substr(eq + 1), line_no);
        }
        return cfg;
    }

    static Config parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse(ss.str());
    }

    bool has_section(const std::string& section) const {
        return tables_.count(section) != 0;
    }

    bool has(const std::string& section, const std::string& key) const {
        auto it = tables_.find(section);
        return it != tables_.end() && it->second.count(key) != 0;
    }

    const ConfigValue& at(const std::string& section, const std::string& key) const {
        auto it = tables_.find(section);
        if (it == tables_.end()) throw ConfigError("missing section [" + section + "]");
        auto jt = it->second.find(key);
        if (jt == it->second.end())
            throw ConfigError("missing key '" + key + "' in [" + section + "]");
        return jt->second;
    }

    double number(const std::string& section, const std::string& key) const {
        const ConfigValue& v = at(section, key);
        if (v.kind != ConfigValue::Kind::Number)
            throw ConfigError("[" + section + "] " + key + " must be a number");
        return v.number;
    }

    double number_or(const std::string& section, const std::string& key, double fallback) const {
        return has(section, key) ? number(section, key) : fallback;
    }

    std::string text(const std::string& section, const std::string& key) const {
        const ConfigValue& v = at(section, key);
        if (v.kind != ConfigValue::Kind::String)
            throw ConfigError("[" + section + "] " + key + " must be a string");
        return v.text;
    }

    std::string text_or(const std::string& section, const std::string& key,
                        const std::string& fallback) const {
        return has(section, key) ? text(section, key) : fallback;
    }

    bool boolean_or(const std::string& section, const std::string& key, bool fallback) const {
        if (!has(section, key)) return fallback;
        const ConfigValue& v = at(section, key);
        if (v.kind != ConfigValue::Kind::Boolean)
            throw ConfigError("[" + section + "] " + key + " must be true or false");
        return v.boolean;
    }

    /// A scalar number or an array of numbers, returned uniformly as a vector.
    std::vector<double> numbers(const std::string& section, const std::string& key) const {
        const ConfigValue& v = at(section, key);
        std::vector<double> out;
        if (v.kind == ConfigValue::Kind::Number) {
            out.push_back(v.number);
        } else if (v.kind == ConfigValue::Kind::Array) {
            for (const auto& item : v.items) {
                if (item.kind != ConfigValue::Kind::Number)
                    throw ConfigError("[" + section + "] " + key + " must hold numbers");
                out.push_back(item.number);
            }
        } else {
            throw ConfigError("[" + section + "] " + key + " must be a number or array");
        }
        return out;
    }

    std::vector<double> numbers_or(const std::string& section, const std::string& key,
                                   std::vector<double> fallback) const {
        return has(section, key) ? numbers(section, key) : fallback;
    }

    std::vector<std::string> texts(const std::string& section, const std::string& key) const {
        const ConfigValue& v = at(section, key);
        std::vector<std::string> out;
        if (v.kind == ConfigValue::Kind::String) {
            out.push_back(v.text);
        } else if (v.kind == ConfigValue::Kind::Array) {
            for (const auto& item : v.items) {
                if (item.kind != ConfigValue::Kind::String)
                    throw ConfigError("[" + section + "] " + key + " must hold strings");
                out.push_back(item.text);
            }
        } else {
            throw ConfigError("[" + section + "] " + key + " must be a string or array");
        }
        return out;
    }

  private:
    std::map<std::string, std::map<std::string, ConfigValue>> tables_;
};

} // namespace hls
