#pragma once

#include <fstream>
#include <map>
#include <sstream>

#include "core.hpp"

namespace halfspace {

// Sectioned key=value run configs:
//   [grid]
//   Nx = 256        # comment
// One file per run; values are typed at access time.
struct config_parse_error : std::runtime_error {
    int line, column;
    config_parse_error(const std::string& what, int l, int c)
        : std::runtime_error(what + " (line " + std::to_string(l) + ", column " +
                             std::to_string(c) + ")"),
          line(l),
          column(c) {}
};

class Config {
  public:
    static Config parse(std::istream& in) {
        Config cfg;
        std::string line;
        int lineno = 0;
        std::string section;
        while (std::getline(in, line)) {
            ++lineno;
            std::string_view sv(line);
            std::size_t hash = sv.find('#');
            if (hash != std::string_view::npos) sv = sv.substr(0, hash);
            std::size_t b = sv.find_first_not_of(" \t\r");
            if (b == std::string_view::npos) continue;
            std::size_t e = sv.find_last_not_of(" \t\r");
            sv = sv.substr(b, e - b + 1);
            if (sv.front() == '[') {
                if (sv.back() != ']')
                    throw config_parse_error("unterminated section header", lineno,
                                             static_cast<int>(b + 1));
                section = std::string(sv.substr(1, sv.size() - 2));
                if (section.empty())
                    throw config_parse_error("empty section name", lineno, static_cast<int>(b + 2));
                continue;
            }
            std::size_t eq = sv.find('=');
            if (eq == std::string_view::npos)
                throw config_parse_error("expected key = value", lineno, static_cast<int>(b + 1));
            std::string key(sv.substr(0, eq));
            std::string val(sv.substr(eq + 1));
            auto trim = [](std::string& s) {
                std::size_t x = s.find_first_not_of(" \t");
                std::size_t y = s.find_last_not_of(" \t");
                s = x == std::string::npos ? std::string() : s.substr(x, y - x + 1);
            };
            trim(key);
            trim(val);
            if (key.empty())
                throw config_parse_error("empty key", lineno, static_cast<int>(b + 1));
            if (section.empty())
                throw config_parse_error("key outside any section", lineno,
                                         static_cast<int>(b + 1));
            cfg.values_[section + "." + key] = val;
        }
        return cfg;
    }

    static Config parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw structural_error("cannot open config: " + path);
        return parse(in);
    }

    bool has(const std::string& section, const std::string& key) const {
        return values_.count(section + "." + key) > 0;
    }
    std::string get_string(const std::string& section, const std::string& key) const {
        auto it = values_.find(section + "." + key);
        if (it == values_.end())
            throw structural_error("missing config value [" + section + "] " + key);
        return it->second;
    }
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& dflt) const {
        auto it = values_.find(section + "." + key);
        return it == values_.end() ? dflt : it->second;
    }
    double get_double(const std::string& section, const std::string& key) const {
        return to_double(section, key, get_string(section, key));
    }
    double get_double(const std::string& section, const std::string& key, double dflt) const {
        if (!has(section, key)) return dflt;
        return get_double(section, key);
    }
    long get_int(const std::string& section, const std::string& key) const {
        std::string s = get_string(section, key);
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(s, &used);
        } catch (const std::exception&) {
            throw structural_error("[" + section + "] " + key + ": not an integer: " + s);
        }
        if (used != s.size())
            throw structural_error("[" + section + "] " + key + ": not an integer: " + s);
        return v;
    }
    long get_int(const std::string& section, const std::string& key, long dflt) const {
        if (!has(section, key)) return dflt;
        return get_int(section, key);
    }
    bool get_bool(const std::string& section, const std::string& key, bool dflt) const {
        if (!has(section, key)) return dflt;
        std::string s = get_string(section, key);
        if (s == "true" || s == "1" || s == "yes") return true;
        if (s == "false" || s == "0" || s == "no") return false;
        throw structural_error("[" + section + "] " + key + ": not a boolean: " + s);
    }

    const std::map<std::string, std::string>& values() const { return values_; }

  private:
    static double to_double(const std::string& section, const std::string& key,
                            const std::string& s) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw structural_error("[" + section + "] " + key + ": not a number: " + s);
        }
        if (used != s.size())
            throw structural_error("[" + section + "] " + key + ": not a number: " + s);
        return v;
    }

    std::map<std::string, std::string> values_;
};

}  // namespace halfspace
