// config.hpp — flat `key = value` configuration files and typed access.
//
// The format is deliberately minimal: one `key = value` pair per line,
// '#' starts a comment, blank lines ignored. Values are decimal floats or
// bare words. Unknown keys are a hard error at the consumer level so that a
// typo in a run manifest never silently falls back to a default.

#pragma once

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace omsync {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Ordered key -> raw string value store. Keeps insertion order for
// reproducible serialization.
class ConfigMap {
public:
    void set(const std::string& key, const std::string& value) {
        if (values_.find(key) == values_.end()) order_.push_back(key);
        values_[key] = value;
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    const std::string& raw(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end())
            throw ConfigError("missing config key: " + key);
        return it->second;
    }

    double get_double(const std::string& key) const {
        const std::string& s = raw(key);
        char* end = nullptr;
        double v = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0')
            throw ConfigError("config key '" + key + "': not a number: '" + s + "'");
        return v;
    }

    double get_double(const std::string& key, double fallback) const {
        return has(key) ? get_double(key) : fallback;
    }

    int get_int(const std::string& key, int fallback) const {
        if (!has(key)) return fallback;
        double v = get_double(key);
        int i = static_cast<int>(v);
        if (static_cast<double>(i) != v)
            throw ConfigError("config key '" + key + "': not an integer: " + raw(key));
        return i;
    }

    bool get_bool(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const std::string& s = raw(key);
        if (s == "true" || s == "1" || s == "on") return true;
        if (s == "false" || s == "0" || s == "off") return false;
        throw ConfigError("config key '" + key + "': not a boolean: '" + s + "'");
    }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        return has(key) ? raw(key) : fallback;
    }

    const std::vector<std::string>& keys() const { return order_; }

    std::string serialize() const {
        std::ostringstream os;
        for (const auto& k : order_) os << k << " = " << values_.at(k) << "\n";
        return os.str();
    }

private:
    std::map<std::string, std::string> values_;
    std::vector<std::string> order_;
};

namespace detail {
inline std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}
}  // namespace detail

inline ConfigMap parse_config_text(const std::string& text, const std::string& origin = "<string>") {
    ConfigMap cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string t = detail::trim(line);
        if (t.empty()) continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value', got '" + t + "'");
        std::string key = detail::trim(t.substr(0, eq));
        std::string val = detail::trim(t.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key or value");
        cfg.set(key, val);
    }
    return cfg;
}

inline ConfigMap parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

}  // namespace omsync
