#include "pcdae/io/config.hpp"

#include <fstream>
#include <istream>

#include "pcdae/errors.hpp"

namespace pcdae {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool valid_key(const std::string& key) {
    if (key.empty() || key.front() == '.' || key.back() == '.') {
        return false;
    }
    for (char c : key) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '_' || c == '.' || c == '-';
        if (!ok) {
            return false;
        }
    }
    return true;
}

}  // namespace

Config Config::parse(std::istream& in, const std::string& source) {
    Config cfg;
    cfg.source_ = source;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        const std::string at = source + ":" + std::to_string(lineno) + ": ";
        if (eq == std::string::npos) {
            throw ConfigError(at + "expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!valid_key(key)) {
            throw ConfigError(at + "invalid key '" + key + "'");
        }
        if (value.empty()) {
            throw ConfigError(at + "key '" + key + "' has no value");
        }
        if (cfg.entries_.count(key) != 0) {
            throw ConfigError(at + "duplicate key '" + key + "'");
        }
        cfg.entries_[key] = {value, lineno};
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config '" + path + "'");
    }
    return parse(in, path);
}

void Config::set(const std::string& key, const std::string& value) {
    entries_[key] = {value, 0};
}

std::string Config::where(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end() || it->second.line == 0) {
        return "command line";
    }
    return source_ + ":" + std::to_string(it->second.line);
}

}  // namespace pcdae
