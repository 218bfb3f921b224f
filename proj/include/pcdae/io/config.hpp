#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>

namespace pcdae {

struct ConfigEntry {
    std::string value;
    std::size_t line = 0;
};

/// Flat `key = value` file. `#` starts a comment; keys use dotted sections
/// such as `controller.rtol`. Duplicate keys are rejected.
class Config {
public:
    [[nodiscard]] static Config parse(std::istream& in, const std::string& source);
    /// Throws IoError when the file cannot be read, ConfigError on bad syntax.
    [[nodiscard]] static Config load(const std::string& path);

    [[nodiscard]] const std::map<std::string, ConfigEntry>& entries() const noexcept {
        return entries_;
    }
    [[nodiscard]] const std::string& source() const noexcept { return source_; }

    /// Adds or replaces a key; used for command-line overrides (line 0).
    void set(const std::string& key, const std::string& value);

    /// "source:line" for messages, or "command line" for overrides.
    [[nodiscard]] std::string where(const std::string& key) const;

private:
    std::string source_ = "<none>";
    std::map<std::string, ConfigEntry> entries_;
};

}  // namespace pcdae
