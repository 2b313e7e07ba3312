#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>

namespace l1cp {

/// "key = value" lines. Blank lines and lines starting with '#' are ignored.
/// Keys are unique; a repeated key is a ParseError naming both lines.
class KeyValueConfig {
public:
    [[nodiscard]] static KeyValueConfig parse(std::istream& in, const std::string& source);
    [[nodiscard]] static KeyValueConfig parse_file(const std::string& path);

    [[nodiscard]] bool has(const std::string& key) const { return entries_.count(key) != 0; }
    [[nodiscard]] std::optional<std::string> get_string(const std::string& key) const;
    [[nodiscard]] std::optional<double> get_double(const std::string& key) const;
    [[nodiscard]] std::optional<std::uint64_t> get_uint(const std::string& key) const;
    [[nodiscard]] std::optional<bool> get_bool(const std::string& key) const;

    /// Line number of key, for error messages.
    [[nodiscard]] std::size_t line_of(const std::string& key) const;
    [[nodiscard]] const std::string& source() const noexcept { return source_; }

    /// Throws ParseError for the first key not in allowed.
    void require_known(const std::set<std::string>& allowed) const;

private:
    struct Entry {
        std::string value;
        std::size_t line = 0;
    };
    std::string source_;
    std::map<std::string, Entry> entries_;
};

}  // namespace l1cp
