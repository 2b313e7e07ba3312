#include "l1cp/config.hpp"

#include "l1cp/error.hpp"

#include <charconv>
#include <fstream>
#include <string_view>

namespace l1cp {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in, const std::string& source) {
    KeyValueConfig cfg;
    cfg.source_ = source;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string_view text = trim(raw);
        if (text.empty() || text.front() == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) throw ParseError(source, line, "expected 'key = value'");
        const std::string key(trim(text.substr(0, eq)));
        const std::string value(trim(text.substr(eq + 1)));
        if (key.empty()) throw ParseError(source, line, "empty key");
        if (const auto it = cfg.entries_.find(key); it != cfg.entries_.end()) {
            throw ParseError(source, line,
                             "duplicate key '" + key + "' (first set on line " + std::to_string(it->second.line) + ")");
        }
        cfg.entries_.emplace(key, Entry{value, line});
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    return parse(in, path);
}

std::optional<std::string> KeyValueConfig::get_string(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second.value;
}

std::optional<double> KeyValueConfig::get_double(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    const std::string& v = it->second.value;
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw ParseError(source_, it->second.line, "'" + key + "' is not a number: '" + v + "'");
    }
    return out;
}

std::optional<std::uint64_t> KeyValueConfig::get_uint(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    const std::string& v = it->second.value;
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw ParseError(source_, it->second.line, "'" + key + "' is not a nonnegative integer: '" + v + "'");
    }
    return out;
}

std::optional<bool> KeyValueConfig::get_bool(const std::string& key) const {
    const auto v = get_string(key);
    if (!v) return std::nullopt;
    if (*v == "true" || *v == "1" || *v == "yes") return true;
    if (*v == "false" || *v == "0" || *v == "no") return false;
    throw ParseError(source_, line_of(key), "'" + key + "' is not a boolean: '" + *v + "'");
}

std::size_t KeyValueConfig::line_of(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
}

void KeyValueConfig::require_known(const std::set<std::string>& allowed) const {
    for (const auto& [key, entry] : entries_) {
        if (!allowed.count(key)) throw ParseError(source_, entry.line, "unknown key '" + key + "'");
    }
}

}  // namespace l1cp
