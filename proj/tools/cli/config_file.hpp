#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bsauth/core_stats.hpp"

namespace bsauth::cli {

/// Malformed or inconsistent configuration. what() is a complete diagnostic
/// of the form "<source>:<line>: [section] key: problem".
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Flat sectioned key-value text:
 *
 *     # comment
 *     [experiment]
 *     sinr_db  = 5
 *     pfa_grid = 0.01, 0.05, 0.1   # trailing comment
 *
 * Keys are unique within a section. Values are typed on access; every access
 * error names the source, line, section and key.
 */
class ConfigFile {
public:
    static ConfigFile parse(std::string_view text, std::string source);
    static ConfigFile load(const std::filesystem::path& path);

    const std::string& source() const noexcept { return source_; }
    bool has_section(const std::string& section) const;
    bool has(const std::string& section, const std::string& key) const;

    /// Throws ConfigError for any section or key outside `allowed`.
    void require_only(const std::map<std::string, std::set<std::string>>& allowed,
                      std::string_view context) const;

    std::optional<std::string> text(const std::string& section, const std::string& key) const;
    std::optional<double> number(const std::string& section, const std::string& key) const;
    std::optional<std::uint64_t> unsigned_integer(const std::string& section, const std::string& key) const;
    std::optional<Complex> complex(const std::string& section, const std::string& key) const;
    std::optional<std::vector<double>> number_list(const std::string& section, const std::string& key) const;

    /// Diagnostic prefix for an existing key ("file:line: [section] key: ").
    std::string where(const std::string& section, const std::string& key) const;

    [[noreturn]] void fail(const std::string& section, const std::string& key,
                           const std::string& problem) const;

private:
    struct Entry {
        std::string value;
        int line;
    };

    const Entry* find(const std::string& section, const std::string& key) const;

    std::string source_;
    std::map<std::string, std::map<std::string, Entry>> sections_;
    std::map<std::string, int> section_lines_;
};

/// Parses "re", "im i", "re+im i" or "re-im i" (no spaces), e.g. "0.8-0.3i".
std::optional<Complex> parse_complex(std::string_view s);

/// Strict whole-string double parse.
std::optional<double> parse_double(std::string_view s);

}  // namespace bsauth::cli
