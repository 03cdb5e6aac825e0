#include "config_file.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bsauth::cli {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string_view strip_comment(std::string_view line)
{
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] != '#' && line[i] != ';') continue;
        if (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1]))) return line.substr(0, i);
    }
    return line;
}

// Parses a leading floating-point number (optionally '+'-signed) and returns
// the number of characters consumed, or 0.
std::size_t parse_leading_double(std::string_view s, double& out)
{
    std::size_t skip = 0;
    if (!s.empty() && s.front() == '+') {
        skip = 1;
        if (s.size() > 1 && s[1] == '-') return 0;
    }
    const char* first = s.data() + skip;
    const auto res = std::from_chars(first, s.data() + s.size(), out);
    if (res.ec != std::errc{}) return 0;
    return static_cast<std::size_t>(res.ptr - s.data());
}

}  // namespace

std::optional<double> parse_double(std::string_view s)
{
    s = trim(s);
    double v = 0.0;
    const std::size_t used = parse_leading_double(s, v);
    if (used == 0 || used != s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<Complex> parse_complex(std::string_view s)
{
    s = trim(s);
    double first = 0.0;
    const std::size_t n1 = parse_leading_double(s, first);
    if (n1 == 0) return std::nullopt;
    std::string_view rest = s.substr(n1);
    if (rest.empty()) return Complex{first, 0.0};
    if (rest == "i") return Complex{0.0, first};
    if (rest.front() != '+' && rest.front() != '-') return std::nullopt;
    const double sign = rest.front() == '-' ? -1.0 : 1.0;
    rest.remove_prefix(1);
    double second = 0.0;
    if (rest == "i") {
        second = 1.0;
    } else {
        if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) return std::nullopt;
        const std::size_t n2 = parse_leading_double(rest, second);
        if (n2 == 0 || rest.substr(n2) != "i") return std::nullopt;
    }
    const Complex z{first, sign * second};
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
    return z;
}

ConfigFile ConfigFile::parse(std::string_view text, std::string source)
{
    ConfigFile cfg;
    cfg.source_ = std::move(source);
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view raw = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

        const std::string_view line = trim(strip_comment(raw));
        if (line.empty()) continue;
        const std::string at = cfg.source_ + ":" + std::to_string(line_no) + ": ";

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(at + "unterminated section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section.empty()) throw ConfigError(at + "empty section name");
            if (cfg.section_lines_.count(section)) {
                throw ConfigError(at + "section [" + section + "] appears twice");
            }
            cfg.section_lines_[section] = line_no;
            cfg.sections_[section];
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(at + "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError(at + "missing key before '='");
        if (section.empty()) throw ConfigError(at + "key '" + key + "' appears before any [section]");
        if (value.empty()) throw ConfigError(at + "[" + section + "] " + key + ": empty value");
        auto& entries = cfg.sections_[section];
        if (entries.count(key)) {
            throw ConfigError(at + "[" + section + "] " + key + ": duplicate key (first on line " +
                              std::to_string(entries.at(key).line) + ")");
        }
        entries.emplace(key, Entry{value, line_no});
    }
    return cfg;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string() + ": cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
}

bool ConfigFile::has_section(const std::string& section) const
{
    return sections_.count(section) != 0;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const
{
    return find(section, key) != nullptr;
}

const ConfigFile::Entry* ConfigFile::find(const std::string& section, const std::string& key) const
{
    const auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    const auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
}

void ConfigFile::require_only(const std::map<std::string, std::set<std::string>>& allowed,
                              std::string_view context) const
{
    for (const auto& [section, entries] : sections_) {
        const auto a = allowed.find(section);
        if (a == allowed.end()) {
            throw ConfigError(source_ + ":" + std::to_string(section_lines_.at(section)) +
                              ": section [" + section + "] is not used by " + std::string(context));
        }
        for (const auto& [key, entry] : entries) {
            if (!a->second.count(key)) {
                throw ConfigError(source_ + ":" + std::to_string(entry.line) + ": [" + section +
                                  "] " + key + ": unknown key for " + std::string(context));
            }
        }
    }
}

std::string ConfigFile::where(const std::string& section, const std::string& key) const
{
    const Entry* e = find(section, key);
    const std::string line = e ? ":" + std::to_string(e->line) : "";
    return source_ + line + ": [" + section + "] " + key + ": ";
}

void ConfigFile::fail(const std::string& section, const std::string& key, const std::string& problem) const
{
    throw ConfigError(where(section, key) + problem);
}

std::optional<std::string> ConfigFile::text(const std::string& section, const std::string& key) const
{
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    return e->value;
}

std::optional<double> ConfigFile::number(const std::string& section, const std::string& key) const
{
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    const auto v = parse_double(e->value);
    if (!v) fail(section, key, "expected a finite number, got '" + e->value + "'");
    return v;
}

std::optional<std::uint64_t> ConfigFile::unsigned_integer(const std::string& section,
                                                          const std::string& key) const
{
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    std::uint64_t v = 0;
    const char* end = e->value.data() + e->value.size();
    const auto res = std::from_chars(e->value.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end) {
        fail(section, key, "expected a nonnegative integer, got '" + e->value + "'");
    }
    return v;
}

std::optional<Complex> ConfigFile::complex(const std::string& section, const std::string& key) const
{
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    const auto v = parse_complex(e->value);
    if (!v) fail(section, key, "expected a complex number like 0.8-0.3i, got '" + e->value + "'");
    return v;
}

std::optional<std::vector<double>> ConfigFile::number_list(const std::string& section,
                                                           const std::string& key) const
{
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    std::vector<double> out;
    std::string_view rest = e->value;
    std::size_t index = 0;
    for (;;) {
        const std::size_t comma = rest.find(',');
        const std::string_view item = trim(rest.substr(0, comma));
        const auto v = parse_double(item);
        if (!v) {
            fail(section, key, "entry " + std::to_string(index) + " ('" + std::string(item) +
                                   "') is not a finite number");
        }
        out.push_back(*v);
        ++index;
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace bsauth::cli
