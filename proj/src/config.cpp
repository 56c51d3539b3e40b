#include "relatherm/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace relatherm {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

bool parse_number(const std::string& text, double& out) {
    const char* begin = text.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end != begin && *end == '\0';
}

// numbers inside a bracketed list, commas or whitespace as separators
std::vector<double> split_numbers(const std::string& body, bool& ok) {
    std::vector<double> out;
    std::string token;
    ok = true;
    auto flush = [&]() {
        if (token.empty()) return;
        double v;
        if (!parse_number(token, v)) ok = false;
        out.push_back(v);
        token.clear();
    };
    for (char c : body) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c)))
            flush();
        else
            token += c;
    }
    flush();
    return out;
}

}  // namespace

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open configuration file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_string(buffer.str(), path);
}

Config Config::from_string(const std::string& text, const std::string& name) {
    Config cfg;
    cfg.name_ = name;
    cfg.hash_ = fnv1a64(text);

    std::istringstream in(text);
    std::string line, section;
    int line_no = 0, order = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(name + ":" + std::to_string(line_no) +
                                  ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError(name + ":" + std::to_string(line_no) + ": empty section name");
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(name + ":" + std::to_string(line_no) +
                              ": expected 'key = value' or '[section]'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(name + ":" + std::to_string(line_no) + ": empty key");
        const std::string full = section.empty() ? key : section + "." + key;
        if (cfg.entries_.count(full))
            throw ConfigError(name + ":" + std::to_string(line_no) + ": duplicate key '" + full +
                              "' (first defined at line " +
                              std::to_string(cfg.entries_[full].line) + ")");
        cfg.entries_[full] = {value, line_no, order++};
    }
    return cfg;
}

const Config::Entry* Config::find(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

const Config::Entry& Config::require(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) throw ConfigError(name_ + ": missing required key '" + key + "'");
    return *e;
}

void Config::fail_at(int line, const std::string& key, const std::string& message) const {
    throw ConfigError(name_ + ":" + std::to_string(line) + ": " + key + ": " + message);
}

void Config::fail(const std::string& key, const std::string& message) const {
    const Entry* e = find(key);
    if (e) fail_at(e->line, key, message);
    throw ConfigError(name_ + ": " + key + ": " + message);
}

bool Config::has(const std::string& key) const { return find(key) != nullptr; }

std::string Config::get_string(const std::string& key) const { return require(key).value; }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    const Entry* e = find(key);
    return e ? e->value : fallback;
}

double Config::get_double(const std::string& key) const {
    const Entry& e = require(key);
    double v;
    if (!parse_number(e.value, v))
        fail_at(e.line, key, "expected a number, got '" + e.value + "'");
    return v;
}

double Config::get_double(const std::string& key, double fallback) const {
    return find(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key) const {
    const Entry& e = require(key);
    double v;
    if (!parse_number(e.value, v) || v != static_cast<double>(static_cast<long long>(v)))
        fail_at(e.line, key, "expected an integer, got '" + e.value + "'");
    return static_cast<int>(v);
}

int Config::get_int(const std::string& key, int fallback) const {
    return find(key) ? get_int(key) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    const Entry* e = find(key);
    if (!e) return fallback;
    if (e->value == "true" || e->value == "yes" || e->value == "on") return true;
    if (e->value == "false" || e->value == "no" || e->value == "off") return false;
    fail_at(e->line, key, "expected true/false, got '" + e->value + "'");
}

std::vector<double> Config::get_grid(const std::string& key) const {
    const Entry& e = require(key);
    const std::string& v = e.value;
    if (v.rfind("linspace", 0) == 0) {
        const std::size_t open = v.find('('), close = v.rfind(')');
        if (open == std::string::npos || close == std::string::npos || close < open)
            fail_at(e.line, key, "malformed linspace; expected linspace(start, stop, count)");
        bool ok;
        const auto args = split_numbers(v.substr(open + 1, close - open - 1), ok);
        if (!ok || args.size() != 3)
            fail_at(e.line, key, "linspace takes exactly three numeric arguments");
        const int count = static_cast<int>(args[2]);
        if (count < 1 || args[2] != count)
            fail_at(e.line, key, "linspace count must be a positive integer");
        if (count > 1 && !(args[1] > args[0]))
            fail_at(e.line, key, "linspace range must be increasing");
        std::vector<double> grid(count);
        for (int i = 0; i < count; ++i)
            grid[i] = count == 1
                          ? args[0]
                          : args[0] + (args[1] - args[0]) * i / static_cast<double>(count - 1);
        return grid;
    }
    if (v.empty() || v.front() != '[' || v.back() != ']')
        fail_at(e.line, key, "expected a bracketed list or linspace(start, stop, count)");
    bool ok;
    const auto grid = split_numbers(v.substr(1, v.size() - 2), ok);
    if (!ok) fail_at(e.line, key, "list contains a non-numeric entry");
    if (grid.empty()) fail_at(e.line, key, "grid must be non-empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) fail_at(e.line, key, "grid must be strictly increasing");
    return grid;
}

std::vector<double> Config::get_grid(const std::string& key,
                                     const std::vector<double>& fallback) const {
    return find(key) ? get_grid(key) : fallback;
}

std::vector<double> Config::get_list(const std::string& key) const {
    const Entry& e = require(key);
    const std::string& v = e.value;
    if (v.empty() || v.front() != '[' || v.back() != ']')
        fail_at(e.line, key, "expected a bracketed list");
    bool ok;
    const auto list = split_numbers(v.substr(1, v.size() - 2), ok);
    if (!ok) fail_at(e.line, key, "list contains a non-numeric entry");
    if (list.empty()) fail_at(e.line, key, "list must be non-empty");
    return list;
}

Matrix Config::get_complex_matrix(const std::string& key, Index dim) const {
    const Entry& e = require(key);
    // concatenated [re, im] pairs, row-major
    std::vector<double> numbers;
    std::string token;
    int depth = 0;
    for (char c : e.value) {
        if (c == '[') {
            if (++depth != 1) fail_at(e.line, key, "nested brackets in matrix literal");
        } else if (c == ']') {
            if (--depth != 0) fail_at(e.line, key, "unbalanced brackets in matrix literal");
            bool ok;
            const auto pair = split_numbers(token, ok);
            if (!ok || pair.size() != 2)
                fail_at(e.line, key, "each entry must be a [re, im] pair");
            numbers.push_back(pair[0]);
            numbers.push_back(pair[1]);
            token.clear();
        } else if (depth == 1) {
            token += c;
        } else if (!std::isspace(static_cast<unsigned char>(c)) && c != ',') {
            fail_at(e.line, key, "unexpected character between matrix entries");
        }
    }
    if (depth != 0) fail_at(e.line, key, "unbalanced brackets in matrix literal");
    if (static_cast<Index>(numbers.size()) != 2 * dim * dim)
        fail_at(e.line, key,
                "expected " + std::to_string(dim * dim) + " [re, im] pairs, got " +
                    std::to_string(numbers.size() / 2));
    Matrix m(dim, dim);
    for (Index r = 0; r < dim; ++r)
        for (Index c = 0; c < dim; ++c) {
            const Index k = 2 * (r * dim + c);
            m(r, c) = Complex(numbers[k], numbers[k + 1]);
        }
    return m;
}

std::string Config::get_choice(const std::string& key, const std::vector<std::string>& choices,
                               const std::string& fallback) const {
    const Entry* e = find(key);
    const std::string value = e ? e->value : fallback;
    if (std::find(choices.begin(), choices.end(), value) != choices.end()) return value;
    std::string admissible;
    for (const auto& c : choices) admissible += (admissible.empty() ? "" : " | ") + c;
    if (e) fail_at(e->line, key, "invalid value '" + value + "'; expected one of: " + admissible);
    throw ConfigError(name_ + ": " + key + ": invalid default '" + value + "'");
}

std::vector<std::string> Config::keys_in_section(const std::string& section) const {
    std::vector<std::pair<int, std::string>> found;
    const std::string prefix = section + ".";
    for (const auto& [key, entry] : entries_)
        if (key.rfind(prefix, 0) == 0) found.emplace_back(entry.order, key.substr(prefix.size()));
    std::sort(found.begin(), found.end());
    std::vector<std::string> keys;
    keys.reserve(found.size());
    for (auto& [order, key] : found) keys.push_back(std::move(key));
    return keys;
}

}  // namespace relatherm
