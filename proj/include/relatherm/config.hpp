// config.hpp — Scenario configuration files: key-value pairs under [section]
// headers, schema-checked with line-precise diagnostics. Values are scalars,
// bracketed number lists, linspace(a, b, n) grids, or row-major complex
// matrices written as [re, im] pairs.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "relatherm/types.hpp"

namespace relatherm {

class Config {
  public:
    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text, const std::string& name = "<config>");

    // Keys are addressed as "section.key"; top-level keys have no dot.
    bool has(const std::string& key) const;

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    // Bracketed list or linspace(a, b, n); grids must increase strictly.
    std::vector<double> get_grid(const std::string& key) const;
    std::vector<double> get_grid(const std::string& key,
                                 const std::vector<double>& fallback) const;

    // Bracketed list without the monotonicity requirement.
    std::vector<double> get_list(const std::string& key) const;

    // dim x dim complex matrix from dim^2 row-major [re, im] pairs.
    Matrix get_complex_matrix(const std::string& key, Index dim) const;

    // Enumerated string value; throws with the admissible set on mismatch.
    std::string get_choice(const std::string& key, const std::vector<std::string>& choices,
                           const std::string& fallback) const;

    [[noreturn]] void fail(const std::string& key, const std::string& message) const;

    std::uint64_t hash() const { return hash_; }
    const std::string& source_name() const { return name_; }

    // All keys present under a section, in file order.
    std::vector<std::string> keys_in_section(const std::string& section) const;

  private:
    struct Entry {
        std::string value;
        int line;
        int order;
    };

    const Entry* find(const std::string& key) const;
    const Entry& require(const std::string& key) const;
    [[noreturn]] void fail_at(int line, const std::string& key,
                              const std::string& message) const;

    std::string name_;
    std::map<std::string, Entry> entries_;
    std::uint64_t hash_{0};
};

}  // namespace relatherm
