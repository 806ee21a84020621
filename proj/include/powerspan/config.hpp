#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "powerspan/funcrep.hpp"
#include "powerspan/indexsets.hpp"
#include "powerspan/psipower.hpp"
#include "powerspan/realnum.hpp"

namespace powerspan::config {

/// Config file problem with its location (maps to CLI exit code 1).
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line, int column)
        : std::runtime_error(what + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")"),
          line(line), column(column) {}

    int line;
    int column;
};

/**
 * Key-value experiment configuration: one `key = value` pair per line,
 * `#` comments, duplicate keys rejected. Values are parsed on access;
 * every key must belong to the subcommand's declared set.
 */
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_text(std::string_view text);

    bool has(const std::string& key) const;
    const std::string& get(const std::string& key) const;  // throws ConfigError if missing
    std::string get_or(const std::string& key, const std::string& fallback) const;

    long long get_int(const std::string& key) const;
    long long get_int_or(const std::string& key, long long fallback) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    realnum::SymbolicReal get_symbolic(const std::string& key) const;
    indexsets::LambdaFamily get_family(const std::string& key) const;
    /// "a,b" with exact endpoint syntax
    std::pair<realnum::SymbolicReal, realnum::SymbolicReal> get_interval(const std::string& key) const;

    /// rejects any key outside `allowed`, reporting its source line
    void require_known(const std::vector<std::string>& allowed) const;

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

private:
    int line_of(const std::string& key) const;
    std::vector<std::pair<std::string, std::string>> entries_;  // insertion order
    std::vector<int> lines_;
};

/// Named interval-function builtins: `exp`, `exp_sin`, `abs_cos`,
/// `poly:c0,c1,...` (no arbitrary code in config files).
funcrep::IntervalFunction make_interval_builtin(const std::string& spec, double a, double b);

/// Named periodic builtins: `one`, `exp_sin`, `cos:k`, `sin:k`,
/// `trigpoly:k:re:im[;k:re:im...]`, `random_trig:K` (seeded, zero mean,
/// unit-disk coefficients).
funcrep::PeriodicFunction make_periodic_builtin(const std::string& spec, std::uint64_t seed);

/// Named smooth maps: `square` (x^2), `cospi`, `cos2pi`, `sinpi`,
/// `poly:c0,c1,...` (derivatives taken symbolically from the coefficients).
psipower::SmoothMap make_psi_builtin(const std::string& spec, double a, double b);

}  // namespace powerspan::config
