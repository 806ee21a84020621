#include "powerspan/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "powerspan/errors.hpp"

namespace powerspan::config {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

}  // namespace

Config Config::parse_text(std::string_view text) {
    Config cfg;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view raw =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        ++line_no;
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

        const std::size_t hash = raw.find('#');
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected `key = value`", line_no,
                              static_cast<int>(raw.find_first_not_of(" \t")) + 1);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", line_no, 1);
        if (value.empty()) throw ConfigError("empty value for key '" + key + "'", line_no,
                                             static_cast<int>(eq) + 2);
        if (cfg.has(key)) throw ConfigError("duplicate key '" + key + "'", line_no, 1);
        cfg.entries_.emplace_back(key, value);
        cfg.lines_.push_back(line_no);
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'", 0, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

bool Config::has(const std::string& key) const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const auto& kv) { return kv.first == key; });
}

int Config::line_of(const std::string& key) const {
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i].first == key) return lines_[i];
    return 0;
}

const std::string& Config::get(const std::string& key) const {
    for (const auto& kv : entries_)
        if (kv.first == key) return kv.second;
    throw ConfigError("missing required key '" + key + "'", 0, 0);
}

std::string Config::get_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? get(key) : fallback;
}

long long Config::get_int(const std::string& key) const {
    try {
        return std::stoll(get(key));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' is not an integer", line_of(key), 1);
    }
}

long long Config::get_int_or(const std::string& key, long long fallback) const {
    return has(key) ? get_int(key) : fallback;
}

double Config::get_double(const std::string& key) const {
    const std::string& v = get(key);
    if (v == "inf" || v == "infinity") return std::numeric_limits<double>::infinity();
    try {
        return std::stod(v);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' is not a number", line_of(key), 1);
    }
}

double Config::get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

realnum::SymbolicReal Config::get_symbolic(const std::string& key) const {
    try {
        return realnum::SymbolicReal::parse(get(key));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("key '") + key + "': " + e.what(), line_of(key), 1);
    }
}

indexsets::LambdaFamily Config::get_family(const std::string& key) const {
    try {
        return indexsets::LambdaFamily::parse(get(key));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("key '") + key + "': " + e.what(), line_of(key), 1);
    }
}

std::pair<realnum::SymbolicReal, realnum::SymbolicReal> Config::get_interval(
    const std::string& key) const {
    const std::string& v = get(key);
    const auto comma = v.find(',');
    if (comma == std::string::npos)
        throw ConfigError("key '" + key + "' must be `a,b`", line_of(key), 1);
    try {
        return {realnum::SymbolicReal::parse(v.substr(0, comma)),
                realnum::SymbolicReal::parse(v.substr(comma + 1))};
    } catch (const std::exception& e) {
        throw ConfigError(std::string("key '") + key + "': " + e.what(), line_of(key), 1);
    }
}

void Config::require_known(const std::vector<std::string>& allowed) const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (std::find(allowed.begin(), allowed.end(), entries_[i].first) == allowed.end())
            throw ConfigError("unknown key '" + entries_[i].first + "'", lines_[i], 1);
    }
}

funcrep::IntervalFunction make_interval_builtin(const std::string& spec, double a, double b) {
    using funcrep::Complex;
    if (spec == "exp")
        return funcrep::make_interval_function(a, b, [](double x) { return Complex(std::exp(x), 0); });
    if (spec == "exp_sin")
        return funcrep::make_interval_function(
            a, b, [](double x) { return Complex(std::exp(std::sin(kTwoPi * x)), 0); });
    if (spec == "abs_cos")
        return funcrep::make_interval_function(
            a, b, [](double x) { return Complex(std::abs(std::cos(kTwoPi * x)), 0); });
    if (spec.rfind("poly:", 0) == 0) {
        std::vector<double> coeffs;
        for (const std::string& part : split(spec.substr(5), ','))
            coeffs.push_back(std::stod(part));
        return funcrep::make_interval_function(a, b, [coeffs](double x) {
            double acc = 0.0;
            for (std::size_t j = coeffs.size(); j-- > 0;) acc = acc * x + coeffs[j];
            return Complex(acc, 0);
        });
    }
    throw PreconditionError("unknown interval function builtin '" + spec + "'");
}

funcrep::PeriodicFunction make_periodic_builtin(const std::string& spec, std::uint64_t seed) {
    using funcrep::Complex;
    if (spec == "one") return funcrep::PeriodicFunction::from_coeff_list({{0, Complex(1, 0)}});
    if (spec == "exp_sin")
        return funcrep::fourier_coeffs(
            [](double t) { return Complex(std::exp(std::sin(kTwoPi * t)), 0); }, 32, 256);
    if (spec.rfind("cos:", 0) == 0) {
        const int k = static_cast<int>(std::stoll(spec.substr(4)));
        return funcrep::PeriodicFunction::from_coeff_list(
            {{k, Complex(0.5, 0)}, {-k, Complex(0.5, 0)}});
    }
    if (spec.rfind("sin:", 0) == 0) {
        const int k = static_cast<int>(std::stoll(spec.substr(4)));
        return funcrep::PeriodicFunction::from_coeff_list(
            {{k, Complex(0, -0.5)}, {-k, Complex(0, 0.5)}});
    }
    if (spec.rfind("trigpoly:", 0) == 0) {
        std::vector<std::pair<int, Complex>> entries;
        for (const std::string& part : split(spec.substr(9), ';')) {
            const auto fields = split(part, ':');
            if (fields.size() != 3)
                throw PreconditionError("trigpoly needs k:re:im triples, got '" + part + "'");
            entries.emplace_back(static_cast<int>(std::stoll(fields[0])),
                                 Complex(std::stod(fields[1]), std::stod(fields[2])));
        }
        return funcrep::PeriodicFunction::from_coeff_list(entries);
    }
    if (spec.rfind("random_trig:", 0) == 0) {
        const int K = static_cast<int>(std::stoll(spec.substr(12)));
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        std::vector<std::pair<int, Complex>> entries;
        for (int k = 1; k <= K; ++k) {
            double re = 0, im = 0;
            do {
                re = unit(rng);
                im = unit(rng);
            } while (re * re + im * im > 1.0);
            entries.emplace_back(k, Complex(re, im));
            // real-valued function: conjugate-symmetric partner
            entries.emplace_back(-k, Complex(re, -im));
        }
        return funcrep::PeriodicFunction::from_coeff_list(entries);
    }
    throw PreconditionError("unknown periodic builtin '" + spec + "'");
}

psipower::SmoothMap make_psi_builtin(const std::string& spec, double a, double b) {
    const double PI = std::numbers::pi;
    if (spec == "square")
        return psipower::SmoothMap(
            a, b, [](double x) { return x * x; }, [](double x) { return 2 * x; },
            [](double) { return 2.0; }, "square");
    if (spec == "cospi")
        return psipower::SmoothMap(
            a, b, [PI](double t) { return std::cos(PI * t); },
            [PI](double t) { return -PI * std::sin(PI * t); },
            [PI](double t) { return -PI * PI * std::cos(PI * t); }, "cospi");
    if (spec == "cos2pi")
        return psipower::SmoothMap(
            a, b, [](double t) { return std::cos(kTwoPi * t); },
            [](double t) { return -kTwoPi * std::sin(kTwoPi * t); },
            [](double t) { return -kTwoPi * kTwoPi * std::cos(kTwoPi * t); }, "cos2pi");
    if (spec == "sinpi")
        return psipower::SmoothMap(
            a, b, [PI](double t) { return std::sin(PI * t); },
            [PI](double t) { return PI * std::cos(PI * t); },
            [PI](double t) { return -PI * PI * std::sin(PI * t); }, "sinpi");
    if (spec.rfind("poly:", 0) == 0) {
        std::vector<double> c;
        for (const std::string& part : split(spec.substr(5), ',')) c.push_back(std::stod(part));
        auto horner = [](const std::vector<double>& coeffs, double x) {
            double acc = 0.0;
            for (std::size_t j = coeffs.size(); j-- > 0;) acc = acc * x + coeffs[j];
            return acc;
        };
        std::vector<double> d1, d2;
        for (std::size_t j = 1; j < c.size(); ++j) d1.push_back(c[j] * static_cast<double>(j));
        for (std::size_t j = 1; j < d1.size(); ++j) d2.push_back(d1[j] * static_cast<double>(j));
        return psipower::SmoothMap(
            a, b, [c, horner](double x) { return horner(c, x); },
            [d1, horner](double x) { return horner(d1, x); },
            [d2, horner](double x) { return horner(d2, x); }, spec);
    }
    throw PreconditionError("unknown psi builtin '" + spec + "'");
}

}  // namespace powerspan::config
