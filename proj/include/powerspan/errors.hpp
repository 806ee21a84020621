#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace powerspan {

/// Violated operation precondition (maps to CLI exit code 2).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A constructed object failed its numerical certification (CLI exit code 3).
/// Carries the residual tables that were measured, so callers can report
/// exactly what was checked.
class CertificationError : public std::runtime_error {
public:
    struct ResidualTable {
        std::string label;
        std::vector<std::pair<long long, double>> rows;  // (exponent, |residual|)
    };

    CertificationError(const std::string& what, std::vector<ResidualTable> tables)
        : std::runtime_error(what), residual_tables(std::move(tables)) {}

    std::vector<ResidualTable> residual_tables;
};

/// Orthogonalization collapsed: the named exponent adds no new direction at
/// working precision.
class DegenerateSystemError : public std::runtime_error {
public:
    DegenerateSystemError(const std::string& what, long long exponent)
        : std::runtime_error(what), offending_exponent(exponent) {}

    long long offending_exponent;
};

/// A shift pair with rational difference hit a vanishing denominator.
class ResonanceError : public PreconditionError {
public:
    ResonanceError(const std::string& what, long long k)
        : PreconditionError(what), resonant_k(k) {}

    long long resonant_k;
};

/// The map has more than one interior critical point.
class MultiFoldError : public PreconditionError {
public:
    MultiFoldError(const std::string& what, std::vector<double> points)
        : PreconditionError(what), critical_points(std::move(points)) {}

    std::vector<double> critical_points;
};

}  // namespace powerspan
