#pragma once

#include <stdexcept>
#include <string>

namespace coex {

// Invalid argument or configuration value.
struct ParameterError : std::invalid_argument {
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Mathematical domain violation (zero link distance, divergent exponent, ...).
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A serving tier that is empty with probability one.
struct DegenerateTierError : std::runtime_error {
    explicit DegenerateTierError(const std::string& what) : std::runtime_error(what) {}
};

// Problems with loaded data sets (geodata, result files).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// A bounded retry budget was exhausted.
struct TimeoutError : std::runtime_error {
    explicit TimeoutError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace coex
