#pragma once

#include <stdexcept>
#include <string>

namespace linexplain {

// Feature id referenced outside the model's vocabulary.
class FeatureRangeError : public std::out_of_range {
public:
    explicit FeatureRangeError(const std::string& msg) : std::out_of_range(msg) {}
};

// A caller broke a documented precondition (unsorted ks, player already in
// coalition, zero samples, ...).
class ContractError : public std::logic_error {
public:
    explicit ContractError(const std::string& msg) : std::logic_error(msg) {}
};

// A computation would exceed a configured budget (subset-search evaluations,
// exact-Shapley player limit). The message names the bound that was hit.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& path, std::size_t line, const std::string& msg)
        : std::runtime_error(path + ":" + std::to_string(line) + ": " + msg),
          line_(line) {}
    explicit ParseError(const std::string& msg) : std::runtime_error(msg), line_(0) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Normalizing a ranking whose total score is zero.
class DegenerateNormalizationError : public std::runtime_error {
public:
    explicit DegenerateNormalizationError(const std::string& msg)
        : std::runtime_error(msg) {}
};

// Rank correlation over fewer than two comparable features.
class UndefinedCorrelationError : public std::domain_error {
public:
    explicit UndefinedCorrelationError(const std::string& msg)
        : std::domain_error(msg) {}
};

}  // namespace linexplain
