#pragma once

#include <stdexcept>
#include <string>

namespace hdecay {

// a*b >= 1: the decay rate is undefined (degenerate regime).
class OutOfRegimeError : public std::domain_error {
public:
    explicit OutOfRegimeError(const std::string& msg) : std::domain_error(msg) {}
};

// Quadrature order below the accuracy policy for the requested coefficient range.
class QuadraturePolicyError : public std::invalid_argument {
public:
    explicit QuadraturePolicyError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Too few usable entries for an estimator.
class InsufficientDataError : public std::runtime_error {
public:
    explicit InsufficientDataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested evaluation point lies outside the validated accuracy envelope.
class AccuracyRangeError : public std::range_error {
public:
    explicit AccuracyRangeError(const std::string& msg) : std::range_error(msg) {}
};

// Input kind cannot support the requested operation (e.g. Fourier side of a
// sampled function, or evaluation beyond a sample grid).
class UnsupportedInputError : public std::runtime_error {
public:
    explicit UnsupportedInputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Series truncation leaves a tail above the documented floor.
class InsufficientTruncationError : public std::runtime_error {
public:
    explicit InsufficientTruncationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hdecay
