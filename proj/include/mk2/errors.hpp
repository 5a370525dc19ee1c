#pragma once

#include <stdexcept>
#include <string>

namespace mk2 {

struct MathError : std::runtime_error {
    explicit MathError(const std::string& w) : std::runtime_error(w) {}
};

/// Argument fails a unit precondition.
struct NotAUnit : MathError {
    explicit NotAUnit(const std::string& w) : MathError(w) {}
};

/// Element lies outside the ring required by the operation.
struct NotInRing : MathError {
    explicit NotInRing(const std::string& w) : MathError(w) {}
};

/// Truncated-series operation would need coefficients beyond the window.
struct PrecisionExhausted : MathError {
    explicit PrecisionExhausted(const std::string& w) : MathError(w) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& w) : std::runtime_error(w) {}
};

}  // namespace mk2
