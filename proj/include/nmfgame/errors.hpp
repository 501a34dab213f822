#pragma once

#include <stdexcept>
#include <string>

namespace nmfgame {

// Dimension mismatch between operands.
struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& msg) : std::runtime_error("shape: " + msg) {}
};

// Invalid argument value (bad range, unknown name, zero dimension).
struct ArgumentError : std::runtime_error {
    explicit ArgumentError(const std::string& msg) : std::runtime_error("argument: " + msg) {}
};

// Iterative solver blew past the divergence guard.
struct DivergedError : std::runtime_error {
    explicit DivergedError(const std::string& msg) : std::runtime_error("diverged: " + msg) {}
};

// Normal equations not positive definite.
struct SingularSystemError : std::runtime_error {
    explicit SingularSystemError(const std::string& msg)
        : std::runtime_error("singular-system: " + msg) {}
};

// Degenerate input to an eigen routine (zero-variance parent, too few rows).
struct DegenerateError : std::runtime_error {
    explicit DegenerateError(const std::string& msg)
        : std::runtime_error("degenerate: " + msg) {}
};

}  // namespace nmfgame
