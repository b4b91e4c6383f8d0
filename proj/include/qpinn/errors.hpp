#pragma once

#include <stdexcept>
#include <string>

namespace qpinn {

// Error taxonomy shared by every module. All conditions are reported by
// throwing; nothing is reported through return codes or logging side effects.

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid user-facing configuration (bad field value, unknown name, bad range).
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error("configuration error: " + msg) {}
};

// Out-of-range qubit, layer, or output index.
struct IndexError : Error {
    explicit IndexError(const std::string& msg) : Error("index error: " + msg) {}
};

// Mismatched dimensions between coupled objects.
struct ShapeError : Error {
    explicit ShapeError(const std::string& msg) : Error("shape error: " + msg) {}
};

// Non-finite value produced while evaluating a model or loss.
struct NumericError : Error {
    explicit NumericError(const std::string& msg) : Error("numeric error: " + msg) {}
};

}  // namespace qpinn
