#pragma once

#include <stdexcept>
#include <string>

namespace entrap {

/// Malformed input data (telemetry records, model files, traces).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A value violates a documented invariant (geometry, tolerances, configs).
struct ValidationError : std::invalid_argument {
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Degenerate input to a model-fitting routine (too few samples, zero variance).
struct FitError : std::runtime_error {
    explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace entrap
