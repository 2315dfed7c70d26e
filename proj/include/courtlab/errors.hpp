#pragma once

#include <stdexcept>
#include <string>

namespace courtlab {

// Unreadable or structurally invalid input data (CLI exit code 1).
struct IngestError : std::runtime_error {
    explicit IngestError(const std::string& what) : std::runtime_error(what) {}
};

// Bad configuration or invocation (CLI exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// An estimator could not produce a result, e.g. "insufficient_scaling_range".
struct EstimationError : std::runtime_error {
    explicit EstimationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace courtlab
