#pragma once

#include <stdexcept>
#include <string>

namespace grcycle {

// Invalid or inconsistent input data (bad root datum, non-dominant weight
// where dominance is required, malformed file, ...).
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured resource cap was exceeded (Weyl group size, polytope size,
// sequence length, ...).
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// A Hodge-type bound gate failed and no override was requested.
struct BoundViolation : std::runtime_error {
  explicit BoundViolation(const std::string& msg) : std::runtime_error(msg) {}
};

// A predicate over truncated series would have to consume coefficients
// beyond the recorded precision.
struct PrecisionError : std::runtime_error {
  explicit PrecisionError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace grcycle
