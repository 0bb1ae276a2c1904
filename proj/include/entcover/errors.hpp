#pragma once

#include <stdexcept>
#include <string>

namespace entcover {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad input: malformed spec files, precondition failures, mismatched models.
struct validation_error : error {
  using error::error;
};

// A configured cap (ball size, enumeration budget, search radius) was hit.
struct resource_limit_error : error {
  using error::error;
};

// An internal invariant failed; indicates a bug, never silent.
struct invariant_violation : error {
  using error::error;
};

// A certificate or report failed re-verification.
struct verification_error : error {
  using error::error;
};

}  // namespace entcover
