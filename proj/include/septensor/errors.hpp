#pragma once

#include <stdexcept>
#include <string>

namespace septensor {

// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mismatched dimensions or direction counts.
struct shape_error : error {
  using error::error;
};

// Requested rank exceeds what the input can support.
struct invalid_rank_error : error {
  using error::error;
};

// Non-finite entries, asymmetric input where symmetry is required, etc.
struct invalid_input_error : error {
  using error::error;
};

// Bad configuration value (unknown distribution tag, eps out of range, ...).
struct config_error : error {
  using error::error;
};

// An operation would produce the (unrepresentable) zero tensor.
struct zero_tensor_error : error {
  using error::error;
};

// Singular normal equations, degenerate projection, divergence, rank overflow.
struct numerical_error : error {
  using error::error;
};

}  // namespace septensor
