#pragma once

#include <stdexcept>

namespace apsum {

// Base class for every error thrown by the library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A spectrum violates the declared exponent gap, or an interval that must
// contain at most one exponent contains two.
struct gap_violation : error {
  using error::error;
};

// A matrix row does not sum to one within tolerance.
struct row_sum_violation : error {
  using error::error;
};

// Parameter outside its admissible range (p <= 1, q <= 0, c <= 1, ...).
struct invalid_parameter : error {
  using error::error;
};

// Adaptive quadrature exhausted its subdivision budget.
struct tolerance_not_met : error {
  using error::error;
};

// An iteration exceeded its budget without converging.
struct no_convergence : error {
  using error::error;
};

// Input violates a stated precondition of the operation.
struct precondition_violation : error {
  using error::error;
};

// A verification case fails the hypothesis of the statement under test.
struct hypothesis_violation : error {
  using error::error;
};

// Malformed fixture, matrix or config file.
struct schema_error : error {
  using error::error;
};

// Filesystem failure.
struct io_error : error {
  using error::error;
};

}  // namespace apsum
