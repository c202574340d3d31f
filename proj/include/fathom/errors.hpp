#pragma once

#include <stdexcept>
#include <string>

namespace fathom {

/// Mismatched matrix or vector sizes.
struct dimension_mismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A candidate basis fails bracket closure.
struct not_a_subalgebra : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Linearly dependent input where independence is required.
struct degenerate_basis : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Unknown catalog name.
struct catalog_miss : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A metric operator that is not symmetric positive-definite.
struct invalid_metric : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An ODE trajectory left its declared subspace.
struct integration_diverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fathom
