#pragma once

#include <stdexcept>

namespace spl {

/// Adaptive refinement exhausted its budget before reaching the tolerance.
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A closed form and its quadrature cross-check disagree beyond tolerance.
struct QuadratureMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Extrapolation residual too large to trust the limit estimate.
struct IllConditioned : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operation requires a measure whose support is bounded.
struct UnboundedSupport : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace spl
