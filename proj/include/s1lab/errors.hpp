#pragma once

#include <stdexcept>

namespace s1lab {

// Input outside an operation's documented domain.
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Work or memory estimate exceeds the library's hard budget.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive quadrature hit its subdivision cap or a flagged singular integrand.
struct quadrature_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Continuous-argument tracking lost the branch: the argument step stayed at or
// above pi/2 even at the minimum step size, which signals a missed zero.
struct tracking_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace s1lab
