#pragma once

#include <stdexcept>
#include <string>

namespace adelic {

// Invalid mathematical input: zero polynomial, non-prime modulus, rank-0 slope, ...
class argument_error : public std::invalid_argument {
public:
    explicit argument_error(const std::string& what) : std::invalid_argument(what) {}
};

// A floating-point safeguard tripped: root/pole within clearance of a
// quadrature circle, root polish residual above tolerance, ...
class numerical_guard_error : public std::runtime_error {
public:
    explicit numerical_guard_error(const std::string& what) : std::runtime_error(what) {}
};

// Structurally infeasible input: non-positive-definite Gram, singular lattice basis.
class infeasible_error : public std::runtime_error {
public:
    explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

// Valid per the underlying theory but outside what this implementation covers.
class unsupported_error : public std::runtime_error {
public:
    explicit unsupported_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace adelic
