#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "adelic/polynomial.hpp"

namespace adelic {

struct ComplexRoot {
    std::complex<double> location;
    int multiplicity = 1;
    std::optional<GaussianRational> exact; // set when the root is an exact Gaussian rational
};

/// All complex roots with exact multiplicities. Multiplicities come from the
/// exact squarefree decomposition; locations from Aberth-Ehrlich iteration on
/// each squarefree factor followed by a Newton polish. Gaussian-rational
/// roots are recognised by exact division. Throws argument_error on the zero
/// polynomial, numerical_guard_error if a polished root fails the residual check.
std::vector<ComplexRoot> roots(const Polynomial& poly);

/// Roots of a squarefree complex polynomial (ascending coefficients),
/// Aberth-Ehrlich with Newton polish. Exposed for reuse by test oracles.
std::vector<std::complex<double>> aberth_roots(const std::vector<std::complex<double>>& coeffs);

} // namespace adelic
