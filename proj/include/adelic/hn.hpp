#pragma once

#include <utility>
#include <vector>

#include "adelic/bundle.hpp"

namespace adelic {

struct EnumConfig {
    int bound = 3;                   // sup-norm cap on candidate generating vectors
    int max_dim = 6;                 // ambient rank cap for enumeration
    std::size_t budget = 5000000;    // cap on candidate subspace extensions

    void validate() const;
};

enum class CertKind { ExactSplit, Enumerated };

struct Certification {
    CertKind kind = CertKind::ExactSplit;
    int bound = 0; // enumeration bound when kind == Enumerated
};

/// Harder-Narasimhan flag: strictly nested steps ending at the full space,
/// subquotient slopes strictly decreasing. Enumerated certificates are
/// relative to the bound: mu_max values are verified lower bounds.
struct Flag {
    std::vector<SubspaceBasis> steps;
    std::vector<double> slopes;
    Certification certification;
};

/// Exact slope of a subspace of a lattice-hermitian bundle:
/// mu = log(q) / (2 dim) with q the subspace degree invariant.
struct ExactSlope {
    Rational q;
    int dim = 1;
    double value() const;
};

/// Three-way comparison of exact slopes (-1, 0, +1), no floating point.
int compare_slopes(const ExactSlope& a, const ExactSlope& b);

double slope(const Bundle& b);

/// Maximal slope with a witnessing subspace. Diagonal bundles use the exact
/// coordinate path; lattice-hermitian bundles enumerate saturations of spans
/// of bounded integer vectors.
std::pair<double, SubspaceBasis> mu_max_enum(const Bundle& b, const EnumConfig& cfg);

/// The greatest slope-maximizing subspace (sum closure of all maximizers).
SubspaceBasis destabilizer(const Bundle& b, const EnumConfig& cfg);

Flag hn_flag(const Bundle& b, const EnumConfig& cfg);

/// sup over subspaces (including zero) of the Arakelov degree.
double positive_degree(const Bundle& b, const EnumConfig& cfg);

/// Minimal slope through the hermitian dual: mu_min(E) = -mu_max(dual E).
double mu_min_enum(const LatticeHermitianBundle& b, const EnumConfig& cfg);

/// Semistability against every enumerated subspace.
bool is_semistable_enum(const LatticeHermitianBundle& b, const EnumConfig& cfg);

} // namespace adelic
