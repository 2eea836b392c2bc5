#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "adelic/curve.hpp"
#include "adelic/linalg.hpp"
#include "adelic/place.hpp"

namespace adelic {

enum class ArchShape { Max, L2 };

/// Measure mass of a discrete place: 1 for places of Q, the extension weight
/// for quadratic places, log(R/|z|) for Nevanlinna interior points.
double place_mass(const Place& w);

// --------------------------------------------------------------------------
// Diagonal pseudo-norm families
// --------------------------------------------------------------------------

/// Log-weight rule of one basis vector.
struct DiagonalWeight {
    // proper curves: log||e_i|| at the listed places, zero elsewhere
    std::vector<std::pair<Place, double>> log_at;
    // Nevanlinna curves: ||e_i||_w = |g|_w at interior places, |g| e^{arch_log}
    // on the boundary
    RationalFunction g = RationalFunction(1);
    double arch_log = 0.0;

    double log_weight_at(const Place& w) const; // proper-curve lookup
};

/// Pseudo-norm family that is diagonal on the standard basis: ultrametric max
/// at non-archimedean places, max- or l2-combination at archimedean ones.
class DiagonalPNF {
public:
    DiagonalPNF(AdelicCurve curve, ArchShape shape, std::vector<DiagonalWeight> weights);

    int rank() const { return static_cast<int>(weights_.size()); }
    const AdelicCurve& curve() const { return curve_; }
    ArchShape shape() const { return shape_; }
    const std::vector<DiagonalWeight>& weights() const { return weights_; }

    /// Arakelov degree of the i-th coordinate line: -integral of the weight.
    double line_degree(int i) const;

private:
    AdelicCurve curve_;
    ArchShape shape_;
    std::vector<DiagonalWeight> weights_;
};

// --------------------------------------------------------------------------
// Lattice-hermitian bundles over Q
// --------------------------------------------------------------------------

/// Hermitian adelic vector bundle over the rational curve: at finite places
/// the lattice norm of the column lattice of M, at the archimedean place the
/// l2 norm of the positive-definite Gram matrix G.
class LatticeHermitianBundle {
public:
    LatticeHermitianBundle(RatMat lattice, RatMat gram);

    int rank() const { return static_cast<int>(lattice_.rows()); }
    const RatMat& lattice() const { return lattice_; }
    const RatMat& gram() const { return gram_; }
    /// Gram matrix of the lattice basis: M^T G M.
    const RatMat& lattice_gram() const { return lattice_gram_; }

private:
    RatMat lattice_;
    RatMat gram_;
    RatMat lattice_gram_;
};

using Bundle = std::variant<DiagonalPNF, LatticeHermitianBundle>;

int bundle_rank(const Bundle& b);

// --------------------------------------------------------------------------
// Subspaces
// --------------------------------------------------------------------------

/// Basis of a rational subspace in lattice coordinates: integral n x k matrix
/// of full column rank.
struct SubspaceBasis {
    RatMat cols;
    bool saturated = false;

    SubspaceBasis() = default;
    explicit SubspaceBasis(RatMat basis);
    int dim() const { return static_cast<int>(cols.cols()); }
    int ambient() const { return static_cast<int>(cols.rows()); }
};

// --------------------------------------------------------------------------
// Algebra of bundles
// --------------------------------------------------------------------------

Bundle dual_bundle(const Bundle& b);
DiagonalPNF dual_bundle(const DiagonalPNF& b);
LatticeHermitianBundle dual_bundle(const LatticeHermitianBundle& b);

/// epsilon-tensor at non-archimedean places, pi/l2 at archimedean ones; both
/// collapse to weight sums on the product basis for diagonal inputs.
DiagonalPNF tensor_bundle(const DiagonalPNF& a, const DiagonalPNF& b);
LatticeHermitianBundle tensor_bundle(const LatticeHermitianBundle& a, const LatticeHermitianBundle& b);
Bundle tensor_bundle(const Bundle& a, const Bundle& b);

Bundle det_bundle(const Bundle& b);

/// Restriction to a subspace. Diagonal bundles restrict along coordinate
/// subspaces only; lattice-hermitian bundles along any basis (auto-saturated,
/// flagged through the optional out-parameter).
LatticeHermitianBundle restrict_bundle(const LatticeHermitianBundle& b, const SubspaceBasis& sub,
                                       bool* auto_saturated = nullptr);
DiagonalPNF restrict_bundle(const DiagonalPNF& b, const std::vector<int>& coords);

struct QuotientResult {
    LatticeHermitianBundle bundle;
    RatMat lift; // n x (n-k): representatives of the quotient basis in the ambient space
};

/// Quotient by the saturation of the subspace; hermitian quotient norm =
/// Schur complement on an adapted unimodular basis.
QuotientResult quotient_bundle(const LatticeHermitianBundle& b, const SubspaceBasis& sub);
DiagonalPNF quotient_bundle(const DiagonalPNF& b, const std::vector<int>& coords_removed);

// --------------------------------------------------------------------------
// Degrees
// --------------------------------------------------------------------------

double degree(const Bundle& b);
double degree(const DiagonalPNF& b);
double degree(const LatticeHermitianBundle& b);

/// Arakelov degree of a nonzero element: -integral of log||s||.
double degree_element(const DiagonalPNF& b, const RatVec& s);
double degree_element(const LatticeHermitianBundle& b, const RatVec& s);
double degree_element(const DiagonalPNF& b, const std::vector<RationalFunction>& s); // Nevanlinna

/// Exact value q with deg(F) = (1/2) log q for a subspace of a
/// lattice-hermitian bundle: q = gcd(minors)^2 / det(B^T (M^T G M) B).
Rational subspace_degree_invariant(const LatticeHermitianBundle& b, const SubspaceBasis& sub);
double subspace_degree(const LatticeHermitianBundle& b, const SubspaceBasis& sub);

// --------------------------------------------------------------------------
// Local distance
// --------------------------------------------------------------------------

double local_distance(const Bundle& b1, const Bundle& b2, const Place& w);
double distance_integral(const Bundle& b1, const Bundle& b2);

} // namespace adelic
