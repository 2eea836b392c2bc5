#pragma once

#include <Eigen/Core>
#include <vector>

#include "adelic/rational.hpp"

namespace Eigen {

template <> struct NumTraits<adelic::Rational> : GenericNumTraits<adelic::Rational> {
    typedef adelic::Rational Real;
    typedef adelic::Rational NonInteger;
    typedef adelic::Rational Nested;
    typedef adelic::Rational Literal;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 60,
        MulCost = 60
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};

} // namespace Eigen

namespace adelic {

using RatMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

RatMat rat_identity(int n);
bool is_integral(const RatMat& m);

/// Exact determinant by Gaussian elimination over Q.
Rational exact_det(const RatMat& m);

/// Exact inverse; throws infeasible_error when singular.
RatMat exact_inverse(const RatMat& m);

/// Rank over Q.
int exact_rank(const RatMat& m);

/// Reduced row echelon form over Q (canonical form of the row space).
RatMat rref(const RatMat& m);

/// Exact positive-definiteness test of a symmetric matrix by rational
/// Cholesky-style pivoting (all elimination pivots positive).
bool is_positive_definite(const RatMat& sym);

/// Kronecker product.
RatMat kron(const RatMat& a, const RatMat& b);

/// Schur complement of the leading k x k block: G22 - G21 G11^-1 G12.
RatMat schur_complement(const RatMat& g, int k);

// --------------------------------------------------------------------------
// Integer lattices (matrices of integral Rationals, columns = generators)
// --------------------------------------------------------------------------

struct SmithDecomposition {
    std::vector<Integer> diag;   // nonzero diagonal entries, one per rank
    RatMat left;                 // U in B = U * S * V, unimodular n x n
    RatMat left_inverse;         // U^-1
};

/// Diagonalises an integral matrix by unimodular row/column operations.
SmithDecomposition smith_decompose(const RatMat& b);

/// gcd of all k x k minors of an integral n x k matrix of full column rank k.
Integer minor_gcd(const RatMat& b);

/// Basis of the saturation span_Q(B) intersected with Z^n, full column rank input.
RatMat saturate_columns(const RatMat& b);

/// Whether the integral matrix is a basis of a saturated sublattice
/// (full column rank and gcd of maximal minors 1).
bool is_saturated(const RatMat& b);

/// Completes a saturated n x k basis to a unimodular n x n matrix [B | C];
/// returns the complement columns C.
RatMat unimodular_complement(const RatMat& b);

/// Column Hermite-style canonical basis of the lattice spanned by the columns
/// (unique per lattice; used to deduplicate subspaces and order flags).
RatMat lattice_canonical_basis(const RatMat& b);

/// Basis of the right kernel over Q (empty matrix when injective).
RatMat kernel_basis(const RatMat& m);

/// A maximal independent subset of the columns.
RatMat column_space_basis(const RatMat& m);

/// Saturated basis of F1 + F2 (integral inputs spanning subspaces of Q^n).
RatMat subspace_sum(const RatMat& b1, const RatMat& b2);

/// Saturated basis of F1 intersect F2; zero-column matrix when trivial.
RatMat subspace_intersection(const RatMat& b1, const RatMat& b2);

/// Clears denominators column-by-column and divides out content.
RatMat primitive_integral_columns(const RatMat& m);

} // namespace adelic
