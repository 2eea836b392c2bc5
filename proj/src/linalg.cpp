#include "adelic/linalg.hpp"

#include "adelic/errors.hpp"

namespace adelic {

RatMat rat_identity(int n) {
    RatMat m = RatMat::Constant(n, n, Rational(0));
    for (int i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
}

bool is_integral(const RatMat& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_integer()) return false;
    return true;
}

Rational exact_det(const RatMat& m) {
    if (m.rows() != m.cols()) throw argument_error("exact_det: square matrix required");
    RatMat a = m;
    int n = static_cast<int>(a.rows());
    Rational det(1);
    for (int k = 0; k < n; ++k) {
        int pivot = -1;
        for (int i = k; i < n; ++i)
            if (!a(i, k).is_zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0) return Rational(0);
        if (pivot != k) {
            a.row(pivot).swap(a.row(k));
            det = -det;
        }
        det *= a(k, k);
        Rational inv = Rational(1) / a(k, k);
        for (int i = k + 1; i < n; ++i) {
            if (a(i, k).is_zero()) continue;
            Rational factor = a(i, k) * inv;
            for (int j = k; j < n; ++j) a(i, j) -= factor * a(k, j);
        }
    }
    return det;
}

RatMat exact_inverse(const RatMat& m) {
    if (m.rows() != m.cols()) throw argument_error("exact_inverse: square matrix required");
    int n = static_cast<int>(m.rows());
    RatMat a = m;
    RatMat inv = rat_identity(n);
    for (int k = 0; k < n; ++k) {
        int pivot = -1;
        for (int i = k; i < n; ++i)
            if (!a(i, k).is_zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0) throw infeasible_error("exact_inverse: singular matrix");
        if (pivot != k) {
            a.row(pivot).swap(a.row(k));
            inv.row(pivot).swap(inv.row(k));
        }
        Rational pinv = Rational(1) / a(k, k);
        for (int j = 0; j < n; ++j) {
            a(k, j) *= pinv;
            inv(k, j) *= pinv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || a(i, k).is_zero()) continue;
            Rational factor = a(i, k);
            for (int j = 0; j < n; ++j) {
                a(i, j) -= factor * a(k, j);
                inv(i, j) -= factor * inv(k, j);
            }
        }
    }
    return inv;
}

RatMat rref(const RatMat& m) {
    RatMat a = m;
    int rows = static_cast<int>(a.rows()), cols = static_cast<int>(a.cols());
    int lead = 0;
    for (int r = 0; r < rows && lead < cols; ++r) {
        int pivot = -1;
        while (lead < cols) {
            for (int i = r; i < rows; ++i)
                if (!a(i, lead).is_zero()) {
                    pivot = i;
                    break;
                }
            if (pivot >= 0) break;
            ++lead;
        }
        if (lead >= cols) break;
        if (pivot != r) a.row(pivot).swap(a.row(r));
        Rational pinv = Rational(1) / a(r, lead);
        for (int j = 0; j < cols; ++j) a(r, j) *= pinv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a(i, lead).is_zero()) continue;
            Rational factor = a(i, lead);
            for (int j = 0; j < cols; ++j) a(i, j) -= factor * a(r, j);
        }
        ++lead;
    }
    return a;
}

int exact_rank(const RatMat& m) {
    RatMat r = rref(m);
    int rank = 0;
    for (int i = 0; i < r.rows(); ++i) {
        bool nonzero = false;
        for (int j = 0; j < r.cols(); ++j)
            if (!r(i, j).is_zero()) {
                nonzero = true;
                break;
            }
        if (nonzero) ++rank;
    }
    return rank;
}

bool is_positive_definite(const RatMat& sym) {
    if (sym.rows() != sym.cols()) throw argument_error("is_positive_definite: square matrix required");
    int n = static_cast<int>(sym.rows());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (sym(i, j) != sym(j, i)) throw argument_error("is_positive_definite: matrix not symmetric");
    RatMat a = sym;
    for (int k = 0; k < n; ++k) {
        if (!(a(k, k) > Rational(0))) return false;
        Rational pinv = Rational(1) / a(k, k);
        for (int i = k + 1; i < n; ++i) {
            Rational factor = a(i, k) * pinv;
            for (int j = k; j < n; ++j) a(i, j) -= factor * a(k, j);
        }
    }
    return true;
}

RatMat kron(const RatMat& a, const RatMat& b) {
    RatMat out = RatMat::Constant(a.rows() * b.rows(), a.cols() * b.cols(), Rational(0));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            for (int p = 0; p < b.rows(); ++p)
                for (int q = 0; q < b.cols(); ++q) out(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    return out;
}

RatMat schur_complement(const RatMat& g, int k) {
    int n = static_cast<int>(g.rows());
    if (k <= 0 || k >= n) throw argument_error("schur_complement: block size out of range");
    RatMat g11 = g.topLeftCorner(k, k);
    RatMat g12 = g.topRightCorner(k, n - k);
    RatMat g21 = g.bottomLeftCorner(n - k, k);
    RatMat g22 = g.bottomRightCorner(n - k, n - k);
    return g22 - g21 * exact_inverse(g11) * g12;
}

// ---------------------------------------------------------------------------
// Integer lattice algorithms
// ---------------------------------------------------------------------------

namespace {

Integer to_int(const Rational& q) {
    if (!q.is_integer()) throw argument_error("lattice operation requires an integral matrix");
    return q.num();
}

struct IntWork {
    std::vector<std::vector<Integer>> s; // n x k working copy
    // row operations mirrored on U and U^-1 so that B = U * S * V throughout
    std::vector<std::vector<Integer>> u, uinv;
    int n, k;

    explicit IntWork(const RatMat& b) : n(static_cast<int>(b.rows())), k(static_cast<int>(b.cols())) {
        s.assign(n, std::vector<Integer>(k));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < k; ++j) s[i][j] = to_int(b(i, j));
        u.assign(n, std::vector<Integer>(n, Integer(0)));
        uinv = u;
        for (int i = 0; i < n; ++i) u[i][i] = uinv[i][i] = 1;
    }

    // S <- E S with E = (row i -= q * row j); U <- U E^-1 adds q * col i to col j of U
    void row_axpy(int i, int j, const Integer& q) {
        for (int c = 0; c < k; ++c) s[i][c] -= q * s[j][c];
        for (int r = 0; r < n; ++r) u[r][j] += q * u[r][i];
        for (int c = 0; c < n; ++c) uinv[i][c] -= q * uinv[j][c];
    }

    void row_swap(int i, int j) {
        std::swap(s[i], s[j]);
        for (int r = 0; r < n; ++r) std::swap(u[r][i], u[r][j]);
        std::swap(uinv[i], uinv[j]);
    }

    void row_negate(int i) {
        for (int c = 0; c < k; ++c) s[i][c] = -s[i][c];
        for (int r = 0; r < n; ++r) u[r][i] = -u[r][i];
        for (int c = 0; c < n; ++c) uinv[i][c] = -uinv[i][c];
    }

    void col_axpy(int i, int j, const Integer& q) { // col i -= q * col j, V implicit
        for (int r = 0; r < n; ++r) s[r][i] -= q * s[r][j];
    }

    void col_swap(int i, int j) {
        for (int r = 0; r < n; ++r) std::swap(s[r][i], s[r][j]);
    }
};

} // namespace

SmithDecomposition smith_decompose(const RatMat& b) {
    IntWork w(b);
    int t = 0;
    std::vector<Integer> diag;
    while (t < w.n && t < w.k) {
        // locate a nonzero entry of minimal magnitude in the trailing block
        int pi = -1, pj = -1;
        Integer best(0);
        for (int i = t; i < w.n; ++i)
            for (int j = t; j < w.k; ++j) {
                if (sgn(w.s[i][j]) == 0) continue;
                Integer a = ::abs(w.s[i][j]);
                if (pi < 0 || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        if (pi != t) w.row_swap(pi, t);
        if (pj != t) w.col_swap(pj, t);
        bool dirty = false;
        for (int i = t + 1; i < w.n; ++i) {
            if (sgn(w.s[i][t]) == 0) continue;
            Integer q = w.s[i][t] / w.s[t][t]; // truncated division keeps remainders small
            if (sgn(q) != 0) w.row_axpy(i, t, q);
            if (sgn(w.s[i][t]) != 0) dirty = true;
        }
        for (int j = t + 1; j < w.k; ++j) {
            if (sgn(w.s[t][j]) == 0) continue;
            Integer q = w.s[t][j] / w.s[t][t];
            if (sgn(q) != 0) w.col_axpy(j, t, q);
            if (sgn(w.s[t][j]) != 0) dirty = true;
        }
        if (dirty) continue; // pivot shrank; repeat the round
        if (sgn(w.s[t][t]) < 0) w.row_negate(t);
        diag.push_back(w.s[t][t]);
        ++t;
    }

    SmithDecomposition out;
    out.diag = std::move(diag);
    out.left = RatMat::Constant(w.n, w.n, Rational(0));
    out.left_inverse = RatMat::Constant(w.n, w.n, Rational(0));
    for (int i = 0; i < w.n; ++i)
        for (int j = 0; j < w.n; ++j) {
            out.left(i, j) = Rational(w.u[i][j]);
            out.left_inverse(i, j) = Rational(w.uinv[i][j]);
        }
    return out;
}

Integer minor_gcd(const RatMat& b) {
    SmithDecomposition s = smith_decompose(b);
    if (static_cast<int>(s.diag.size()) != b.cols())
        throw argument_error("minor_gcd: matrix does not have full column rank");
    Integer g(1);
    for (const Integer& d : s.diag) g *= d;
    return ::abs(g);
}

RatMat saturate_columns(const RatMat& b) {
    SmithDecomposition s = smith_decompose(b);
    int k = static_cast<int>(s.diag.size());
    if (k != b.cols()) throw argument_error("saturate_columns: matrix does not have full column rank");
    // B = U S V: the saturation is spanned by the first k columns of U
    return s.left.leftCols(k);
}

bool is_saturated(const RatMat& b) {
    SmithDecomposition s = smith_decompose(b);
    if (static_cast<int>(s.diag.size()) != b.cols()) return false;
    for (const Integer& d : s.diag)
        if (d != 1) return false;
    return true;
}

RatMat unimodular_complement(const RatMat& b) {
    if (!is_saturated(b)) throw argument_error("unimodular_complement: basis must be saturated");
    SmithDecomposition s = smith_decompose(b);
    int k = static_cast<int>(b.cols());
    // [B | U_rest] is unimodular when all elementary divisors are 1
    return s.left.rightCols(s.left.cols() - k);
}

RatMat lattice_canonical_basis(const RatMat& b) {
    // column-style Hermite form via Smith data would lose the lattice; do a
    // direct integer column reduction to a unique echelon basis instead
    int n = static_cast<int>(b.rows()), k = static_cast<int>(b.cols());
    std::vector<std::vector<Integer>> cols(k, std::vector<Integer>(n));
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i) cols[j][i] = [&] {
            const Rational& q = b(i, j);
            if (!q.is_integer()) throw argument_error("lattice_canonical_basis: integral matrix required");
            return q.num();
        }();

    int col = 0;
    for (int row = 0; row < n && col < k; ++row) {
        // gcd-reduce entries of this row across columns col..k-1
        while (true) {
            int nz = -1;
            for (int j = col; j < k; ++j)
                if (sgn(cols[j][row]) != 0) {
                    if (nz < 0 || ::abs(cols[j][row]) < ::abs(cols[nz][row])) nz = j;
                }
            if (nz < 0) break;
            std::swap(cols[col], cols[nz]);
            bool cleared = true;
            for (int j = col + 1; j < k; ++j) {
                if (sgn(cols[j][row]) == 0) continue;
                Integer q = cols[j][row] / cols[col][row];
                for (int i = 0; i < n; ++i) cols[j][i] -= q * cols[col][i];
                if (sgn(cols[j][row]) != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (sgn(cols[col][row]) == 0) continue;
        if (sgn(cols[col][row]) < 0)
            for (int i = 0; i < n; ++i) cols[col][i] = -cols[col][i];
        // reduce earlier columns against the new pivot for uniqueness
        for (int j = 0; j < col; ++j) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), cols[j][row].get_mpz_t(), cols[col][row].get_mpz_t());
            if (sgn(q) != 0)
                for (int i = 0; i < n; ++i) cols[j][i] -= q * cols[col][i];
        }
        ++col;
    }

    RatMat out = RatMat::Constant(n, col, Rational(0));
    for (int j = 0; j < col; ++j)
        for (int i = 0; i < n; ++i) out(i, j) = Rational(cols[j][i]);
    return out;
}

RatMat kernel_basis(const RatMat& m) {
    RatMat r = rref(m);
    int rows = static_cast<int>(r.rows()), cols = static_cast<int>(r.cols());
    std::vector<int> pivot_col;
    std::vector<bool> is_pivot(cols, false);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (!r(i, j).is_zero()) {
                pivot_col.push_back(j);
                is_pivot[j] = true;
                break;
            }
    std::vector<int> free_cols;
    for (int j = 0; j < cols; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    RatMat out = RatMat::Constant(cols, static_cast<int>(free_cols.size()), Rational(0));
    for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
        int f = free_cols[fi];
        out(f, static_cast<int>(fi)) = Rational(1);
        for (std::size_t pi = 0; pi < pivot_col.size(); ++pi)
            out(pivot_col[pi], static_cast<int>(fi)) = -r(static_cast<int>(pi), f);
    }
    return out;
}

RatMat column_space_basis(const RatMat& m) {
    std::vector<int> keep;
    RatMat acc(m.rows(), 0);
    for (int j = 0; j < m.cols(); ++j) {
        RatMat trial(m.rows(), acc.cols() + 1);
        trial.leftCols(acc.cols()) = acc;
        trial.col(acc.cols()) = m.col(j);
        if (exact_rank(trial) == trial.cols()) {
            acc = trial;
            keep.push_back(j);
        }
    }
    return acc;
}

RatMat primitive_integral_columns(const RatMat& m) {
    RatMat out = m;
    for (int j = 0; j < out.cols(); ++j) {
        Integer denlcm(1);
        for (int i = 0; i < out.rows(); ++i)
            mpz_lcm(denlcm.get_mpz_t(), denlcm.get_mpz_t(), out(i, j).den().get_mpz_t());
        Integer content(0);
        for (int i = 0; i < out.rows(); ++i) {
            out(i, j) *= Rational(denlcm);
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out(i, j).num().get_mpz_t());
        }
        if (content > 1)
            for (int i = 0; i < out.rows(); ++i) out(i, j) /= Rational(content);
    }
    return out;
}

RatMat subspace_sum(const RatMat& b1, const RatMat& b2) {
    RatMat combined(b1.rows(), b1.cols() + b2.cols());
    combined.leftCols(b1.cols()) = b1;
    combined.rightCols(b2.cols()) = b2;
    return saturate_columns(primitive_integral_columns(column_space_basis(combined)));
}

RatMat subspace_intersection(const RatMat& b1, const RatMat& b2) {
    RatMat stacked(b1.rows(), b1.cols() + b2.cols());
    stacked.leftCols(b1.cols()) = b1;
    stacked.rightCols(b2.cols()) = -b2;
    RatMat ker = kernel_basis(stacked);
    if (ker.cols() == 0) return RatMat(b1.rows(), 0);
    RatMat inter = b1 * ker.topRows(b1.cols());
    return saturate_columns(primitive_integral_columns(column_space_basis(inter)));
}

} // namespace adelic
