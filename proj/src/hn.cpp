#include "adelic/hn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "adelic/errors.hpp"

namespace adelic {

void EnumConfig::validate() const {
    if (bound < 1) throw argument_error("EnumConfig: bound must be at least 1");
    if (max_dim < 1 || max_dim > 6) throw argument_error("EnumConfig: max_dim must lie in [1, 6]");
}

double ExactSlope::value() const { return log_rational(q) / (2.0 * dim); }

int compare_slopes(const ExactSlope& a, const ExactSlope& b) {
    // log(q1)/(2 k1) vs log(q2)/(2 k2)  <=>  q1^k2 vs q2^k1 (all q positive)
    Rational lhs = pow(a.q, b.dim);
    Rational rhs = pow(b.q, a.dim);
    if (lhs < rhs) return -1;
    if (rhs < lhs) return 1;
    return 0;
}

double slope(const Bundle& b) {
    int r = bundle_rank(b);
    if (r < 1) throw argument_error("slope: rank must be positive");
    return degree(b) / static_cast<double>(r);
}

// ---------------------------------------------------------------------------
// Diagonal path: exact, by coordinate grouping
// ---------------------------------------------------------------------------

namespace {

struct DiagonalGroups {
    // coordinate indices grouped by line degree, groups sorted descending
    std::vector<std::vector<int>> groups;
    std::vector<double> degrees; // one per group
};

DiagonalGroups diagonal_groups(const DiagonalPNF& b) {
    std::vector<int> idx(static_cast<std::size_t>(b.rank()));
    std::vector<double> deg(idx.size());
    for (int i = 0; i < b.rank(); ++i) {
        idx[static_cast<std::size_t>(i)] = i;
        deg[static_cast<std::size_t>(i)] = b.line_degree(i);
    }
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int c) {
        return deg[static_cast<std::size_t>(a)] > deg[static_cast<std::size_t>(c)];
    });
    DiagonalGroups out;
    for (int i : idx) {
        double d = deg[static_cast<std::size_t>(i)];
        double scale = std::max({1.0, std::fabs(d), out.degrees.empty() ? 0.0 : std::fabs(out.degrees.back())});
        if (!out.degrees.empty() && std::fabs(out.degrees.back() - d) <= 1e-9 * scale) {
            out.groups.back().push_back(i);
        } else {
            out.groups.push_back({i});
            out.degrees.push_back(d);
        }
    }
    for (auto& g : out.groups) std::sort(g.begin(), g.end());
    return out;
}

SubspaceBasis coordinate_subspace(int n, const std::vector<int>& coords) {
    RatMat m = RatMat::Constant(n, static_cast<int>(coords.size()), Rational(0));
    for (std::size_t j = 0; j < coords.size(); ++j) m(coords[j], static_cast<int>(j)) = Rational(1);
    return SubspaceBasis(std::move(m));
}

} // namespace

// ---------------------------------------------------------------------------
// Enumeration path
// ---------------------------------------------------------------------------

namespace {

struct EnumSubspace {
    std::vector<std::vector<long>> gens; // unsaturated generator columns
    ExactSlope mu;
    Rational degree_q; // deg = (1/2) log(degree_q)

    RatMat generator_matrix(int n) const {
        RatMat m = RatMat::Constant(n, static_cast<int>(gens.size()), Rational(0));
        for (std::size_t j = 0; j < gens.size(); ++j)
            for (int i = 0; i < n; ++i) m(i, static_cast<int>(j)) = Rational(gens[j][static_cast<std::size_t>(i)]);
        return m;
    }

    SubspaceBasis saturated_basis(int n) const {
        return SubspaceBasis(lattice_canonical_basis(saturate_columns(generator_matrix(n))));
    }
};

// primitive candidate generators, sup-norm <= bound, up to sign
std::vector<std::vector<long>> candidate_vectors_raw(int n, int bound) {
    std::vector<std::vector<long>> out;
    std::vector<long> v(static_cast<std::size_t>(n), -bound);
    while (true) {
        long first = 0, content = 0;
        for (long x : v) {
            if (first == 0 && x != 0) first = x;
            content = std::gcd(content, std::labs(x));
        }
        if (first > 0 && content == 1) out.push_back(v);
        int k = 0;
        while (k < n && v[static_cast<std::size_t>(k)] == bound) v[static_cast<std::size_t>(k++)] = -bound;
        if (k == n) break;
        ++v[static_cast<std::size_t>(k)];
    }
    return out;
}

// integer workhorse for the enumeration: Gram of the lattice basis cleared to
// integers, maximal minors as Plucker keys, quadratic forms in mpz
struct EnumEngine {
    int n;
    Integer denom;                           // lattice Gram = gram_int / denom
    std::vector<std::vector<Integer>> gram_int;

    explicit EnumEngine(const LatticeHermitianBundle& b) : n(b.rank()) {
        const RatMat& g = b.lattice_gram();
        denom = 1;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), g(i, j).den().get_mpz_t());
        gram_int.assign(static_cast<std::size_t>(n), std::vector<Integer>(static_cast<std::size_t>(n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Rational scaled = g(i, j) * Rational(denom);
                gram_int[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = scaled.num();
            }
    }

    Integer quad_form(const std::vector<long>& a, const std::vector<long>& b) const {
        Integer acc(0);
        for (int i = 0; i < n; ++i) {
            if (a[static_cast<std::size_t>(i)] == 0) continue;
            Integer row(0);
            for (int j = 0; j < n; ++j)
                if (b[static_cast<std::size_t>(j)] != 0)
                    row += gram_int[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                           b[static_cast<std::size_t>(j)];
            acc += row * a[static_cast<std::size_t>(i)];
        }
        return acc;
    }

    // determinant of an integer matrix held as rows, plain expansion for k <= 2
    // and Bareiss elimination beyond
    static Integer int_det(std::vector<std::vector<Integer>> m) {
        int k = static_cast<int>(m.size());
        if (k == 1) return m[0][0];
        if (k == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
        Integer prev(1);
        int sign = 1;
        for (int t = 0; t < k - 1; ++t) {
            if (sgn(m[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)]) == 0) {
                int piv = -1;
                for (int i = t + 1; i < k; ++i)
                    if (sgn(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)]) != 0) {
                        piv = i;
                        break;
                    }
                if (piv < 0) return Integer(0);
                std::swap(m[static_cast<std::size_t>(t)], m[static_cast<std::size_t>(piv)]);
                sign = -sign;
            }
            for (int i = t + 1; i < k; ++i) {
                for (int j = t + 1; j < k; ++j) {
                    Integer num = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                                      m[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)] -
                                  m[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] *
                                      m[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];
                    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = num / prev;
                }
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] = 0;
            }
            prev = m[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)];
        }
        Integer d = m[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(k - 1)];
        return sign < 0 ? Integer(-d) : d;
    }

    // maximal minors (Plucker coordinates) of the n x k generator matrix;
    // empty when rank-deficient
    std::vector<Integer> plucker(const std::vector<std::vector<long>>& cols) const {
        int k = static_cast<int>(cols.size());
        std::vector<int> rows(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) rows[static_cast<std::size_t>(i)] = i;
        std::vector<Integer> out;
        bool nonzero = false;
        while (true) {
            std::vector<std::vector<Integer>> sub(static_cast<std::size_t>(k),
                                                  std::vector<Integer>(static_cast<std::size_t>(k)));
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    sub[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                        Integer(cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(rows[static_cast<std::size_t>(i)])]);
            out.push_back(int_det(std::move(sub)));
            if (sgn(out.back()) != 0) nonzero = true;
            int i = k - 1;
            while (i >= 0 && rows[static_cast<std::size_t>(i)] == n - k + i) --i;
            if (i < 0) break;
            ++rows[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                rows[static_cast<std::size_t>(j)] = rows[static_cast<std::size_t>(j - 1)] + 1;
        }
        if (!nonzero) return {};
        return out;
    }

    // dedup key: Plucker vector divided by +-content
    static std::vector<Integer> normalize_key(std::vector<Integer> plk, Integer* content_out) {
        Integer content(0);
        int first_sign = 0;
        for (const Integer& x : plk) {
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
            if (first_sign == 0 && sgn(x) != 0) first_sign = sgn(x);
        }
        if (content_out) *content_out = content;
        for (Integer& x : plk) {
            x /= content;
            if (first_sign < 0) x = -x;
        }
        return plk;
    }

    // exact slope invariant of the span of cols: q = g^2 denom^k / det(B^T Gz B)
    Rational invariant(const std::vector<std::vector<long>>& cols, const Integer& minor_g) const {
        int k = static_cast<int>(cols.size());
        std::vector<std::vector<Integer>> s(static_cast<std::size_t>(k), std::vector<Integer>(static_cast<std::size_t>(k)));
        for (int a = 0; a < k; ++a)
            for (int b = a; b < k; ++b) {
                s[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                    quad_form(cols[static_cast<std::size_t>(a)], cols[static_cast<std::size_t>(b)]);
                s[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] =
                    s[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            }
        Integer det = int_det(std::move(s));
        Integer num = minor_g * minor_g;
        Integer dk(1);
        for (int t = 0; t < k; ++t) dk *= denom;
        return Rational(num * dk, det);
    }
};

/// All saturations of subspaces spanned by candidate vectors, grown one
/// generator at a time and deduplicated by primitive Plucker coordinates.
std::vector<EnumSubspace> enumerate_subspaces(const LatticeHermitianBundle& b, const EnumConfig& cfg) {
    cfg.validate();
    int n = b.rank();
    if (n > cfg.max_dim)
        throw unsupported_error("enumeration: rank exceeds max_dim = " + std::to_string(cfg.max_dim));
    std::vector<std::vector<long>> cands = candidate_vectors_raw(n, cfg.bound);
    EnumEngine engine(b);

    auto make_entry = [&](std::vector<std::vector<long>> gens, const Integer& minor_g) {
        EnumSubspace e;
        e.degree_q = engine.invariant(gens, minor_g);
        e.mu = ExactSlope{e.degree_q, static_cast<int>(gens.size())};
        e.gens = std::move(gens);
        return e;
    };

    std::vector<EnumSubspace> all;
    std::size_t work = 0;

    // dimension 1 layer: primitive candidates are pairwise distinct lines
    std::vector<std::size_t> layer; // indices into all
    for (const auto& v : cands) {
        all.push_back(make_entry({v}, Integer(1)));
        layer.push_back(all.size() - 1);
    }

    for (int dim = 2; dim < n; ++dim) {
        std::set<std::vector<Integer>> seen;
        std::vector<std::size_t> next;
        for (std::size_t base_idx : layer) {
            for (const auto& v : cands) {
                if (++work > cfg.budget)
                    throw unsupported_error("enumeration: candidate budget exceeded; lower the bound or rank");
                std::vector<std::vector<long>> trial = all[base_idx].gens;
                trial.push_back(v);
                std::vector<Integer> plk = engine.plucker(trial);
                if (plk.empty()) continue; // rank-deficient
                Integer content;
                std::vector<Integer> key = EnumEngine::normalize_key(std::move(plk), &content);
                if (!seen.insert(std::move(key)).second) continue;
                all.push_back(make_entry(std::move(trial), content));
                next.push_back(all.size() - 1);
            }
        }
        layer = std::move(next);
    }

    // the full space
    {
        std::vector<std::vector<long>> full;
        for (int j = 0; j < n; ++j) {
            std::vector<long> e(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(j)] = 1;
            full.push_back(std::move(e));
        }
        all.push_back(make_entry(std::move(full), Integer(1)));
    }
    return all;
}

std::pair<ExactSlope, std::vector<const EnumSubspace*>> exact_maximizers(const std::vector<EnumSubspace>& all) {
    const EnumSubspace* best = &all.front();
    for (const EnumSubspace& e : all)
        if (compare_slopes(e.mu, best->mu) > 0) best = &e;
    std::vector<const EnumSubspace*> maxima;
    for (const EnumSubspace& e : all)
        if (compare_slopes(e.mu, best->mu) == 0) maxima.push_back(&e);
    return {best->mu, std::move(maxima)};
}

SubspaceBasis sum_closure(const LatticeHermitianBundle& b, const std::vector<const EnumSubspace*>& maxima,
                          const ExactSlope& mu) {
    RatMat acc = maxima.front()->saturated_basis(b.rank()).cols;
    for (std::size_t i = 1; i < maxima.size(); ++i)
        acc = subspace_sum(acc, maxima[i]->saturated_basis(b.rank()).cols);
    SubspaceBasis out(lattice_canonical_basis(acc));
    // submodularity makes the sum of maximizers a maximizer in the hermitian case
    ExactSlope mu_sum{subspace_degree_invariant(b, out), out.dim()};
    if (compare_slopes(mu_sum, mu) != 0)
        throw infeasible_error("destabilizer: sum of maximizers is not a maximizer");
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

std::pair<double, SubspaceBasis> mu_max_enum(const Bundle& b, const EnumConfig& cfg) {
    if (const auto* d = std::get_if<DiagonalPNF>(&b)) {
        DiagonalGroups g = diagonal_groups(*d);
        return {g.degrees.front(), coordinate_subspace(d->rank(), g.groups.front())};
    }
    const auto& lh = std::get<LatticeHermitianBundle>(b);
    auto all = enumerate_subspaces(lh, cfg);
    auto [mu, maxima] = exact_maximizers(all);
    return {mu.value(), sum_closure(lh, maxima, mu)};
}

SubspaceBasis destabilizer(const Bundle& b, const EnumConfig& cfg) {
    if (const auto* d = std::get_if<DiagonalPNF>(&b)) {
        DiagonalGroups g = diagonal_groups(*d);
        return coordinate_subspace(d->rank(), g.groups.front());
    }
    const auto& lh = std::get<LatticeHermitianBundle>(b);
    auto all = enumerate_subspaces(lh, cfg);
    auto [mu, maxima] = exact_maximizers(all);
    return sum_closure(lh, maxima, mu);
}

Flag hn_flag(const Bundle& b, const EnumConfig& cfg) {
    cfg.validate();
    Flag flag;
    if (const auto* d = std::get_if<DiagonalPNF>(&b)) {
        flag.certification = {CertKind::ExactSplit, 0};
        DiagonalGroups g = diagonal_groups(*d);
        std::vector<int> acc;
        for (std::size_t gi = 0; gi < g.groups.size(); ++gi) {
            acc.insert(acc.end(), g.groups[gi].begin(), g.groups[gi].end());
            std::vector<int> sorted = acc;
            std::sort(sorted.begin(), sorted.end());
            flag.steps.push_back(coordinate_subspace(d->rank(), sorted));
            flag.slopes.push_back(g.degrees[gi]);
        }
        return flag;
    }

    const auto& lh = std::get<LatticeHermitianBundle>(b);
    flag.certification = {CertKind::Enumerated, cfg.bound};

    LatticeHermitianBundle current = lh;
    RatMat lift = rat_identity(lh.rank()); // quotient coordinates -> ambient
    RatMat accumulated(lh.rank(), 0);
    std::vector<ExactSlope> exact_slopes;

    while (true) {
        auto all = enumerate_subspaces(current, cfg);
        auto [mu, maxima] = exact_maximizers(all);
        SubspaceBasis des = sum_closure(current, maxima, mu);

        RatMat ambient = lift * des.cols; // integral: lift columns are integral
        RatMat step = accumulated.cols() == 0 ? saturate_columns(ambient) : subspace_sum(accumulated, ambient);
        step = lattice_canonical_basis(step);
        flag.steps.push_back(SubspaceBasis(step));
        flag.slopes.push_back(mu.value());
        exact_slopes.push_back(mu);
        accumulated = step;

        if (accumulated.cols() == lh.rank()) break;
        QuotientResult q = quotient_bundle(lh, SubspaceBasis(accumulated));
        current = q.bundle;
        lift = q.lift;
    }

    for (std::size_t i = 1; i < exact_slopes.size(); ++i) {
        // subquotient dims differ, so compare through the exact invariants
        if (compare_slopes(exact_slopes[i - 1], exact_slopes[i]) <= 0)
            throw infeasible_error("hn_flag: slopes are not strictly decreasing");
    }
    return flag;
}

double positive_degree(const Bundle& b, const EnumConfig& cfg) {
    if (const auto* d = std::get_if<DiagonalPNF>(&b)) {
        double total = 0.0;
        for (int i = 0; i < d->rank(); ++i) total += std::max(0.0, d->line_degree(i));
        return total;
    }
    const auto& lh = std::get<LatticeHermitianBundle>(b);
    auto all = enumerate_subspaces(lh, cfg);
    Rational best(1); // the zero subspace contributes degree 0 = (1/2) log 1
    for (const EnumSubspace& e : all)
        if (e.degree_q > best) best = e.degree_q;
    return 0.5 * log_rational(best);
}

double mu_min_enum(const LatticeHermitianBundle& b, const EnumConfig& cfg) {
    return -mu_max_enum(Bundle(dual_bundle(b)), cfg).first;
}

bool is_semistable_enum(const LatticeHermitianBundle& b, const EnumConfig& cfg) {
    auto all = enumerate_subspaces(b, cfg);
    ExactSlope total{subspace_degree_invariant(b, SubspaceBasis(rat_identity(b.rank()))), b.rank()};
    for (const EnumSubspace& e : all)
        if (compare_slopes(e.mu, total) > 0) return false;
    return true;
}

} // namespace adelic
