#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "adelic/bundle.hpp"
#include "adelic/curve.hpp"
#include "adelic/hn.hpp"

namespace adelic {

// --------------------------------------------------------------------------
// Points
// --------------------------------------------------------------------------

struct RationalPoint {
    std::vector<Rational> coords;
};

struct QuadraticPoint {
    long d;
    std::vector<QuadraticElement> coords;
};

using ProjectivePoint = std::variant<RationalPoint, QuadraticPoint>;

/// Fubini-Study metric data: a pseudo-norm family on the ambient K^(n+1).
struct FSMetricSpec {
    Bundle ambient;
};

/// Height h(P) of a closed point of P^n with respect to the Fubini-Study
/// metric of the ambient bundle, priced through the proper curve:
/// the integral of log||x|| - log|x_j| over all places (independent of the
/// representative and of j by the product formula).
double fs_height(const AdelicCurve& curve, const FSMetricSpec& spec, const ProjectivePoint& point);

// --------------------------------------------------------------------------
// Nevanlinna functions
// --------------------------------------------------------------------------

/// Target value a in P^1: empty optional encodes infinity.
using Target = std::optional<GaussianRational>;

constexpr int kUntruncated = -1;

/// Counting function N_k(r): sum over solutions of f = a in |z| < r of
/// min(k, mult) log(r/|z|), plus the z = 0 term with log(r). Geometric form.
double counting_N(const RationalFunction& f, const Target& a, double r, int truncation = kUntruncated,
                  const IntegrationConfig& cfg = {});

/// Classical integral form int_1^r n(t)/t dt; equals the geometric form for
/// r > 1 when no solution lies in 0 < |z| <= 1.
double counting_N_classical(const RationalFunction& f, const Target& a, double r, int truncation = kUntruncated,
                            const IntegrationConfig& cfg = {});

/// Proximity m(r): circle mean of log+|f| (a = infinity) or log+|1/(f-a)|.
/// Kink cells of log+ are refined on a fixed subgrid.
double proximity_m(const RationalFunction& f, const Target& a, double r, const IntegrationConfig& cfg = {});

/// Characteristic T = m + N.
double characteristic_T(const RationalFunction& f, const Target& a, double r, const IntegrationConfig& cfg = {});

struct CharacteristicRow {
    double r = 0.0;
    std::optional<double> N, N_truncated, m, T;
    std::optional<double> fs_height; // Cartan height of [1 : f] at this radius
    std::optional<double> gap;       // fs_height - T
    std::optional<std::string> flag; // per-row numerical guards
};

struct CharacteristicReport {
    Target target;
    int truncation = kUntruncated;
    std::vector<CharacteristicRow> rows;
};

/// Per-radius table of N, N_k, m, T for one target, with the Cartan height
/// column when requested.
CharacteristicReport characteristic_table(const RationalFunction& f, const Target& a,
                                          const std::vector<double>& r_grid, int truncation = kUntruncated,
                                          bool with_fs_height = true, ArchShape shape = ArchShape::Max,
                                          const IntegrationConfig& cfg = {});

// --------------------------------------------------------------------------
// Family heights
// --------------------------------------------------------------------------

struct CartanHeight {
    double height = 0.0;
    std::optional<double> characteristic; // T(R, f1/f0 at infinity) when defined
    std::optional<double> gap;
    bool reduced_input = false; // representative was not coprime and got reduced
};

/// Height of the closed point [f0 : ... : fn] over the Nevanlinna curve S_R:
/// interior places contribute e^(-min ord) on a coprime representative, the
/// boundary contributes the chosen archimedean shape; the defect of the
/// pivot coordinate is subtracted.
CartanHeight cartan_fs_height(const std::vector<RationalFunction>& coords, ArchShape shape, const Rational& R,
                              const IntegrationConfig& cfg = {}, const std::vector<double>& arch_logs = {});

/// Metrized characteristic of f against the target a: the height of [1 : f]
/// over S_R computed with the section vanishing at a under a fixed
/// Fubini-Study shape. Agrees with the classical T up to a bounded function;
/// section changes shift it by an exact Laurent constant.
double characteristic_fs(const RationalFunction& f, const Target& a, const Rational& R,
                         ArchShape shape = ArchShape::Max, const IntegrationConfig& cfg = {});

struct SectionGapRow {
    Rational R;
    std::optional<double> difference; // T(R, f at a1) - T(R, f at a2), metrized
    double reference = 0.0;           // log|c| of the section ratio at 0, exact
    std::optional<double> gap;        // difference - reference
    std::optional<std::string> flag;
};

/// First-main-theorem section change on the metrized characteristic: the
/// difference of heights against the exact Laurent reference of
/// (f-a2)/(f-a1) at 0 (numerator dropped when a2 is infinite, denominator
/// when a1 is). The identity is exact, not just O(1).
std::vector<SectionGapRow> fmt_section_gap(const RationalFunction& f, const Target& a1, const Target& a2,
                                           const std::vector<Rational>& R_grid, const IntegrationConfig& cfg = {});

struct DefectEstimateRow {
    double r = 0.0;
    std::optional<double> ratio; // m/T
    std::optional<std::string> flag;
};

struct DefectEstimate {
    Target target;
    std::vector<DefectEstimateRow> rows;
    std::optional<double> limit_estimate; // value at the largest usable radius
};

/// Nevanlinna defect delta_f(a) = liminf m/T, estimated along a radius grid.
DefectEstimate defect_estimate(const RationalFunction& f, const Target& a, const std::vector<double>& r_grid,
                               const IntegrationConfig& cfg = {});

// --------------------------------------------------------------------------
// Height identities on the proper curve
// --------------------------------------------------------------------------

struct AdditivityReport {
    double h_combined = 0.0; // height under spec1^(m1) tensor spec2^(m2)
    double h1 = 0.0, h2 = 0.0;
    double additivity_gap = 0.0;            // h_combined - m1 h1 - m2 h2
    std::optional<double> metric_distance;  // distance integral of the pair
    std::optional<bool> metric_bound_holds; // |h1 - h2| <= distance
};

/// Verifies h under tensor powers and the metric-change bound
/// |h_1 - h_2| <= integral of the local distance.
AdditivityReport height_additivity_check(const AdelicCurve& curve, const FSMetricSpec& spec1,
                                         const FSMetricSpec& spec2, const ProjectivePoint& point, int m1, int m2);

/// m-fold tensor power of an ambient bundle (m = 0 gives the unit line).
Bundle bundle_power(const Bundle& b, int m);

/// Kronecker power of homogeneous coordinates, matching bundle_power.
std::vector<Rational> coordinate_power(const std::vector<Rational>& coords, int m);

} // namespace adelic
