#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "adelic/place.hpp"
#include "adelic/rational_function.hpp"

namespace adelic {

/// Boundary quadrature configuration for Nevanlinna curves.
struct IntegrationConfig {
    int nodes = 4096;         // power of two, >= 16
    double clearance = 1e-8;  // min distance of zeros/poles to the circle
    double tolerance = 1e-9;

    void validate() const;
};

struct RationalCurveTag {};
struct QuadraticCurveTag {
    long d;
};
struct NevanlinnaCurveTag {
    Rational R;
};

/// An adelic curve at desk scale: the measure space of places of Q, of
/// Q(sqrt(d)), or of the Nevanlinna curve S_R, plus an integration engine.
class AdelicCurve {
public:
    static AdelicCurve rational(IntegrationConfig cfg = {});
    static AdelicCurve quadratic(long d, IntegrationConfig cfg = {});
    static AdelicCurve nevanlinna(Rational R, IntegrationConfig cfg = {});

    bool is_rational() const { return std::holds_alternative<RationalCurveTag>(kind_); }
    bool is_quadratic() const { return std::holds_alternative<QuadraticCurveTag>(kind_); }
    bool is_nevanlinna() const { return std::holds_alternative<NevanlinnaCurveTag>(kind_); }
    long quadratic_d() const;
    const Rational& radius() const;
    const IntegrationConfig& config() const { return cfg_; }

    std::string describe() const;

private:
    AdelicCurve(std::variant<RationalCurveTag, QuadraticCurveTag, NevanlinnaCurveTag> kind, IntegrationConfig cfg);
    std::variant<RationalCurveTag, QuadraticCurveTag, NevanlinnaCurveTag> kind_;
    IntegrationConfig cfg_;
};

struct DefectReport {
    double discrete_part = 0.0;
    double boundary_part = 0.0; // archimedean contribution
    double total = 0.0;
    std::optional<double> reference;
    std::optional<double> gap;
    bool exact = false; // rational curve: symbolic prime-exponent bookkeeping cancelled
};

/// Discrete places where log|f| is nonzero, with their measure weights.
/// Rational curve: the primes dividing numerator or denominator (weight 1).
/// Nevanlinna curve: zeros/poles strictly inside the disc, weight log(R/|z|).
std::vector<std::pair<Place, double>> support_places(const AdelicCurve& curve, const Rational& f);
std::vector<std::pair<Place, double>> support_places(const AdelicCurve& curve, const RationalFunction& f);

/// The defect d_S(f): the integral of log|f| over the curve. Zero on the
/// rational curve (product formula); log|c(f,0)| on S_R (Jensen).
DefectReport defect(const AdelicCurve& curve, const Rational& f);
DefectReport defect(const AdelicCurve& curve, const RationalFunction& f);

/// Defect of f in Q(sqrt(d)) through the extension weights; reference is the
/// norm cross-check (1/2) d_Q(N(f)), gap their difference. Both vanish.
DefectReport defect_quadratic(long d, const QuadraticElement& f, IntegrationConfig cfg = {});

struct FamilyDefectRow {
    Rational R;
    std::optional<DefectReport> report;
    std::optional<std::string> error; // per-radius clearance violations are not fatal
};

/// Defect of f across a grid of radii. Constant = log|c(f,0)| up to
/// quadrature tolerance: the O(1) witness of asymptotic properness.
std::vector<FamilyDefectRow> family_defect(const RationalFunction& f, const std::vector<Rational>& R_grid,
                                           IntegrationConfig cfg = {});

/// Distance from every zero/pole of f to the circle |z| = R, minimum over roots.
/// Returns +inf for constant nonzero f.
double circle_clearance(const RationalFunction& f, double R);

/// Mean of log|f| over the circle |z| = R (normalised Lebesgue), trapezoid rule.
/// Throws numerical_guard_error when a zero/pole sits within cfg.clearance of the circle.
double boundary_log_mean(const RationalFunction& f, const Rational& R, const IntegrationConfig& cfg);

} // namespace adelic
