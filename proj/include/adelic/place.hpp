#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "adelic/quadratic.hpp"
#include "adelic/rational.hpp"
#include "adelic/rational_function.hpp"

namespace adelic {

// --------------------------------------------------------------------------
// Places
// --------------------------------------------------------------------------

struct RationalFinite {
    Integer p;
};

struct RationalInfinite {};

enum class SplitKind { Split, Inert, Ramified, RealEmbedding, ComplexEmbedding };

/// Place of Q(sqrt(d)) lying above a rational place.
struct QuadraticPlace {
    long d;
    bool base_infinite = false;
    Integer p;      // base prime when base is finite
    SplitKind kind; // how the base place behaves in the extension
    int index = 0;  // which place above the base (0 or 1 when two)
};

struct NevanlinnaInterior {
    GaussianRational z; // |z| < R exactly
    Rational R;
};

struct NevanlinnaBoundary {
    Rational R;
    double theta = 0.0; // sampling node on |z| = R
};

class Place {
public:
    using Variant = std::variant<RationalFinite, RationalInfinite, QuadraticPlace, NevanlinnaInterior, NevanlinnaBoundary>;

    Place(RationalFinite v);
    Place(RationalInfinite v) : v_(std::move(v)) {}
    Place(QuadraticPlace v);
    Place(NevanlinnaInterior v);
    Place(NevanlinnaBoundary v);

    const Variant& data() const { return v_; }
    template <class T> const T* get_if() const { return std::get_if<T>(&v_); }
    template <class T> bool is() const { return std::holds_alternative<T>(v_); }

    /// Report key: "p=5", "inf", "quad(d=-1,p=5,#0)", "nev-int(z=1/2, R=1)", "nev-bnd(R=1)".
    std::string key() const;

    /// Inverse of key() for the discrete place kinds used in descriptors.
    static Place from_key(const std::string& key);

    friend bool operator==(const Place& a, const Place& b);
    friend bool operator<(const Place& a, const Place& b); // total order for map keys
    friend std::ostream& operator<<(std::ostream& os, const Place& w);

private:
    Variant v_;
};

// --------------------------------------------------------------------------
// Pseudo-absolute values
// --------------------------------------------------------------------------

/// Value of a pseudo-absolute value: an element of [0, +inf].
struct PavValue {
    double value = 0.0;
    bool infinite = false;

    static PavValue inf() { return {0.0, true}; }
    static PavValue finite(double v) { return {v, false}; }
    double log() const;
};

PavValue pav_eval(const Place& w, const Rational& f);
PavValue pav_eval(const Place& w, const QuadraticElement& f);
PavValue pav_eval(const Place& w, const RationalFunction& f);

double log_pav_eval(const Place& w, const Rational& f);
double log_pav_eval(const Place& w, const QuadraticElement& f);
double log_pav_eval(const Place& w, const RationalFunction& f);

enum class PlaceClass { Archimedean, NonArchimedean };

bool is_archimedean(const Place& w);
inline PlaceClass classify(const Place& w) {
    return is_archimedean(w) ? PlaceClass::Archimedean : PlaceClass::NonArchimedean;
}

template <class Field> bool is_finite(const Place& w, const Field& f) { return !pav_eval(w, f).infinite; }
template <class Field> bool in_kernel(const Place& w, const Field& f) {
    PavValue v = pav_eval(w, f);
    return !v.infinite && v.value == 0.0;
}

/// Exact valuation of a nonzero quadratic element at a finite quadratic place,
/// normalised so that log|f|_w = -(valuation) * log(p) / e_w with
/// e_w the ramification index absorbed into a half-integer return:
/// returns v such that |f|_w = p^(-v). v is integral at split places and a
/// half-integer at inert/ramified ones.
Rational quadratic_valuation(const QuadraticPlace& w, const QuadraticElement& f);

// --------------------------------------------------------------------------
// Splitting of rational places in Q(sqrt(d))
// --------------------------------------------------------------------------

struct WeightedPlace {
    Place place;
    Rational weight; // P_{L,omega}: [L_x : Q_omega] / [L : Q]
};

/// Places of Q(sqrt(d)) above the given rational place, with extension
/// weights summing to one. Splitting decided by the Kronecker symbol and the
/// field discriminant (d if d = 1 mod 4, else 4d).
std::vector<WeightedPlace> split_rational_place(long d, const Place& base);

} // namespace adelic
