#pragma once

#include "s3e/exactnum/radical.hpp"
#include "s3e/poly/univariate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace s3e {

/// A real root of `poly` (square-free) isolated in [lo, hi]. lo == hi marks an exact
/// rational root; otherwise poly has opposite non-zero signs at lo and hi.
struct IsolatedRoot {
    Rational lo, hi;
    QUPoly poly;
    unsigned multiplicity = 1;

    bool exact() const { return lo == hi; }
    Rational midpoint() const { return (lo + hi) / 2; }
    /// Midpoint after refining a copy to 2^-60.
    double to_double() const;
    /// Halve the interval until its width is at most 2^-bits.
    void refine(unsigned bits);
    std::string to_string() const;
};

/// Isolating intervals of all real roots, sorted ascending. Throws std::domain_error for 0.
std::vector<IsolatedRoot> isolate_real_roots(const QUPoly& p);

/// Number of distinct real roots of a square-free p in (a, b], a < b.
int sturm_count(const QUPoly& p, const Rational& a, const Rational& b);

/// Best rational approximation with denominator at most max_den (continued fractions).
Rational rationalize(const Rational& x, const Integer& max_den);

/// Exact value in Q(sqrt2, 3^(1/4)) of the root, searched among q * 2^(i/2) * 3^(j/4)
/// with small rational q; returned only if it is an exact root inside the interval.
std::optional<RadicalScalar> recognize_radical(const IsolatedRoot& root);

/// Real roots of a polynomial with field coefficients.
struct FieldRoots {
    std::vector<RadicalScalar> exact;         // ascending, each an exact root in the field
    std::vector<IsolatedRoot> unrecognized;   // real roots of the norm that appear to be roots but left the field
};
FieldRoots real_roots_in_field(const RUPoly& p);

}  // namespace s3e
