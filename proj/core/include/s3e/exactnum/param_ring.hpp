#pragma once

#include "s3e/exactnum/radical.hpp"
#include "s3e/poly/poly.hpp"

#include <memory>
#include <stdexcept>
#include <string>

namespace s3e {

class ParamRingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Variable table {t, s} shared by all parametric elements.
const VarTablePtr& param_vars();

/// Defining relation lc*s^d + R(t, s) with deg_s R < d and lc a nonzero constant.
class SqrtRelation {
public:
    /// Throws ParamRingError("non-monic relation") unless the leading s-coefficient is a constant.
    explicit SqrtRelation(RPoly relation);

    /// s^2 + c*t^2 - 1, the relation of the t-families.
    static std::shared_ptr<const SqrtRelation> unit_circle(const Rational& c);

    const RPoly& poly() const noexcept { return rel_; }
    unsigned s_degree() const noexcept { return d_; }
    /// Representative with s-degree below s_degree().
    RPoly reduce(const RPoly& p) const;
    std::string to_string() const;

    friend bool operator==(const SqrtRelation& a, const SqrtRelation& b) { return a.rel_ == b.rel_; }

private:
    RPoly rel_;
    unsigned d_ = 0;
    RPoly tail_;  // s^d == tail_
};

using RelationPtr = std::shared_ptr<const SqrtRelation>;

/// Element of Q(sqrt2, 3^(1/4))[t, s] / (relation). Immutable value type.
///
/// A null relation marks a constant that is compatible with every relation.
class ParamRingElem {
public:
    ParamRingElem() = default;
    ParamRingElem(RelationPtr rel, RPoly rep);

    static ParamRingElem constant(RelationPtr rel, const RadicalScalar& c);
    static ParamRingElem t(RelationPtr rel);
    static ParamRingElem s(RelationPtr rel);

    const RelationPtr& relation() const noexcept { return rel_; }
    /// Current representative (canonical after any arithmetic).
    const RPoly& representative() const noexcept { return rep_; }

    bool is_zero() const { return rep_.is_zero(); }
    /// True when the element is a constant of the radical field.
    bool is_constant() const { return rep_.is_constant(); }
    RadicalScalar constant_value() const;

    ParamRingElem scalar(const Rational& q) const;
    ParamRingElem scalar(const RadicalScalar& q) const;

    ParamRingElem operator-() const;
    friend ParamRingElem operator+(const ParamRingElem& a, const ParamRingElem& b);
    friend ParamRingElem operator-(const ParamRingElem& a, const ParamRingElem& b);
    friend ParamRingElem operator*(const ParamRingElem& a, const ParamRingElem& b);
    friend ParamRingElem operator*(const ParamRingElem& a, const Rational& q);
    friend ParamRingElem operator*(const ParamRingElem& a, const RadicalScalar& q);
    friend bool operator==(const ParamRingElem& a, const ParamRingElem& b) { return (a - b).is_zero(); }

    /// Real value at (t, s).
    double evaluate(double t, double s) const;

    /// Polynomial text in t, s, e.g. "(1/2*r2)*t*s - 1".
    std::string to_string() const;
    /// Inverse of to_string for a given relation.
    static ParamRingElem parse(std::string_view text, RelationPtr rel);

private:
    static RelationPtr common(const ParamRingElem& a, const ParamRingElem& b);

    RelationPtr rel_;
    RPoly rep_;
};

inline bool is_zero(const ParamRingElem& x) { return x.is_zero(); }

/// Canonical form: s-degree below the relation degree. Idempotent.
ParamRingElem param_reduce(const ParamRingElem& x);

/// Parses a polynomial over radical coefficients: coefficients are rationals or parenthesised
/// radical expressions, e.g. "(r2 - 1)*t^2*s + 3/4".
RPoly parse_rpoly(std::string_view text, const VarTablePtr& vars);

/// Serialization: element text, newline, "rel: <relation>".
std::string format_param(const ParamRingElem& x);
ParamRingElem parse_param(std::string_view text);

}  // namespace s3e
