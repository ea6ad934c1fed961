#pragma once

#include "s3e/exactnum/rational.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace s3e {

/// Element of the degree-8 field Q(sqrt2, 3^(1/4)).
///
/// Coordinates are taken in the basis 2^(i/2) * 3^(j/4), i in {0,1}, j in {0,..,3},
/// stored at index i + 2*j. Multiplication reduces with sqrt2^2 = 2 and r^4 = 3,
/// where r = 3^(1/4) is the positive real fourth root.
class RadicalScalar {
public:
    static constexpr int kDim = 8;

    RadicalScalar() = default;
    RadicalScalar(long value) { c_[0] = value; }  // NOLINT(google-explicit-constructor)
    RadicalScalar(const Rational& value) { c_[0] = value; }  // NOLINT(google-explicit-constructor)

    /// 2^(sqrt2_pow/2) * 3^(qroot3_pow/4) for sqrt2_pow in {0,1}, qroot3_pow in {0..3}.
    static RadicalScalar basis(int sqrt2_pow, int qroot3_pow);
    static RadicalScalar sqrt2() { return basis(1, 0); }
    static RadicalScalar qroot3() { return basis(0, 1); }
    static RadicalScalar sqrt3() { return basis(0, 2); }

    const Rational& coeff(int sqrt2_pow, int qroot3_pow) const { return c_[sqrt2_pow + 2 * qroot3_pow]; }
    const Rational& operator[](int k) const { return c_[k]; }
    Rational& operator[](int k) { return c_[k]; }

    bool is_zero() const;
    bool is_rational() const;
    /// Valid only when is_rational().
    const Rational& rational_part() const { return c_[0]; }

    RadicalScalar operator-() const;
    RadicalScalar& operator+=(const RadicalScalar& o);
    RadicalScalar& operator-=(const RadicalScalar& o);
    RadicalScalar& operator*=(const RadicalScalar& o);
    RadicalScalar& operator*=(const Rational& q);
    RadicalScalar& operator/=(const RadicalScalar& o) { return *this *= o.inverse(); }

    friend RadicalScalar operator+(RadicalScalar a, const RadicalScalar& b) { return a += b; }
    friend RadicalScalar operator-(RadicalScalar a, const RadicalScalar& b) { return a -= b; }
    friend RadicalScalar operator*(const RadicalScalar& a, const RadicalScalar& b);
    friend RadicalScalar operator*(RadicalScalar a, const Rational& q) { return a *= q; }
    friend RadicalScalar operator*(const Rational& q, RadicalScalar a) { return a *= q; }
    friend RadicalScalar operator/(RadicalScalar a, const RadicalScalar& b) { return a /= b; }
    friend bool operator==(const RadicalScalar& a, const RadicalScalar& b) { return a.c_ == b.c_; }

    /// Throws std::domain_error on zero.
    RadicalScalar inverse() const;
    RadicalScalar pow(int e) const;

    /// Field automorphism sqrt2 -> -sqrt2.
    RadicalScalar conj_sqrt2() const;
    /// Field automorphism r -> -r.
    RadicalScalar conj_qroot3() const;
    /// sqrt3 -> -sqrt3 on the subfield Q(sqrt3); requires coordinates only at r^0, r^2.
    RadicalScalar conj_sqrt3() const;

    /// Exact sign of the real embedding.
    int sign() const;
    /// Rational interval [lo, hi] containing the real value; width shrinks like 2^-bits.
    std::pair<Rational, Rational> enclosure(unsigned bits) const;
    double to_double() const;
    long double to_long_double() const;

    /// Canonical text, e.g. "1/2*r2 - 3*r3q^2 + 1".
    std::string to_string() const;
    /// Expression grammar: numbers, sqrt2, sqrt3, r2, r3q, sqrt(2), sqrt(3), 2^(p/2), 3^(p/4),
    /// + - * / ^int and parentheses. Round-trips to_string().
    static RadicalScalar parse(std::string_view text);

private:
    std::array<Rational, kDim> c_{};
};

inline bool is_zero(const RadicalScalar& x) { return x.is_zero(); }

/// Sign of the real embedding, decided exactly.
inline int radical_sign(const RadicalScalar& x) { return x.sign(); }

/// Non-negative square root inside the field when x is a rational multiple of 1 or sqrt3
/// (the only squares of basis monomials); nullopt otherwise or for x < 0.
std::optional<RadicalScalar> radical_sqrt(const RadicalScalar& x);

/// Exact square root of a non-negative rational, if it is one.
std::optional<Rational> rational_sqrt(const Rational& q);

}  // namespace s3e
