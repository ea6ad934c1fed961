#pragma once

#include "s3e/exactnum/radical.hpp"
#include "s3e/exactnum/rational.hpp"
#include "s3e/poly/poly.hpp"

#include <string>
#include <utility>
#include <vector>

namespace s3e {

/// Dense univariate polynomial over a field; c[k] is the coefficient of x^k.
template <class C>
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UPoly constant(C v) { return UPoly(std::vector<C>{std::move(v)}); }
    static UPoly x() { return UPoly(std::vector<C>{C(0L), C(1L)}); }

    bool is_zero() const noexcept { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const std::vector<C>& coeffs() const noexcept { return c_; }
    C operator[](std::size_t k) const { return k < c_.size() ? c_[k] : C(0L); }
    const C& lc() const { return c_.back(); }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<C> r(std::max(a.c_.size(), b.c_.size()), C(0L));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return UPoly(std::move(r));
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    UPoly operator-() const {
        UPoly r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<C> r(a.c_.size() + b.c_.size() - 1, C(0L));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (s3e::is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return UPoly(std::move(r));
    }
    friend UPoly operator*(UPoly a, const C& s) {
        for (auto& v : a.c_) v *= s;
        a.trim();
        return a;
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    /// Euclidean division; throws std::domain_error for a zero divisor.
    std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<C> rem = c_;
        const int dd = d.degree();
        if (degree() < dd) return {UPoly(), *this};
        std::vector<C> quo(static_cast<std::size_t>(degree() - dd + 1), C(0L));
        const C inv = C(1L) / d.lc();
        for (int k = degree(); k >= dd; --k) {
            C q = rem[k] * inv;
            if (s3e::is_zero(q)) continue;
            quo[k - dd] = q;
            for (int j = 0; j <= dd; ++j) rem[k - dd + j] -= q * d.c_[j];
        }
        rem.resize(static_cast<std::size_t>(dd));
        return {UPoly(std::move(quo)), UPoly(std::move(rem))};
    }
    UPoly operator%(const UPoly& d) const { return divmod(d).second; }
    UPoly operator/(const UPoly& d) const { return divmod(d).first; }

    UPoly monic() const {
        if (is_zero()) return *this;
        return *this * (C(1L) / lc());
    }

    UPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<C> r(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) r[k - 1] = c_[k] * C(static_cast<long>(k));
        return UPoly(std::move(r));
    }

    template <class R>
    R evaluate(const R& x) const {
        R acc = R(0L);
        for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + R(c_[k]);
        return acc;
    }

    template <class R, class F>
    UPoly<R> map(F&& f) const {
        std::vector<R> r;
        r.reserve(c_.size());
        for (const auto& v : c_) r.push_back(f(v));
        return UPoly<R>(std::move(r));
    }

private:
    void trim() {
        while (!c_.empty() && s3e::is_zero(c_.back())) c_.pop_back();
    }

    std::vector<C> c_;
};

template <class C>
UPoly<C> gcd(UPoly<C> a, UPoly<C> b) {
    while (!b.is_zero()) {
        UPoly<C> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Square-free factors with multiplicities (Yun); constant content dropped.
template <class C>
std::vector<std::pair<UPoly<C>, unsigned>> squarefree_decomposition(const UPoly<C>& p) {
    std::vector<std::pair<UPoly<C>, unsigned>> out;
    if (p.degree() <= 0) return out;
    UPoly<C> dp = p.derivative();
    UPoly<C> a = gcd(p, dp);
    UPoly<C> b = p / a;
    UPoly<C> c = dp / a;
    UPoly<C> d = c - b.derivative();
    for (unsigned i = 1; b.degree() > 0; ++i) {
        UPoly<C> g = gcd(b, d);
        if (g.degree() > 0) out.emplace_back(g, i);
        b = b / g;
        c = d / g;
        d = c - b.derivative();
    }
    return out;
}

template <class C>
UPoly<C> squarefree_part(const UPoly<C>& p) {
    if (p.degree() <= 0) return p;
    return (p / gcd(p, p.derivative())).monic();
}

using QUPoly = UPoly<Rational>;
using RUPoly = UPoly<RadicalScalar>;

std::string to_string(const QUPoly& p, std::string_view var = "x");
std::string to_string(const RUPoly& p, std::string_view var = "x");

/// Univariate view of a polynomial involving at most the variable `var`.
QUPoly to_univariate(const QPoly& p, std::size_t var);
RUPoly to_univariate(const RPoly& p, std::size_t var);
QPoly from_univariate(const QUPoly& p, const VarTablePtr& vars, std::size_t var,
                      MonomialOrder order = MonomialOrder::lex);

/// Monic minimal polynomial over Q of an element of Q(sqrt2, 3^(1/4)).
QUPoly minimal_polynomial(const RadicalScalar& x);

/// Product of the conjugates of p under the field automorphisms, a polynomial over Q
/// whose roots include all roots of p.
QUPoly norm_to_rational(const RUPoly& p);

}  // namespace s3e
