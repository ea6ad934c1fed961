#pragma once

#include "s3e/exactnum/radical.hpp"
#include "s3e/exactnum/rational.hpp"
#include "s3e/poly/monomial.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace s3e {

/// Sparse multivariate polynomial with terms kept in descending order under `order()`.
///
/// Coefficient types: Rational (default), RadicalScalar (verification paths).
template <class C>
class Poly {
public:
    using Coeff = C;
    using Term = std::pair<Monomial, C>;

    Poly() = default;
    explicit Poly(VarTablePtr vars, MonomialOrder order = MonomialOrder::lex)
        : vars_(std::move(vars)), order_(order) {
        if (vars_ && vars_->size() > kMaxVars)
            throw PolyError("at most " + std::to_string(kMaxVars) + " polynomial variables supported");
    }

    static Poly constant(VarTablePtr vars, C c, MonomialOrder order = MonomialOrder::lex) {
        Poly p(std::move(vars), order);
        if (!s3e::is_zero(c)) p.terms_.emplace_back(Monomial{}, std::move(c));
        return p;
    }

    static Poly variable(VarTablePtr vars, std::size_t i, MonomialOrder order = MonomialOrder::lex) {
        if (i >= vars->size()) throw PolyError("variable index out of range");
        Poly p(std::move(vars), order);
        p.terms_.emplace_back(Monomial::var(i), C(1L));
        return p;
    }

    static Poly variable(VarTablePtr vars, std::string_view name, MonomialOrder order = MonomialOrder::lex) {
        std::size_t i = vars->index(name);
        return variable(std::move(vars), i, order);
    }

    /// Sorts and merges arbitrary terms; zero coefficients are dropped.
    static Poly from_terms(VarTablePtr vars, MonomialOrder order, std::vector<Term> terms) {
        Poly p(std::move(vars), order);
        p.terms_ = std::move(terms);
        p.normalize();
        return p;
    }

    const VarTablePtr& vars() const noexcept { return vars_; }
    std::size_t nvars() const noexcept { return vars_ ? vars_->size() : 0; }
    MonomialOrder order() const noexcept { return order_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }

    const Monomial& leading_monomial() const {
        require_nonzero();
        return terms_.front().first;
    }
    const C& leading_coeff() const {
        require_nonzero();
        return terms_.front().second;
    }

    unsigned total_degree() const noexcept {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) d = std::max<unsigned>(d, m.deg);
        return d;
    }

    unsigned degree_in(std::size_t var) const noexcept {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) d = std::max<unsigned>(d, m.exp[var]);
        return d;
    }

    bool involves(std::size_t var) const noexcept { return degree_in(var) > 0; }

    /// Coefficient of monomial m (zero if absent).
    C coeff(const Monomial& m) const {
        for (const auto& [mm, c] : terms_)
            if (mm == m) return c;
        return C();
    }

    /// Explicit re-sort under another monomial order.
    Poly with_order(MonomialOrder order) const {
        Poly p = *this;
        p.order_ = order;
        p.sort_terms();
        return p;
    }

    Poly operator-() const {
        Poly p = *this;
        for (auto& t : p.terms_) t.second = -t.second;
        return p;
    }

    Poly& operator+=(const Poly& o) { return *this = add(*this, o, false); }
    Poly& operator-=(const Poly& o) { return *this = add(*this, o, true); }
    Poly& operator*=(const Poly& o) { return *this = mul(*this, o); }
    Poly& operator*=(const C& c) {
        if (s3e::is_zero(c)) {
            terms_.clear();
            return *this;
        }
        for (auto& t : terms_) t.second *= c;
        return *this;
    }

    friend Poly operator+(const Poly& a, const Poly& b) { return add(a, b, false); }
    friend Poly operator-(const Poly& a, const Poly& b) { return add(a, b, true); }
    friend Poly operator*(const Poly& a, const Poly& b) { return mul(a, b); }
    friend Poly operator*(Poly a, const C& c) { return a *= c; }
    friend Poly operator*(const C& c, Poly a) { return a *= c; }
    friend bool operator==(const Poly& a, const Poly& b) {
        return same_vars(a.vars_, b.vars_) && a.terms_ == b.terms_;
    }

    /// Multiply by a monomial.
    Poly shifted(const Monomial& m) const {
        Poly p = *this;
        for (auto& t : p.terms_) t.first = t.first * m;
        return p;
    }

    Poly pow(unsigned e) const {
        Poly r = constant(vars_, C(1L), order_);
        Poly b = *this;
        while (e) {
            if (e & 1) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }

    /// Formal partial derivative.
    Poly diff(std::size_t var) const {
        if (var >= nvars()) throw PolyError("derivative: variable index out of range");
        Poly p(vars_, order_);
        for (const auto& [m, c] : terms_) {
            if (!m.exp[var]) continue;
            Monomial dm = m;
            dm.exp[var] -= 1;
            dm.deg -= 1;
            p.terms_.emplace_back(dm, c * C(static_cast<long>(m.exp[var])));
        }
        return p;
    }

    Poly diff(std::string_view name) const {
        if (!vars_) throw PolyError("derivative of polynomial without variables");
        return diff(vars_->index(name));
    }

    /// Full evaluation at values[i] for variable i. R must support R * C -> R and R * R.
    template <class R>
    R evaluate(std::span<const R> values, const R& zero) const {
        if (values.size() != nvars()) throw PolyError("evaluate: assignment size mismatch");
        R sum = zero;
        std::vector<std::vector<R>> powers(nvars());
        for (const auto& [m, c] : terms_) {
            R term = zero;
            bool first = true;
            for (std::size_t i = 0; i < nvars(); ++i) {
                if (!m.exp[i]) continue;
                const R& pw = power_of(powers[i], values[i], m.exp[i]);
                if (first) {
                    term = pw;
                    first = false;
                } else {
                    term = term * pw;
                }
            }
            if (first)
                sum = sum + (zero + scalar_as<R>(c, zero));
            else
                sum = sum + term * c;
        }
        return sum;
    }

    /// Replace each assigned variable by a value of the coefficient ring R; unassigned
    /// variables are kept. The result lives over the same variable table.
    template <class R>
    Poly<R> specialize(std::span<const std::optional<R>> values) const {
        if (values.size() != nvars()) throw PolyError("specialize: assignment size mismatch");
        std::vector<std::pair<Monomial, R>> out;
        out.reserve(terms_.size());
        std::vector<std::vector<R>> powers(nvars());
        for (const auto& [m, c] : terms_) {
            R coef = scalar_as<R>(c, R());
            Monomial rest = m;
            for (std::size_t i = 0; i < nvars(); ++i) {
                if (!m.exp[i] || !values[i]) continue;
                coef = coef * power_of(powers[i], *values[i], m.exp[i]);
                rest.deg -= rest.exp[i];
                rest.exp[i] = 0;
            }
            out.emplace_back(rest, std::move(coef));
        }
        return Poly<R>::from_terms(vars_, order_, std::move(out));
    }

    /// Substitute polynomials for variables (nullopt keeps the variable).
    Poly substitute(std::span<const std::optional<Poly>> values) const {
        if (values.size() != nvars()) throw PolyError("substitute: assignment size mismatch");
        for (const auto& v : values)
            if (v && !same_vars(v->vars(), vars_)) throw PolyError("substitute: variable table mismatch");
        Poly sum(vars_, order_);
        std::vector<std::vector<Poly>> powers(nvars());
        for (const auto& [m, c] : terms_) {
            Monomial rest = m;
            Poly term = constant(vars_, c, order_);
            for (std::size_t i = 0; i < nvars(); ++i) {
                if (!m.exp[i] || !values[i]) continue;
                term *= power_of(powers[i], *values[i], m.exp[i]);
                rest.deg -= rest.exp[i];
                rest.exp[i] = 0;
            }
            sum += term.shifted(rest);
        }
        return sum;
    }

    /// Apply f to every coefficient (terms mapping to zero are dropped).
    template <class R, class F>
    Poly<R> map_coeffs(F&& f) const {
        std::vector<std::pair<Monomial, R>> out;
        out.reserve(terms_.size());
        for (const auto& [m, c] : terms_) out.emplace_back(m, f(c));
        return Poly<R>::from_terms(vars_, order_, std::move(out));
    }

    /// Moves the polynomial onto another variable table that contains all used variables.
    Poly rebase(VarTablePtr target) const {
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& [m, c] : terms_) {
            Monomial mm;
            for (std::size_t i = 0; i < nvars(); ++i) {
                if (!m.exp[i]) continue;
                mm.exp[target->index(vars_->name(i))] = m.exp[i];
            }
            mm.deg = m.deg;
            out.emplace_back(mm, c);
        }
        return from_terms(std::move(target), order_, std::move(out));
    }

    void normalize() {
        std::sort(terms_.begin(), terms_.end(), [this](const Term& a, const Term& b) {
            return compare(a.first, b.first, order_, nvars()) > 0;
        });
        std::vector<Term> merged;
        merged.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!merged.empty() && merged.back().first == t.first)
                merged.back().second += t.second;
            else
                merged.push_back(std::move(t));
        }
        std::erase_if(merged, [](const Term& t) { return s3e::is_zero(t.second); });
        terms_ = std::move(merged);
    }

private:
    template <class R>
    static R scalar_as(const C& c, const R& like) {
        if constexpr (std::is_constructible_v<R, const C&>) {
            (void)like;
            return R(c);
        } else {
            return like.scalar(c);
        }
    }

    template <class R>
    static const R& power_of(std::vector<R>& cache, const R& base, unsigned e) {
        if (cache.empty()) cache.push_back(base);
        while (cache.size() < e) cache.push_back(cache.back() * base);
        return cache[e - 1];
    }

    void require_nonzero() const {
        if (terms_.empty()) throw PolyError("leading term of zero polynomial");
    }

    void sort_terms() {
        std::sort(terms_.begin(), terms_.end(), [this](const Term& a, const Term& b) {
            return compare(a.first, b.first, order_, nvars()) > 0;
        });
    }

    static void check_compatible(const Poly& a, const Poly& b) {
        if (!same_vars(a.vars_, b.vars_)) throw PolyError("polynomial variable tables differ");
        if (a.order_ != b.order_) throw PolyError("polynomial monomial orders differ");
    }

    static Poly add(const Poly& a, const Poly& b, bool subtract) {
        if (a.vars_ == nullptr && a.terms_.empty()) return subtract ? -b : b;
        if (b.vars_ == nullptr && b.terms_.empty()) return a;
        check_compatible(a, b);
        Poly r(a.vars_, a.order_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0;
        std::size_t j = 0;
        const std::size_t n = a.nvars();
        while (i < a.terms_.size() || j < b.terms_.size()) {
            int cmp;
            if (i == a.terms_.size())
                cmp = -1;
            else if (j == b.terms_.size())
                cmp = 1;
            else
                cmp = compare(a.terms_[i].first, b.terms_[j].first, a.order_, n);
            if (cmp > 0) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (cmp < 0) {
                r.terms_.emplace_back(b.terms_[j].first, subtract ? C(-b.terms_[j].second) : b.terms_[j].second);
                ++j;
            } else {
                C c = subtract ? C(a.terms_[i].second - b.terms_[j].second) : C(a.terms_[i].second + b.terms_[j].second);
                if (!s3e::is_zero(c)) r.terms_.emplace_back(a.terms_[i].first, std::move(c));
                ++i;
                ++j;
            }
        }
        return r;
    }

    static Poly mul(const Poly& a, const Poly& b) {
        check_compatible(a, b);
        std::vector<Term> prod;
        prod.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) prod.emplace_back(ma * mb, C(ca * cb));
        return from_terms(a.vars_, a.order_, std::move(prod));
    }

    VarTablePtr vars_;
    MonomialOrder order_ = MonomialOrder::lex;
    std::vector<Term> terms_;
};

using QPoly = Poly<Rational>;
using RPoly = Poly<RadicalScalar>;

/// Canonical text in the system-file term syntax. Rational coefficients only.
std::string to_string(const QPoly& p);
/// Debug text with radical coefficients in parentheses.
std::string to_string(const RPoly& p);

/// Parse a polynomial over the given variables. Line/column in errors are relative to `line_no`.
QPoly parse_poly(std::string_view text, const VarTablePtr& vars, MonomialOrder order = MonomialOrder::lex,
                 std::size_t line_no = 1);

/// Divide by the content so the coefficients are coprime integers with positive leading coefficient.
QPoly primitive_part(const QPoly& p);
/// Leading coefficient 1.
QPoly make_monic(const QPoly& p);

inline QPoly qpoly_var(const VarTablePtr& vars, std::string_view name, MonomialOrder order = MonomialOrder::lex) {
    return QPoly::variable(vars, name, order);
}
inline QPoly qpoly_const(const VarTablePtr& vars, const Rational& c, MonomialOrder order = MonomialOrder::lex) {
    return QPoly::constant(vars, c, order);
}

}  // namespace s3e
