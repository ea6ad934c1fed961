#include "s3e/poly/univariate.hpp"

#include <sstream>

namespace s3e {

namespace {

template <class C, class F>
std::string render(const UPoly<C>& p, std::string_view var, F&& coeff_text) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        const C& c = p.coeffs()[k];
        if (s3e::is_zero(c)) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << coeff_text(c) << ")";
        if (k >= 1) os << "*" << var;
        if (k >= 2) os << "^" << k;
    }
    return os.str();
}

template <class C>
UPoly<C> univariate_of(const Poly<C>& p, std::size_t var) {
    std::vector<C> c;
    for (const auto& [m, v] : p.terms()) {
        if (m.deg != m.exp[var]) throw PolyError("polynomial is not univariate in the requested variable");
        const std::size_t k = m.exp[var];
        if (c.size() <= k) c.resize(k + 1, C(0L));
        c[k] += v;
    }
    return UPoly<C>(std::move(c));
}

// Solves sum_k x_k cols[k] = rhs exactly; nullopt if inconsistent.
std::optional<std::vector<Rational>> solve_columns(const std::vector<std::array<Rational, 8>>& cols,
                                                   const std::array<Rational, 8>& rhs) {
    const std::size_t n = cols.size();
    std::vector<std::vector<Rational>> m(8, std::vector<Rational>(n + 1));
    for (std::size_t r = 0; r < 8; ++r) {
        for (std::size_t k = 0; k < n; ++k) m[r][k] = cols[k][r];
        m[r][n] = rhs[r];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t k = 0; k < n && row < 8; ++k) {
        std::size_t piv = row;
        while (piv < 8 && is_zero(m[piv][k])) ++piv;
        if (piv == 8) continue;
        std::swap(m[piv], m[row]);
        for (std::size_t r = 0; r < 8; ++r) {
            if (r == row || is_zero(m[r][k])) continue;
            const Rational f = m[r][k] / m[row][k];
            for (std::size_t j = k; j <= n; ++j) m[r][j] -= f * m[row][j];
        }
        pivot_col.push_back(k);
        ++row;
    }
    for (std::size_t r = row; r < 8; ++r)
        if (!is_zero(m[r][n])) return std::nullopt;
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = m[i][n] / m[i][pivot_col[i]];
    return x;
}

std::array<Rational, 8> coords(const RadicalScalar& x) {
    std::array<Rational, 8> c;
    for (int k = 0; k < 8; ++k) c[k] = x[k];
    return c;
}

}  // namespace

std::string to_string(const QUPoly& p, std::string_view var) {
    return render(p, var, [](const Rational& c) { return s3e::to_string(c); });
}

std::string to_string(const RUPoly& p, std::string_view var) {
    return render(p, var, [](const RadicalScalar& c) { return c.to_string(); });
}

QUPoly to_univariate(const QPoly& p, std::size_t var) { return univariate_of(p, var); }
RUPoly to_univariate(const RPoly& p, std::size_t var) { return univariate_of(p, var); }

QPoly from_univariate(const QUPoly& p, const VarTablePtr& vars, std::size_t var, MonomialOrder order) {
    std::vector<QPoly::Term> terms;
    for (int k = 0; k <= p.degree(); ++k)
        if (!is_zero(p.coeffs()[k])) terms.emplace_back(Monomial::var(var, static_cast<unsigned>(k)), p.coeffs()[k]);
    return QPoly::from_terms(vars, order, std::move(terms));
}

QUPoly minimal_polynomial(const RadicalScalar& x) {
    std::vector<std::array<Rational, 8>> powers{coords(RadicalScalar(1L))};
    RadicalScalar xp(1L);
    for (int n = 1; n <= 8; ++n) {
        xp *= x;
        auto target = coords(-xp);
        if (auto sol = solve_columns(powers, target)) {
            std::vector<Rational> c(*sol);
            c.push_back(Rational(1));
            return QUPoly(std::move(c));
        }
        powers.push_back(coords(xp));
    }
    throw std::logic_error("minimal polynomial degree exceeds field degree");
}

QUPoly norm_to_rational(const RUPoly& p) {
    auto apply = [](const RUPoly& q, RadicalScalar (RadicalScalar::*conj)() const) {
        return q.map<RadicalScalar>([conj](const RadicalScalar& c) { return (c.*conj)(); });
    };
    RUPoly n = p * apply(p, &RadicalScalar::conj_sqrt2);
    n = n * apply(n, &RadicalScalar::conj_qroot3);
    n = n * apply(n, &RadicalScalar::conj_sqrt3);
    return n.map<Rational>([](const RadicalScalar& c) {
        if (!c.is_rational()) throw std::logic_error("norm left the rationals");
        return c.rational_part();
    });
}

}  // namespace s3e
