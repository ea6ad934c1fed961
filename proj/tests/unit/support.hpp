#pragma once

#include "s3e/exactnum/radical.hpp"
#include "s3e/poly/poly.hpp"

#include <filesystem>
#include <random>
#include <string>

namespace s3e::test {

inline std::filesystem::path data_path(const std::string& rel) { return std::filesystem::path(S3E_DATA_DIR) / rel; }

// Fixed seeds keep every property run reproducible.
inline std::mt19937_64& rng() {
    static std::mt19937_64 g(20261018);
    return g;
}

inline long uniform_int(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }
inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline Rational random_rational(long range = 1000) {
    Rational q(uniform_int(-range, range), uniform_int(1, range));
    q.canonicalize();
    return q;
}

inline RadicalScalar random_radical(int density = 8, long range = 50) {
    RadicalScalar x;
    for (int k = 0; k < RadicalScalar::kDim; ++k)
        if (uniform_int(0, 7) < density) x[k] = random_rational(range);
    return x;
}

inline Monomial random_monomial(std::size_t nvars, unsigned max_exp) {
    Monomial m;
    for (std::size_t i = 0; i < nvars; ++i) {
        m.exp[i] = static_cast<std::uint16_t>(uniform_int(0, max_exp));
        m.deg += m.exp[i];
    }
    return m;
}

inline QPoly random_qpoly(const VarTablePtr& vars, int terms, unsigned max_exp, MonomialOrder order = MonomialOrder::lex) {
    std::vector<std::pair<Monomial, Rational>> t;
    for (int i = 0; i < terms; ++i) t.emplace_back(random_monomial(vars->size(), max_exp), random_rational(20));
    return QPoly::from_terms(vars, order, std::move(t));
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace s3e::test

namespace s3e::test {

inline double eval_double(const QPoly& p, const std::vector<double>& x) {
    double sum = 0;
    for (const auto& [m, c] : p.terms()) {
        double t = c.get_d();
        for (std::size_t i = 0; i < p.nvars(); ++i)
            for (unsigned k = 0; k < m.exp[i]; ++k) t *= x[i];
        sum += t;
    }
    return sum;
}

}  // namespace s3e::test

#include "s3e/varsys/chart.hpp"

namespace s3e::test {

// The z2 system at mu = -1 with every diagonal fixed to 1, over (Z, W, CC, Y, X).
// Small enough for a lex basis in milliseconds; its variety holds the circle families.
inline PolySystem restricted_z2_system() {
    PolySystem sys = build_variational_system(MetricChart::z2_mu_fixed(RadicalScalar(-1)));
    auto vars = make_vars({"Z", "W", "CC", "Y", "X"});
    PolySystem r;
    r.vars = vars;
    r.label = "z2-mu=-1 diagonal=1";
    std::vector<std::optional<Rational>> vals(sys.vars->size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const std::string& n = sys.vars->name(i);
        if (n == "MU") vals[i] = Rational(-1);
        if (n.size() == 1 && n[0] >= 'A' && n[0] <= 'F') vals[i] = Rational(1);
    }
    for (const auto& p : sys.polys) {
        QPoly q = p.specialize<Rational>(vals);
        if (!q.is_zero()) r.polys.push_back(primitive_part(q.rebase(vars)));
    }
    return r;
}

}  // namespace s3e::test
