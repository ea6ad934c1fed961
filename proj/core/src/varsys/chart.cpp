#include "s3e/varsys/chart.hpp"

#include "s3e/poly/univariate.hpp"

#include <algorithm>
#include <cmath>

namespace s3e {

namespace {

constexpr std::size_t kDiag = 6;

// sqrt factors of each original parameter in terms of the transformed diagonals,
// and the transformed off-diagonal it carries (if any).
struct Pullback {
    std::size_t s1, s2;
    std::optional<std::size_t> scale;
};

const std::array<Pullback, 15>& pullbacks() {
    enum { A, B, C, D, E, F, X, Y, Z, U, V, W, AA, BB, CC };
    static const std::array<Pullback, 15> table = {{
        {B, C, {}}, {A, C, {}}, {A, B, {}}, {E, F, {}}, {D, F, {}}, {D, E, {}},
        {B, C, X},  {A, C, Y},  {A, B, Z},  {A, C, U},  {A, B, V},  {A, B, W},
        {B, C, AA}, {B, C, BB}, {A, C, CC},
    }};
    return table;
}

// Index of the diagonal original parameter whose value multiplies an off-diagonal
// (x = X*a, u = U*b, v = V*c, ...).
std::size_t off_diagonal_divisor(std::size_t param) {
    const Pullback& p = pullbacks()[param];
    // s1,s2 = (B,C) -> a, (A,C) -> b, (A,B) -> c
    if (p.s1 == 1 && p.s2 == 2) return 0;
    if (p.s1 == 0 && p.s2 == 2) return 1;
    return 2;
}

VarTablePtr names_table(const std::vector<std::string>& names) { return make_vars(names); }

VarTablePtr big_table() {
    static const VarTablePtr t = [] {
        std::vector<std::string> names(original_names().begin(), original_names().end());
        names.insert(names.end(), transformed_names().begin(), transformed_names().end());
        names.push_back("MU");
        names.push_back("mu");
        return make_vars(names);
    }();
    return t;
}

MetricChart make_chart(ChartCase kind, std::vector<std::size_t> off, std::vector<std::string> order) {
    MetricChart c;
    c.kind = kind;
    for (std::size_t i = 0; i < kDiag; ++i) c.free_params.push_back(i);
    for (std::size_t i : off) c.free_params.push_back(i);
    for (std::size_t i = kDiag; i < 15; ++i)
        if (std::find(off.begin(), off.end(), i) == off.end()) c.zeroed_params.push_back(i);
    c.free_vars = names_table(order);
    c.system_vars = c.free_vars;
    return c;
}

QPoly diagonal_product(const VarTablePtr& vars) {
    QPoly p = qpoly_const(vars, Rational(1));
    for (std::size_t i = 0; i < kDiag; ++i) p *= qpoly_var(vars, transformed_names()[i]);
    return p;
}

void check_degree(const QPoly& p) {
    if (p.total_degree() > 6) throw std::logic_error("generated equation exceeds degree 6");
}

// Sgen restricted to the chart, expressed over the big table.
LaurentPoly chart_scalar_curvature_original(const MetricChart& chart) {
    const VarTablePtr t = big_table();
    LaurentPoly s = scalar_curvature_laurent(t);
    std::vector<std::optional<LaurentPoly>> values(t->size());
    for (std::size_t i : chart.zeroed_params) values[i] = LaurentPoly(t);
    return s.substitute(values, t);
}

}  // namespace

const std::array<std::string, 15>& original_names() {
    static const std::array<std::string, 15> n = {"a", "b", "c", "d", "e", "f", "x", "y",
                                                  "z", "u", "v", "w", "alpha", "beta", "gamma"};
    return n;
}

const std::array<std::string, 15>& transformed_names() {
    static const std::array<std::string, 15> n = {"A", "B", "C", "D", "E", "F", "X", "Y",
                                                  "Z", "U", "V", "W", "AA", "BB", "CC"};
    return n;
}

MetricChart MetricChart::general() {
    return make_chart(ChartCase::general, {6, 7, 8, 9, 10, 11, 12, 13, 14},
                      {"A", "B", "C", "D", "E", "F", "X", "Y", "Z", "U", "V", "W", "AA", "BB", "CC", "MU"});
}

MetricChart MetricChart::trace2() {
    MetricChart c = make_chart(ChartCase::trace2, {6, 12, 13}, {"A", "B", "C", "D", "E", "F", "X", "AA", "BB", "MU"});
    c.system_vars = names_table({"A", "B", "C", "D", "E", "F", "MU"});
    return c;
}

MetricChart MetricChart::z2xz2() {
    return make_chart(ChartCase::z2xz2, {6, 7, 8}, {"A", "B", "C", "D", "E", "F", "X", "Y", "Z", "MU"});
}

MetricChart MetricChart::z2() {
    return make_chart(ChartCase::z2, {6, 7, 8, 11, 14},
                      {"MU", "F", "E", "D", "C", "B", "A", "Z", "W", "CC", "Y", "X"});
}

MetricChart MetricChart::z2_mu_fixed(const RadicalScalar& mu0) {
    MetricChart c = z2();
    c.kind = ChartCase::z2_mu_fixed;
    c.mu0 = mu0;
    return c;
}

VarTablePtr MetricChart::z2_grevlex_vars() {
    return names_table({"MU", "D", "F", "E", "C", "B", "Z", "Y", "CC", "W", "A", "X"});
}

MetricChart MetricChart::from_case(std::string_view text) {
    if (text == "general") return general();
    if (text == "trace2") return trace2();
    if (text == "z2xz2") return z2xz2();
    if (text == "z2") return z2();
    constexpr std::string_view prefix = "z2-mu=";
    if (text.substr(0, prefix.size()) == prefix) return z2_mu_fixed(RadicalScalar::parse(text.substr(prefix.size())));
    throw ParseError("unknown case '" + std::string(text) + "'");
}

std::string MetricChart::label() const {
    switch (kind) {
        case ChartCase::general: return "general";
        case ChartCase::trace2: return "trace2";
        case ChartCase::z2xz2: return "z2xz2";
        case ChartCase::z2: return "z2";
        case ChartCase::z2_mu_fixed: return "z2-mu=" + mu0->to_string();
    }
    return "?";
}

bool MetricChart::is_free(std::size_t param) const {
    return std::find(free_params.begin(), free_params.end(), param) != free_params.end();
}

std::array<double, 15> TransformSpec::forward(const std::array<double, 15>& o) const {
    std::array<double, 15> t{};
    t[0] = o[1] * o[2] / o[0];
    t[1] = o[0] * o[2] / o[1];
    t[2] = o[0] * o[1] / o[2];
    t[3] = o[4] * o[5] / o[3];
    t[4] = o[3] * o[5] / o[4];
    t[5] = o[3] * o[4] / o[5];
    for (std::size_t i = kDiag; i < 15; ++i)
        if (chart.is_free(i)) t[i] = o[i] / o[off_diagonal_divisor(i)];
    return t;
}

std::array<double, 15> TransformSpec::inverse(const std::array<double, 15>& t) const {
    std::array<double, 15> o{};
    for (std::size_t i = 0; i < kDiag; ++i) o[i] = std::sqrt(t[pullbacks()[i].s1] * t[pullbacks()[i].s2]);
    for (std::size_t i = kDiag; i < 15; ++i)
        if (chart.is_free(i)) o[i] = t[i] * o[off_diagonal_divisor(i)];
    return o;
}

std::size_t transform_divisor(std::size_t param) {
    if (param < kDiag || param >= 15) throw std::out_of_range("transform_divisor: not an off-diagonal parameter");
    return off_diagonal_divisor(param);
}

std::array<RadicalScalar, 15> TransformSpec::forward_exact(const std::array<RadicalScalar, 15>& o) const {
    std::array<RadicalScalar, 15> t{};
    t[0] = o[1] * o[2] / o[0];
    t[1] = o[0] * o[2] / o[1];
    t[2] = o[0] * o[1] / o[2];
    t[3] = o[4] * o[5] / o[3];
    t[4] = o[3] * o[5] / o[4];
    t[5] = o[3] * o[4] / o[5];
    for (std::size_t i = kDiag; i < 15; ++i)
        if (chart.is_free(i)) t[i] = o[i] / o[off_diagonal_divisor(i)];
    return t;
}

std::optional<std::array<RadicalScalar, 15>> TransformSpec::inverse_exact(const std::array<RadicalScalar, 15>& t) const {
    for (std::size_t i = 0; i < kDiag; ++i)
        if (t[i].sign() <= 0) return std::nullopt;
    std::array<RadicalScalar, 15> o{};
    for (std::size_t i = 0; i < kDiag; ++i) {
        auto r = radical_sqrt(t[pullbacks()[i].s1] * t[pullbacks()[i].s2]);
        if (!r) return std::nullopt;
        o[i] = *r;
    }
    for (std::size_t i = kDiag; i < 15; ++i)
        if (chart.is_free(i)) o[i] = t[i] * o[off_diagonal_divisor(i)];
    return o;
}

LaurentPoly scalar_curvature_laurent(const VarTablePtr& vars) {
    auto v = [&](const char* n, int p = 1) { return LaurentPoly::variable(vars, n, p); };
    auto sq = [](const LaurentPoly& p) { return p * p; };
    const LaurentPoly a = v("a"), b = v("b"), c = v("c"), d = v("d"), e = v("e"), f = v("f");
    const LaurentPoly x = v("x"), y = v("y"), z = v("z"), u = v("u"), vv = v("v"), w = v("w");
    const LaurentPoly al = v("alpha"), be = v("beta"), ga = v("gamma");
    const LaurentPoly ai2 = v("a", -2), bi2 = v("b", -2), ci2 = v("c", -2);
    const LaurentPoly di2 = v("d", -2), ei2 = v("e", -2), fi2 = v("f", -2);
    const LaurentPoly a2 = sq(a), b2 = sq(b), c2 = sq(c), d2 = sq(d), e2 = sq(e), f2 = sq(f);
    const LaurentPoly def = d * e * v("f", -1), dfe = d * f * v("e", -1), efd = e * f * v("d", -1);

    LaurentPoly quad = a2 + b2 + c2 + d2 + e2 + f2;
    for (const LaurentPoly* p : {&x, &y, &z, &u, &vv, &w, &al, &be, &ga}) quad += sq(*p);

    LaurentPoly br = a2 * b2 * ci2 + b2 * c2 * ai2 + c2 * a2 * bi2 + d2 * e2 * fi2 + e2 * f2 * di2 + f2 * d2 * ei2;
    br += (a2 * ci2 + c2 * ai2) * (sq(u) + sq(y) + sq(ga));
    br += (a2 * bi2 + b2 * ai2) * (sq(vv) + sq(w) + sq(z));
    br += (b2 * ci2 + c2 * bi2) * (sq(x) + sq(al) + sq(be));
    br += ai2 * (sq(u * w - vv * y - def * be) + sq(vv * ga - u * z - dfe * al) + sq(y * z - w * ga - efd * x));
    br += bi2 * (sq(vv * al - x * w - def * ga) + sq(x * z - vv * be - dfe * y) + sq(w * be - z * al - efd * u));
    br += ci2 * (sq(x * y - u * al - def * z) + sq(u * be - x * ga - dfe * w) + sq(al * ga - y * be - efd * vv));
    return quad - br * Rational(1, 2);
}

QPoly build_scalar_curvature(const MetricChart& chart) {
    const VarTablePtr t = big_table();
    const LaurentPoly s = chart_scalar_curvature_original(chart);
    // Substitute each original parameter by its pullback, writing the transformed diagonal
    // symbols for their square roots; every exponent of those must then be even.
    std::vector<std::optional<LaurentPoly>> values(t->size());
    for (std::size_t i = 0; i < 15; ++i) {
        if (!chart.is_free(i)) continue;
        const Pullback& p = pullbacks()[i];
        LaurentPoly m = LaurentPoly::variable(t, transformed_names()[p.s1]) *
                        LaurentPoly::variable(t, transformed_names()[p.s2]);
        if (p.scale) m = m * LaurentPoly::variable(t, transformed_names()[*p.scale]);
        values[i] = m;
    }
    LaurentPoly st = s.substitute(values, t);
    std::vector<std::size_t> diag;
    for (std::size_t i = 0; i < kDiag; ++i) diag.push_back(t->index(transformed_names()[i]));
    return st.halve_exponents(diag).to_poly(chart.free_vars);
}

PolySystem build_variational_system(const MetricChart& chart) {
    const VarTablePtr& fv = chart.free_vars;
    QPoly s = build_scalar_curvature(chart);
    const QPoly prod = diagonal_product(fv);
    const QPoly mu = qpoly_var(fv, "MU");

    std::vector<QPoly> eqs{prod - qpoly_const(fv, Rational(1))};
    for (std::size_t i : chart.free_params) {
        const std::string& q = transformed_names()[i];
        if (i < kDiag)
            eqs.push_back(s.diff(q) + mu * prod.diff(q));
        else if (chart.kind != ChartCase::trace2)
            eqs.push_back(s.diff(q));
    }

    PolySystem sys;
    sys.vars = chart.system_vars;
    sys.order = MonomialOrder::lex;
    sys.label = chart.label();
    if (chart.kind == ChartCase::trace2) {
        // The off-diagonal gradients are X, AA, BB times a definite factor, so they force
        // X = AA = BB = 0; the remaining equations are restricted to that locus.
        std::vector<std::optional<QPoly>> zero(fv->size());
        for (const char* n : {"X", "AA", "BB"}) zero[fv->index(n)] = QPoly(fv);
        for (auto& e : eqs) e = e.substitute(zero).rebase(chart.system_vars);
    }
    for (auto& e : eqs) {
        e = primitive_part(e);
        check_degree(e);
    }
    if (chart.kind == ChartCase::z2_mu_fixed) {
        const RadicalScalar& m0 = *chart.mu0;
        QPoly fix = m0.is_rational() ? mu - qpoly_const(fv, m0.rational_part())
                                     : from_univariate(minimal_polynomial(m0), fv, fv->index("MU"));
        eqs.push_back(primitive_part(fix));
        sys.note = m0.is_rational() ? "multiplier fixed to " + m0.to_string()
                                    : "multiplier fixed by the minimal polynomial of " + m0.to_string();
    }
    sys.polys = std::move(eqs);
    return sys;
}

namespace {

struct Trace2Original {
    LaurentPoly s;
    std::array<LaurentPoly, 6> eqs;  // q*dS/dq + mu*V, uncleared
    LaurentPoly volume;              // V = 1/(abcdef)
};

Trace2Original trace2_original() {
    const VarTablePtr t = big_table();
    MetricChart chart = MetricChart::trace2();
    // x, alpha, beta vanish at every critical point, as in the transformed path.
    for (std::size_t i : {6, 12, 13}) chart.zeroed_params.push_back(i);
    Trace2Original r;
    r.s = chart_scalar_curvature_original(chart);
    LaurentPoly p = LaurentPoly::constant(t, Rational(1));
    for (std::size_t i = 0; i < kDiag; ++i) p = p * LaurentPoly::variable(t, original_names()[i]);
    r.volume = p.inverse();
    const LaurentPoly mu = LaurentPoly::variable(t, "mu");
    for (std::size_t i = 0; i < kDiag; ++i) {
        const std::string& q = original_names()[i];
        r.eqs[i] = LaurentPoly::variable(t, q) * r.s.diff(q) + mu * r.volume;
    }
    return r;
}

}  // namespace

PolySystem build_trace2_original_system() {
    const VarTablePtr vars = names_table({"a", "b", "c", "d", "e", "f", "mu"});
    Trace2Original o = trace2_original();
    PolySystem sys;
    sys.vars = vars;
    sys.label = "trace2";
    sys.note = "original coordinates";
    QPoly prod = qpoly_const(vars, Rational(1));
    for (std::size_t i = 0; i < kDiag; ++i) prod *= qpoly_var(vars, original_names()[i]);
    sys.polys.push_back(prod - qpoly_const(vars, Rational(1)));
    for (const auto& e : o.eqs) {
        LaurentPoly::Exps shift = e.min_exponents();
        for (auto& v : shift) v = static_cast<std::int16_t>(-v);
        sys.polys.push_back(primitive_part(e.shifted(shift).to_poly(vars)));
    }
    return sys;
}

ConsistencyReport check_trace2_consistency() {
    const VarTablePtr t = big_table();
    const MetricChart chart = MetricChart::trace2();
    Trace2Original o = trace2_original();

    // Pullback A -> bc/a, ..., MU -> mu, with X = AA = BB = 0.
    std::vector<std::optional<LaurentPoly>> pull(t->size());
    const LaurentPoly one = LaurentPoly::constant(t, Rational(1));
    for (std::size_t i = 0; i < kDiag; ++i) {
        std::size_t base = i < 3 ? 0 : 3;
        LaurentPoly v = one;
        for (std::size_t j = base; j < base + 3; ++j)
            v = v * LaurentPoly::variable(t, original_names()[j], j == i ? -1 : 1);
        pull[t->index(transformed_names()[i])] = v;
    }
    for (const char* n : {"X", "AA", "BB"}) pull[t->index(n)] = LaurentPoly(t);
    pull[t->index("MU")] = LaurentPoly::variable(t, "mu");

    ConsistencyReport rep;
    const QPoly s_t = build_scalar_curvature(chart);
    if (LaurentPoly::from_poly(s_t, t).substitute(pull, t) != o.s) {
        rep.ok = false;
        rep.failures.push_back("S: transformed expression does not pull back to the original one");
    }

    const QPoly prod = diagonal_product(chart.free_vars);
    const QPoly mu = qpoly_var(chart.free_vars, "MU");
    const LaurentPoly p = o.volume.inverse();
    const LaurentPoly tail = LaurentPoly::variable(t, "mu") * (p - o.volume);
    for (std::size_t i = 0; i < kDiag; ++i) {
        const std::string& q = transformed_names()[i];
        QPoly eq = qpoly_var(chart.free_vars, q) * (s_t.diff(q) + mu * prod.diff(q));
        LaurentPoly lhs = LaurentPoly::from_poly(eq, t).substitute(pull, t);
        // the two original parameters whose square-root factors contain Q
        std::vector<std::size_t> deps;
        for (std::size_t j = 0; j < kDiag; ++j)
            if (pullbacks()[j].s1 == i || pullbacks()[j].s2 == i) deps.push_back(j);
        LaurentPoly rhs = (o.eqs[deps[0]] + o.eqs[deps[1]]) * Rational(1, 2) + tail;
        if (lhs != rhs) {
            rep.ok = false;
            rep.failures.push_back("equation for " + q + " disagrees with the original coordinates");
        }
    }
    return rep;
}

FixtureMatch match_against_fixture(const PolySystem& generated, const PolySystem& fixture) {
    FixtureMatch m;
    auto sorted_names = [](const VarTablePtr& v) {
        auto n = v->names();
        std::sort(n.begin(), n.end());
        return n;
    };
    if (sorted_names(generated.vars) != sorted_names(fixture.vars)) {
        m.message = "variable sets differ";
        for (std::size_t i = 0; i < generated.size(); ++i) m.unmatched_generated.push_back(i);
        for (std::size_t j = 0; j < fixture.size(); ++j) m.unmatched_fixture.push_back(j);
        return m;
    }
    std::vector<QPoly> gen, fix;
    for (const auto& p : generated.polys) gen.push_back(primitive_part(p.with_order(MonomialOrder::lex)));
    for (const auto& p : fixture.polys)
        fix.push_back(primitive_part(p.rebase(generated.vars).with_order(MonomialOrder::lex)));
    std::vector<bool> used(fix.size(), false);
    for (std::size_t i = 0; i < gen.size(); ++i) {
        bool found = false;
        for (std::size_t j = 0; j < fix.size() && !found; ++j) {
            if (used[j] || !(gen[i] == fix[j])) continue;
            used[j] = true;
            m.pairs.emplace_back(i, j);
            found = true;
        }
        if (!found) m.unmatched_generated.push_back(i);
    }
    for (std::size_t j = 0; j < fix.size(); ++j)
        if (!used[j]) m.unmatched_fixture.push_back(j);
    m.ok = m.unmatched_generated.empty() && m.unmatched_fixture.empty();
    if (m.ok) {
        m.message = "all " + std::to_string(m.pairs.size()) + " polynomials match";
    } else {
        m.message = std::to_string(m.unmatched_generated.size()) + " generated and " +
                    std::to_string(m.unmatched_fixture.size()) + " fixture polynomials unmatched";
        for (std::size_t j : m.unmatched_fixture) m.message += "\n  fixture[" + std::to_string(j) + "]: " + to_string(fix[j]);
        for (std::size_t i : m.unmatched_generated) m.message += "\n  generated[" + std::to_string(i) + "]: " + to_string(gen[i]);
    }
    return m;
}

}  // namespace s3e
