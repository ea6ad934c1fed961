#include "s3e/solver/solver.hpp"

#include <algorithm>
#include <set>

namespace s3e {

namespace {

// Local ring: the current variable v, the family parameter t and the root s.
constexpr std::size_t kV = 0;
constexpr std::size_t kT = 1;
constexpr std::size_t kS = 2;

const VarTablePtr& local_vars() {
    static const VarTablePtr vars = make_vars({"v", "t", "s"});
    return vars;
}

RPoly lconst(const RadicalScalar& c) { return RPoly::constant(local_vars(), c); }
RPoly lvar(std::size_t i) { return RPoly::variable(local_vars(), i); }

bool free_of(const RPoly& p, std::size_t var) { return !p.involves(var); }

struct Branch {
    std::vector<std::optional<RPoly>> values;  // over local_vars, never involving v
    std::optional<std::size_t> param;
    std::optional<RPoly> s_square;  // s^2 == s_square(t)
};

RPoly reduce_s(const RPoly& p, const Branch& b) {
    if (!b.s_square || p.degree_in(kS) < 2) return p;
    RPoly out(local_vars());
    for (const auto& [m, c] : p.terms()) {
        Monomial rest = m;
        unsigned e = m.exp[kS];
        rest.exp[kS] = static_cast<std::uint8_t>(e % 2);
        rest.deg -= e - e % 2;
        RPoly term = RPoly::from_terms(local_vars(), MonomialOrder::lex, {{rest, c}});
        out += term * b.s_square->pow(e / 2);
    }
    return out;
}

// g with every variable after `level` replaced by its branch value; the level variable becomes v.
RPoly specialise(const QPoly& g, std::size_t level, const Branch& b) {
    std::vector<std::vector<RPoly>> powers(g.nvars());
    RPoly sum(local_vars());
    for (const auto& [m, c] : g.terms()) {
        RPoly term = lconst(RadicalScalar(c));
        for (std::size_t j = level + 1; j < g.nvars(); ++j) {
            if (!m.exp[j]) continue;
            auto& cache = powers[j];
            if (cache.empty()) cache.push_back(*b.values[j]);
            while (cache.size() < m.exp[j]) cache.push_back(reduce_s(cache.back() * *b.values[j], b));
            term *= cache[m.exp[j] - 1];
        }
        if (m.exp[level]) term *= lvar(kV).pow(m.exp[level]);
        sum += term;
    }
    return reduce_s(sum, b);
}

// Coefficients of p in v, lowest first.
std::vector<RPoly> v_coeffs(const RPoly& p) {
    std::vector<RPoly> out(p.degree_in(kV) + 1, RPoly(local_vars()));
    for (const auto& [m, c] : p.terms()) {
        Monomial rest = m;
        rest.deg -= rest.exp[kV];
        rest.exp[kV] = 0;
        out[m.exp[kV]] += RPoly::from_terms(local_vars(), MonomialOrder::lex, {{rest, c}});
    }
    return out;
}

RadicalScalar const_value(const RPoly& p) {
    return p.is_zero() ? RadicalScalar() : p.leading_coeff();
}

RUPoly to_field_upoly(const RPoly& p) {
    std::vector<RadicalScalar> c(p.degree_in(kV) + 1);
    for (const auto& [m, k] : p.terms()) c[m.exp[kV]] += k;
    return RUPoly(std::move(c));
}

// Square root of a polynomial in t that is a perfect square over the field.
std::optional<RPoly> poly_sqrt_t(const RPoly& d) {
    if (!free_of(d, kS) || !free_of(d, kV)) return std::nullopt;
    if (d.is_zero()) return d;
    unsigned n = d.degree_in(kT);
    if (n % 2) return std::nullopt;
    std::vector<RadicalScalar> c(n + 1);
    for (const auto& [m, k] : d.terms()) c[m.exp[kT]] += k;
    unsigned h = n / 2;
    auto r = radical_sqrt(c[n]);
    if (!r) return std::nullopt;
    // q = sum q_i t^i, q_h = r; solve top-down for the remaining coefficients
    std::vector<RadicalScalar> q(h + 1);
    q[h] = *r;
    RadicalScalar two_r_inv = (RadicalScalar(2) * *r).inverse();
    for (unsigned k = 1; k <= h; ++k) {
        RadicalScalar acc = c[n - k];
        for (unsigned i = 1; i < k; ++i) acc -= q[h - i] * q[h - k + i];
        q[h - k] = acc * two_r_inv;
    }
    RPoly out(local_vars());
    for (unsigned i = 0; i <= h; ++i) out += lconst(q[i]) * lvar(kT).pow(i);
    if (out * out != d) return std::nullopt;
    return out;
}

std::string value_text(const RPoly& p) {
    return to_string(p.rebase(param_vars()));
}

struct Ctx {
    const GroebnerBasis* basis;
    std::vector<std::vector<const QPoly*>> by_level;
    std::vector<bool> positive, family_ok;
    std::vector<std::optional<RadicalScalar>> fixed;
    BackSubstitution* out;
    std::vector<Branch> finished;
};

UnresolvedBranch unresolved(const Ctx& ctx, const Branch& b, std::size_t level, std::string reason) {
    UnresolvedBranch u;
    u.var = ctx.basis->vars->name(level);
    u.reason = std::move(reason);
    for (std::size_t j = level + 1; j < b.values.size(); ++j)
        u.partial.emplace_back(ctx.basis->vars->name(j), value_text(*b.values[j]));
    return u;
}

void descend(Ctx& ctx, Branch b, std::size_t level);

// Accepts value for the level variable, applies the filters and continues.
void assign(Ctx& ctx, Branch b, std::size_t level, RPoly value, const std::vector<RPoly>& eqs) {
    value = reduce_s(value, b);
    std::vector<std::optional<RPoly>> sub(3);
    sub[kV] = value;
    for (const auto& e : eqs) {
        if (!reduce_s(e.substitute(std::span<const std::optional<RPoly>>(sub)), b).is_zero()) return;
    }
    if (ctx.positive[level]) {
        if (!value.is_constant()) {
            ctx.out->unresolved.push_back(unresolved(ctx, b, level, "sign of a non-constant value"));
            return;
        }
        if (const_value(value).sign() <= 0) {
            ++ctx.out->discarded_sign;
            return;
        }
    }
    if (ctx.fixed[level]) {
        if (!value.is_constant() || const_value(value) != *ctx.fixed[level]) {
            ++ctx.out->discarded_filter;
            return;
        }
    }
    b.values[level] = std::move(value);
    if (level == 0)
        ctx.finished.push_back(std::move(b));
    else
        descend(ctx, std::move(b), level - 1);
}

void descend(Ctx& ctx, Branch b, std::size_t level) {
    std::vector<RPoly> eqs;
    for (const QPoly* g : ctx.by_level[level]) {
        RPoly e = specialise(*g, level, b);
        if (!e.is_zero()) eqs.push_back(std::move(e));
    }
    if (eqs.empty()) {
        if (b.param || !ctx.family_ok[level])
            throw SolverError("ambiguous specialization at " + ctx.basis->vars->name(level));
        b.param = level;
        b.values[level] = lvar(kT);
        if (level == 0)
            ctx.finished.push_back(std::move(b));
        else
            descend(ctx, std::move(b), level - 1);
        return;
    }
    std::vector<RPoly> in_v;
    for (const auto& e : eqs) {
        if (e.involves(kV)) {
            in_v.push_back(e);
        } else {
            return;  // a nonzero condition on the parameter alone: no solution on this branch
        }
    }
    // Constant-coefficient equations: field roots of their gcd.
    std::optional<RUPoly> common;
    for (const auto& e : in_v) {
        if (!free_of(e, kT) || !free_of(e, kS)) continue;
        RUPoly u = to_field_upoly(e);
        common = common ? gcd(*common, u) : u.monic();
    }
    if (common) {
        if (common->degree() <= 0) return;
        FieldRoots roots = real_roots_in_field(*common);
        for (const auto& r : roots.unrecognized)
            ctx.out->unresolved.push_back(unresolved(ctx, b, level, "root outside the field in " + r.to_string()));
        for (const auto& r : roots.exact) assign(ctx, b, level, lconst(r), in_v);
        return;
    }
    if (!b.param) throw SolverError("parametric coefficients without a parameter");
    auto best = std::min_element(in_v.begin(), in_v.end(),
                                 [](const RPoly& x, const RPoly& y) { return x.degree_in(kV) < y.degree_in(kV); });
    auto c = v_coeffs(*best);
    if (c.size() == 2) {
        if (!c[1].is_constant()) {
            ctx.out->unresolved.push_back(unresolved(ctx, b, level, "non-constant leading coefficient"));
            return;
        }
        assign(ctx, b, level, c[0] * (-const_value(c[1])).inverse(), in_v);
        return;
    }
    if (c.size() == 3 && c[2].is_constant()) {
        RadicalScalar a = const_value(c[2]);
        RPoly half_b = c[1] * (RadicalScalar(2) * a).inverse();
        RPoly d = reduce_s(half_b * half_b - c[0] * a.inverse(), b);
        if (auto r = poly_sqrt_t(d)) {
            assign(ctx, b, level, -half_b + *r, in_v);
            if (!r->is_zero()) assign(ctx, b, level, -half_b - *r, in_v);
            return;
        }
        if (b.s_square) {
            // d = k^2 * s^2 for a constant k
            const RPoly& s2 = *b.s_square;
            RadicalScalar k2 = const_value(d.is_zero() ? d : lconst(d.leading_coeff())) *
                               s2.leading_coeff().inverse();
            if (d == s2 * k2) {
                if (auto k = radical_sqrt(k2)) {
                    assign(ctx, b, level, -half_b + lvar(kS) * *k, in_v);
                    assign(ctx, b, level, -half_b - lvar(kS) * *k, in_v);
                    return;
                }
            }
            ctx.out->unresolved.push_back(unresolved(ctx, b, level, "second square root"));
            return;
        }
        if (!free_of(d, kS)) {
            ctx.out->unresolved.push_back(unresolved(ctx, b, level, "discriminant involves s"));
            return;
        }
        // New relation s^2 = d(t); s carries both signs.
        b.s_square = d;
        assign(ctx, std::move(b), level, -half_b + lvar(kS), in_v);
        return;
    }
    ctx.out->unresolved.push_back(unresolved(ctx, b, level, "degree " + std::to_string(c.size() - 1) +
                                                                " in a parametric level"));
}

std::optional<std::pair<RadicalScalar, RadicalScalar>> domain_of(const RPoly& s2) {
    // s^2 = d(t) >= 0; only bounded intervals between two real roots are reported
    if (s2.degree_in(kT) != 2) return std::nullopt;
    std::vector<RadicalScalar> c(3);
    for (const auto& [m, k] : s2.terms()) c[m.exp[kT]] += k;
    if (c[2].sign() >= 0) return std::nullopt;
    FieldRoots r = real_roots_in_field(RUPoly(c));
    if (r.exact.size() != 2) return std::nullopt;
    return std::pair{r.exact[0], r.exact[1]};
}

template <class T>
std::vector<T> permute_to(const VarTablePtr& from, const VarTablePtr& to, const std::vector<T>& values) {
    std::vector<T> out;
    out.reserve(to->size());
    for (std::size_t i = 0; i < to->size(); ++i) out.push_back(values.at(from->index(to->name(i))));
    return out;
}

}  // namespace

BackSubstitution back_substitute(const GroebnerBasis& basis, const SolveOptions& options) {
    if (basis.order != MonomialOrder::lex) throw SolverError("back substitution needs a lex basis");
    BackSubstitution out;
    const std::size_t n = basis.vars->size();
    for (const auto& g : basis.polys)
        if (g.is_constant()) return out;  // {1}: no solutions
    Ctx ctx;
    ctx.basis = &basis;
    ctx.out = &out;
    ctx.by_level.resize(n);
    for (const auto& g : basis.polys) {
        for (std::size_t i = 0; i < n; ++i) {
            if (g.involves(i)) {
                ctx.by_level[i].push_back(&g);
                break;
            }
        }
    }
    ctx.positive.assign(n, false);
    ctx.family_ok.assign(n, false);
    ctx.fixed.assign(n, std::nullopt);
    for (const auto& name : options.positive)
        if (basis.vars->find(name)) ctx.positive[basis.vars->index(name)] = true;
    for (const auto& name : options.family_vars)
        if (basis.vars->find(name)) ctx.family_ok[basis.vars->index(name)] = true;
    for (const auto& [name, v] : options.fixed)
        if (basis.vars->find(name)) ctx.fixed[basis.vars->index(name)] = v;

    Branch root;
    root.values.resize(n);
    if (n > 0) descend(ctx, std::move(root), n - 1);

    for (auto& b : ctx.finished) {
        if (!b.param) {
            SolutionPoint p;
            p.vars = basis.vars;
            for (auto& v : b.values) p.values.push_back(const_value(*v));
            out.points.push_back(std::move(p));
            continue;
        }
        SolutionFamily f;
        f.vars = basis.vars;
        f.parameter_var = basis.vars->name(*b.param);
        if (!b.s_square) {
            // no root was needed: s stands for itself with s^2 = 1 and never appears
            b.s_square = lconst(RadicalScalar(1));
        }
        RPoly rel = lvar(kS).pow(2) - *b.s_square;
        f.relation = std::make_shared<const SqrtRelation>(rel.rebase(param_vars()));
        if (auto d = domain_of(*b.s_square)) {
            f.domain_lo = d->first;
            f.domain_hi = d->second;
        }
        for (auto& v : b.values) f.values.emplace_back(f.relation, v->rebase(param_vars()));
        out.families.push_back(std::move(f));
    }
    std::sort(out.points.begin(), out.points.end(), [](const SolutionPoint& a, const SolutionPoint& b) {
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            double x = a.values[i].to_double(), y = b.values[i].to_double();
            if (x != y) return x < y;
        }
        return false;
    });
    auto key = [](const SolutionFamily& f) {
        std::string k = f.relation->to_string();
        for (const auto& v : f.values) k += "|" + v.to_string();
        return k;
    };
    std::sort(out.families.begin(), out.families.end(),
              [&](const SolutionFamily& a, const SolutionFamily& b) { return key(a) < key(b); });
    return out;
}

SolutionPoint rebase(const SolutionPoint& p, const VarTablePtr& vars) {
    SolutionPoint r = p;
    r.vars = vars;
    r.values = permute_to(p.vars, vars, p.values);
    return r;
}

SolutionFamily rebase(const SolutionFamily& f, const VarTablePtr& vars) {
    SolutionFamily r = f;
    r.vars = vars;
    r.values = permute_to(f.vars, vars, f.values);
    return r;
}

std::vector<RadicalScalar> point_residuals(const SolutionPoint& p, const PolySystem& system) {
    SolutionPoint q = rebase(p, system.vars);
    std::vector<RadicalScalar> out;
    for (const auto& g : system.polys)
        out.push_back(g.evaluate<RadicalScalar>(std::span<const RadicalScalar>(q.values), RadicalScalar()));
    return out;
}

FamilyReport verify_family(const SolutionFamily& family, const PolySystem& system) {
    SolutionFamily f = rebase(family, system.vars);
    FamilyReport rep;
    ParamRingElem zero = ParamRingElem::constant(f.relation, RadicalScalar());
    for (std::size_t i = 0; i < system.polys.size(); ++i) {
        ParamRingElem r = param_reduce(system.polys[i].evaluate<ParamRingElem>(std::span<const ParamRingElem>(f.values), zero));
        rep.residuals.push_back(r.to_string());
        if (!r.is_zero()) {
            rep.ok = false;
            rep.failing.push_back(i);
        }
    }
    return rep;
}

}  // namespace s3e
