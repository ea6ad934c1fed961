#include "s3e/varsys/laurent.hpp"

#include <cmath>

namespace s3e {

namespace {

void check_table(const VarTablePtr& vars) {
    if (!vars) throw PolyError("Laurent polynomial without variable table");
    if (vars->size() > LaurentPoly::kMaxVars) throw PolyError("too many variables for a Laurent polynomial");
}

}  // namespace

LaurentPoly::LaurentPoly(VarTablePtr vars) : vars_(std::move(vars)) { check_table(vars_); }

LaurentPoly LaurentPoly::constant(VarTablePtr vars, const Rational& c) {
    return monomial(std::move(vars), Exps{}, c);
}

LaurentPoly LaurentPoly::variable(VarTablePtr vars, std::string_view name, int power) {
    Exps e{};
    e[vars->index(name)] = static_cast<std::int16_t>(power);
    return monomial(std::move(vars), e, Rational(1));
}

LaurentPoly LaurentPoly::monomial(VarTablePtr vars, const Exps& e, const Rational& c) {
    LaurentPoly p(std::move(vars));
    if (!s3e::is_zero(c)) p.terms_.emplace(e, c);
    return p;
}

LaurentPoly LaurentPoly::from_poly(const QPoly& q, VarTablePtr vars) {
    LaurentPoly p(std::move(vars));
    std::vector<std::size_t> map(q.nvars());
    for (std::size_t i = 0; i < q.nvars(); ++i) map[i] = p.vars_->index(q.vars()->name(i));
    for (const auto& [m, c] : q.terms()) {
        Exps e{};
        for (std::size_t i = 0; i < q.nvars(); ++i) e[map[i]] = static_cast<std::int16_t>(m.exp[i]);
        p.terms_.emplace(e, c);
    }
    return p;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    if (!vars_) vars_ = o.vars_;
    if (o.vars_ && !same_vars(vars_, o.vars_)) throw PolyError("Laurent variable tables differ");
    for (const auto& [e, c] : o.terms_) {
        auto [it, fresh] = terms_.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (s3e::is_zero(it->second)) terms_.erase(it);
        }
    }
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (!same_vars(a.vars_, b.vars_)) throw PolyError("Laurent variable tables differ");
    LaurentPoly r(a.vars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            LaurentPoly::Exps e;
            for (std::size_t i = 0; i < LaurentPoly::kMaxVars; ++i) e[i] = static_cast<std::int16_t>(ea[i] + eb[i]);
            Rational c = ca * cb;
            auto [it, fresh] = r.terms_.emplace(e, c);
            if (!fresh) {
                it->second += c;
                if (s3e::is_zero(it->second)) r.terms_.erase(it);
            }
        }
    return r;
}

LaurentPoly operator*(LaurentPoly a, const Rational& c) {
    if (s3e::is_zero(c)) {
        a.terms_.clear();
        return a;
    }
    for (auto& [e, v] : a.terms_) v *= c;
    return a;
}

LaurentPoly LaurentPoly::pow(unsigned e) const {
    LaurentPoly r = constant(vars_, Rational(1));
    LaurentPoly b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

LaurentPoly LaurentPoly::inverse() const {
    if (terms_.size() != 1) throw PolyError("only single-term Laurent polynomials are invertible");
    const auto& [e, c] = *terms_.begin();
    Exps ne;
    for (std::size_t i = 0; i < kMaxVars; ++i) ne[i] = static_cast<std::int16_t>(-e[i]);
    return monomial(vars_, ne, Rational(1 / c));
}

LaurentPoly LaurentPoly::diff(std::size_t var) const {
    LaurentPoly r(vars_);
    for (const auto& [e, c] : terms_) {
        if (!e[var]) continue;
        Exps ne = e;
        ne[var] = static_cast<std::int16_t>(ne[var] - 1);
        r.terms_.emplace(ne, c * e[var]);
    }
    return r;
}

LaurentPoly LaurentPoly::diff(std::string_view name) const { return diff(vars_->index(name)); }

LaurentPoly LaurentPoly::substitute(const std::vector<std::optional<LaurentPoly>>& values, VarTablePtr target) const {
    if (values.size() != vars_->size()) throw PolyError("Laurent substitute: assignment size mismatch");
    const std::size_t n = vars_->size();
    std::vector<std::optional<LaurentPoly>> kept(n);
    for (std::size_t i = 0; i < n; ++i)
        if (!values[i]) {
            if (target->find(vars_->name(i))) kept[i] = variable(target, vars_->name(i));
        } else if (!same_vars(values[i]->vars(), target)) {
            throw PolyError("Laurent substitute: value on a different table");
        }
    std::vector<std::optional<LaurentPoly>> inverses(n);
    LaurentPoly sum(target);
    for (const auto& [e, c] : terms_) {
        LaurentPoly term = constant(target, c);
        for (std::size_t i = 0; i < n; ++i) {
            if (!e[i]) continue;
            const LaurentPoly* base = values[i] ? &*values[i] : (kept[i] ? &*kept[i] : nullptr);
            if (!base) throw PolyError("Laurent substitute: variable " + vars_->name(i) + " missing from target");
            if (e[i] > 0) {
                term = term * base->pow(static_cast<unsigned>(e[i]));
            } else {
                if (!inverses[i]) inverses[i] = base->inverse();
                term = term * inverses[i]->pow(static_cast<unsigned>(-e[i]));
            }
        }
        sum += term;
    }
    return sum;
}

LaurentPoly::Exps LaurentPoly::min_exponents() const {
    Exps m{};
    for (const auto& [e, c] : terms_)
        for (std::size_t i = 0; i < kMaxVars; ++i) m[i] = std::min(m[i], e[i]);
    return m;
}

LaurentPoly LaurentPoly::shifted(const Exps& s) const {
    LaurentPoly r(vars_);
    for (const auto& [e, c] : terms_) {
        Exps ne;
        for (std::size_t i = 0; i < kMaxVars; ++i) ne[i] = static_cast<std::int16_t>(e[i] + s[i]);
        r.terms_.emplace(ne, c);
    }
    return r;
}

LaurentPoly LaurentPoly::halve_exponents(std::span<const std::size_t> idx) const {
    LaurentPoly r(vars_);
    for (const auto& [e, c] : terms_) {
        Exps ne = e;
        for (std::size_t i : idx) {
            if (e[i] % 2) throw PolyError("odd exponent of " + vars_->name(i) + " where an even one was expected");
            ne[i] = static_cast<std::int16_t>(e[i] / 2);
        }
        r.terms_.emplace(ne, c);
    }
    return r;
}

QPoly LaurentPoly::to_poly(const VarTablePtr& target, MonomialOrder order) const {
    std::vector<QPoly::Term> out;
    std::vector<std::optional<std::size_t>> map(vars_->size());
    for (std::size_t i = 0; i < vars_->size(); ++i) map[i] = target->find(vars_->name(i));
    for (const auto& [e, c] : terms_) {
        Monomial m;
        for (std::size_t i = 0; i < vars_->size(); ++i) {
            if (!e[i]) continue;
            if (e[i] < 0) throw PolyError("negative exponent of " + vars_->name(i) + " in polynomial conversion");
            if (!map[i]) throw PolyError("variable " + vars_->name(i) + " not in target table");
            m.exp[*map[i]] = static_cast<std::uint16_t>(e[i]);
            m.deg += static_cast<std::uint32_t>(e[i]);
        }
        out.emplace_back(m, c);
    }
    return QPoly::from_terms(target, order, std::move(out));
}

double LaurentPoly::evaluate(std::span<const double> values) const {
    double s = 0;
    for (const auto& [e, c] : terms_) {
        double t = c.get_d();
        for (std::size_t i = 0; i < vars_->size(); ++i)
            if (e[i]) t *= std::pow(values[i], e[i]);
        s += t;
    }
    return s;
}

}  // namespace s3e
