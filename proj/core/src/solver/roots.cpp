#include "s3e/solver/roots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace s3e {

namespace {

int sgn_at(const QUPoly& p, const Rational& x) { return sgn(p.evaluate(x)); }

std::vector<QUPoly> sturm_chain(const QUPoly& p) {
    std::vector<QUPoly> chain{p, p.derivative()};
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        QUPoly r = -(chain[chain.size() - 2] % chain.back());
        if (r.is_zero()) break;
        // positive rescaling keeps the sign pattern and tames coefficient growth
        Rational lc = r.lc();
        chain.push_back(r * Rational(1 / abs(lc)));
    }
    return chain;
}

int variations(const std::vector<QUPoly>& chain, const Rational& x) {
    int count = 0;
    int last = 0;
    for (const auto& q : chain) {
        int s = sgn_at(q, x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

// Power of two strictly above every root modulus.
Rational root_bound(const QUPoly& p) {
    Rational m = 0;
    for (int k = 0; k < p.degree(); ++k) {
        Rational r = abs(p.coeffs()[k] / p.lc());
        if (r > m) m = r;
    }
    Rational b = 1;
    while (b <= m + 1) b *= 2;
    return b;
}

std::vector<IsolatedRoot> isolate_squarefree(const QUPoly& f, unsigned multiplicity) {
    std::vector<IsolatedRoot> out;
    if (f.degree() <= 0) return out;
    const auto chain = sturm_chain(f);
    const Rational b = root_bound(f);
    struct Piece {
        Rational lo, hi;
        int vlo, vhi;
    };
    std::vector<Piece> stack{{-b, b, variations(chain, -b), variations(chain, b)}};
    while (!stack.empty()) {
        Piece pc = stack.back();
        stack.pop_back();
        const int n = pc.vlo - pc.vhi;
        if (n == 0) continue;
        if (n == 1) {
            IsolatedRoot r;
            r.poly = f;
            r.multiplicity = multiplicity;
            if (sgn_at(f, pc.hi) == 0) {
                r.lo = r.hi = pc.hi;
            } else {
                // the root is interior; move lo off a root of f if needed
                Rational lo = pc.lo;
                for (Rational step = (pc.hi - pc.lo) / 2; sgn_at(f, lo) == 0; step /= 2) {
                    Rational cand = pc.lo + step;
                    if (sgn_at(f, cand) != 0 && variations(chain, cand) - pc.vhi == 1) lo = cand;
                }
                r.lo = lo;
                r.hi = pc.hi;
            }
            out.push_back(std::move(r));
            continue;
        }
        Rational mid = (pc.lo + pc.hi) / 2;
        int vm = variations(chain, mid);
        stack.push_back({pc.lo, mid, pc.vlo, vm});
        stack.push_back({mid, pc.hi, vm, pc.vhi});
    }
    return out;
}

bool overlaps(const IsolatedRoot& a, const IsolatedRoot& b) { return !(a.hi < b.lo || b.hi < a.lo); }

}  // namespace

void IsolatedRoot::refine(unsigned bits) {
    Rational eps(1);
    eps /= Rational(Integer(1) << bits);
    int slo = sgn_at(poly, lo);
    while (!exact() && hi - lo > eps) {
        Rational mid = (lo + hi) / 2;
        int s = sgn_at(poly, mid);
        if (s == 0) {
            lo = hi = mid;
        } else if (s == slo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

double IsolatedRoot::to_double() const {
    IsolatedRoot c = *this;
    c.refine(60);
    return c.midpoint().get_d();
}

std::string IsolatedRoot::to_string() const {
    if (exact()) return s3e::to_string(lo);
    return "[" + s3e::to_string(lo) + ", " + s3e::to_string(hi) + "]";
}

int sturm_count(const QUPoly& p, const Rational& a, const Rational& b) {
    const auto chain = sturm_chain(p);
    return variations(chain, a) - variations(chain, b);
}

std::vector<IsolatedRoot> isolate_real_roots(const QUPoly& p) {
    if (p.is_zero()) throw std::domain_error("root isolation of the zero polynomial");
    std::vector<IsolatedRoot> all;
    for (const auto& [f, mult] : squarefree_decomposition(p)) {
        auto part = isolate_squarefree(f, mult);
        all.insert(all.end(), part.begin(), part.end());
    }
    // roots of distinct square-free factors differ; shrink until the intervals are disjoint
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j)
                while (overlaps(all[i], all[j])) {
                    for (IsolatedRoot* r : {&all[i], &all[j]}) {
                        if (r->exact()) continue;
                        Rational w = r->hi - r->lo;
                        unsigned bits = 1;
                        while (Rational(1) / Rational(Integer(1) << bits) >= w / 2) ++bits;
                        r->refine(bits);
                    }
                    changed = true;
                }
    }
    std::sort(all.begin(), all.end(), [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.lo < b.lo; });
    return all;
}

Rational rationalize(const Rational& x, const Integer& max_den) {
    // convergents h/k of the continued fraction of x
    Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    Rational r = x;
    Rational best = floor(r.get_d());
    for (int iter = 0; iter < 200; ++iter) {
        Integer a;
        mpz_fdiv_q(a.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
        Integer h2 = a * h1 + h0;
        Integer k2 = a * k1 + k0;
        if (k2 > max_den) break;
        best = Rational(h2, k2);
        best.canonicalize();
        h0 = h1, h1 = h2, k0 = k1, k1 = k2;
        Rational frac = r - Rational(a);
        if (sgn(frac) == 0) break;
        r = 1 / frac;
    }
    return best;
}

std::optional<RadicalScalar> recognize_radical(const IsolatedRoot& root) {
    if (root.exact()) return RadicalScalar(root.lo);
    IsolatedRoot r = root;
    r.refine(160);
    const Rational m = r.midpoint();
    const RUPoly p = r.poly.map<RadicalScalar>([](const Rational& c) { return RadicalScalar(c); });
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 2; ++i) {
            const RadicalScalar beta = RadicalScalar::basis(i, j);
            auto [blo, bhi] = beta.enclosure(200);
            const Rational q = rationalize(Rational(m / ((blo + bhi) / 2)), Integer(1000000));
            if (sgn(q) == 0) continue;
            const RadicalScalar c = beta * q;
            if (!p.evaluate(c).is_zero()) continue;
            if ((c - RadicalScalar(root.lo)).sign() < 0 || (RadicalScalar(root.hi) - c).sign() < 0) continue;
            return c;
        }
    return std::nullopt;
}

FieldRoots real_roots_in_field(const RUPoly& p) {
    FieldRoots out;
    if (p.degree() <= 0) return out;
    auto sort_exact = [&out] {
        std::sort(out.exact.begin(), out.exact.end(),
                  [](const RadicalScalar& a, const RadicalScalar& b) { return (a - b).sign() < 0; });
        out.exact.erase(std::unique(out.exact.begin(), out.exact.end()), out.exact.end());
    };
    if (p.degree() == 1) {
        out.exact.push_back(-p[0] / p[1]);
        return out;
    }
    if (p.degree() == 2) {
        const RadicalScalar disc = p[1] * p[1] - RadicalScalar(4L) * p[0] * p[2];
        if (disc.sign() < 0) return out;
        if (auto root = radical_sqrt(disc)) {
            const RadicalScalar den = RadicalScalar(2L) * p[2];
            out.exact.push_back((-p[1] + *root) / den);
            out.exact.push_back((-p[1] - *root) / den);
            sort_exact();
            return out;
        }
    }
    bool rational = true;
    for (const auto& c : p.coeffs()) rational = rational && c.is_rational();
    const QUPoly n = rational ? p.map<Rational>([](const RadicalScalar& c) { return c.rational_part(); })
                              : norm_to_rational(p);
    for (auto& r : isolate_real_roots(squarefree_part(n))) {
        if (auto c = recognize_radical(r)) {
            if (p.evaluate(*c).is_zero()) out.exact.push_back(*c);
            continue;
        }
        // not in the field: keep it only if it looks like a root of p itself
        r.refine(80);
        const long double x = r.midpoint().get_d();
        long double val = 0, scale = 0;
        for (int k = p.degree(); k >= 0; --k) {
            val = val * x + p[k].to_long_double();
            scale = scale * std::fabs(x) + std::fabs(p[k].to_long_double());
        }
        if (std::fabs(val) <= 1e-12L * (scale + 1)) out.unrecognized.push_back(r);
    }
    sort_exact();
    return out;
}

}  // namespace s3e
