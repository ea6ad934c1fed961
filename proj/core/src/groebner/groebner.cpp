#include "s3e/groebner/groebner.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

namespace s3e {

namespace {

using Clock = std::chrono::steady_clock;

/// Integer polynomial with descending terms; the working representation of the engine.
struct IPoly {
    std::vector<Monomial> mon;
    std::vector<Integer> coef;
    unsigned sugar = 0;
    std::uint32_t lm_mask = 0;

    std::size_t size() const noexcept { return mon.size(); }
    bool empty() const noexcept { return mon.empty(); }
};

std::uint32_t support_mask(const Monomial& m) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        if (m.exp[i]) mask |= 1u << i;
        if (m.exp[i] > 1) mask |= 1u << (i + kMaxVars);
    }
    return mask;
}

void make_primitive(IPoly& p) {
    if (p.empty()) return;
    Integer g = 0;
    for (const auto& c : p.coef) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    if (sgn(p.coef.front()) < 0) g = -g;
    if (g != 1)
        for (auto& c : p.coef) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

IPoly to_ipoly(const QPoly& q) {
    IPoly p;
    QPoly prim = primitive_part(q);
    p.mon.reserve(prim.size());
    p.coef.reserve(prim.size());
    for (const auto& [m, c] : prim.terms()) {
        p.mon.push_back(m);
        p.coef.push_back(c.get_num());
    }
    p.sugar = prim.total_degree();
    if (!p.empty()) p.lm_mask = support_mask(p.mon.front());
    return p;
}

QPoly to_qpoly(const IPoly& p, const VarTablePtr& vars, MonomialOrder order) {
    std::vector<QPoly::Term> terms;
    terms.reserve(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) terms.emplace_back(p.mon[k], Rational(p.coef[k]));
    return make_monic(QPoly::from_terms(vars, order, std::move(terms)));
}

struct Pair {
    std::uint32_t i;
    std::uint32_t j;
    Monomial lcm;
    unsigned sugar;
};

class Engine {
public:
    Engine(VarTablePtr vars, const GroebnerOptions& opt)
        : vars_(std::move(vars)), n_(vars_->size()), opt_(opt), start_(Clock::now()) {}

    void add_input(const QPoly& q) {
        IPoly p = to_ipoly(q.with_order(opt_.order));
        if (p.empty()) return;
        IPoly h = full_reduce(std::move(p));
        if (!h.empty()) insert(std::move(h));
    }

    void run() {
        while (!pairs_.empty()) {
            check_budget();
            Pair pr = pop_pair();
            ++stats_.pairs_processed;
            IPoly s = spoly(store_[pr.i], store_[pr.j]);
            s.sugar = pr.sugar;
            IPoly h = full_reduce(std::move(s));
            if (h.empty()) {
                ++stats_.zero_reductions;
                continue;
            }
            insert(std::move(h));
        }
    }

    GroebnerBasis finish() {
        std::vector<std::uint32_t> ids = active_ids();
        std::vector<IPoly> reduced;
        reduced.reserve(ids.size());
        // tail-reduce every element against the others
        for (std::uint32_t id : ids) {
            std::vector<std::uint32_t> saved = std::move(active_);
            active_.clear();
            for (std::uint32_t other : ids)
                if (other != id) active_.push_back(other);
            IPoly h = tail_reduce(store_[id]);
            active_ = std::move(saved);
            reduced.push_back(std::move(h));
        }
        GroebnerBasis gb;
        gb.vars = vars_;
        gb.order = opt_.order;
        for (const auto& p : reduced) gb.polys.push_back(to_qpoly(p, vars_, opt_.order));
        std::sort(gb.polys.begin(), gb.polys.end(), [this](const QPoly& a, const QPoly& b) {
            return compare(a.leading_monomial(), b.leading_monomial(), opt_.order, n_) < 0;
        });
        stats_.seconds = elapsed();
        gb.stats = stats_;
        return gb;
    }

    [[noreturn]] void exhaust(const std::string& why) {
        stats_.seconds = elapsed();
        std::vector<QPoly> partial;
        for (std::uint32_t id : active_ids()) partial.push_back(to_qpoly(store_[id], vars_, opt_.order));
        throw BudgetExhausted(why, stats_, std::move(partial), pairs_.size());
    }

private:
    double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

    void check_budget() {
        if (stats_.pairs_processed >= opt_.max_pairs)
            exhaust("pair budget of " + std::to_string(opt_.max_pairs) + " exhausted");
        if (opt_.max_seconds > 0 && elapsed() > opt_.max_seconds) {
            std::ostringstream ss;
            ss << "time budget of " << opt_.max_seconds << " s exhausted";
            exhaust(ss.str());
        }
    }

    int cmp(const Monomial& a, const Monomial& b) const { return compare(a, b, opt_.order, n_); }

    std::vector<std::uint32_t> active_ids() const {
        std::vector<std::uint32_t> ids = active_;
        std::sort(ids.begin(), ids.end());
        return ids;
    }

    const IPoly* find_reducer(const Monomial& m, std::uint32_t mask) const {
        const IPoly* best = nullptr;
        for (std::uint32_t id : active_) {
            const IPoly& g = store_[id];
            if (g.lm_mask & ~mask) continue;
            if (!g.mon.front().divides(m)) continue;
            if (!best || g.size() < best->size()) best = &g;
        }
        return best;
    }

    // h := a*h[head..] - b*(m*g)[1..]; the leading terms cancel.
    void reduce_step(IPoly& h, std::size_t& head, const IPoly& g, const Monomial& m, const Integer& a,
                     const Integer& b) {
        IPoly out;
        const std::size_t hn = h.size();
        const std::size_t gn = g.size();
        out.mon.reserve(hn - head + gn);
        out.coef.reserve(hn - head + gn);
        std::size_t i = head + 1;
        std::size_t j = 1;
        Monomial gm;
        bool gm_valid = false;
        Integer t;
        const bool scale_h = a != 1;
        while (i < hn || j < gn) {
            if (j < gn && !gm_valid) {
                gm = g.mon[j] * m;
                gm_valid = true;
            }
            int c;
            if (i == hn)
                c = -1;
            else if (j == gn)
                c = 1;
            else
                c = cmp(h.mon[i], gm);
            if (c > 0) {
                out.mon.push_back(h.mon[i]);
                if (scale_h)
                    out.coef.emplace_back(h.coef[i] * a);
                else
                    out.coef.push_back(std::move(h.coef[i]));
                ++i;
            } else if (c < 0) {
                out.mon.push_back(gm);
                out.coef.emplace_back(-(g.coef[j] * b));
                ++j;
                gm_valid = false;
            } else {
                if (scale_h)
                    t = h.coef[i] * a;
                else
                    t = std::move(h.coef[i]);
                mpz_submul(t.get_mpz_t(), g.coef[j].get_mpz_t(), b.get_mpz_t());
                if (sgn(t) != 0) {
                    out.mon.push_back(gm);
                    out.coef.push_back(std::move(t));
                }
                ++i;
                ++j;
                gm_valid = false;
            }
        }
        unsigned sug = std::max(h.sugar, g.sugar + m.deg);
        h.mon = std::move(out.mon);
        h.coef = std::move(out.coef);
        h.sugar = sug;
        head = 0;
    }

    // Reduce starting at `head`; terms before `head` are final and collected in `done`.
    IPoly reduce_from(IPoly h, IPoly done) {
        std::size_t head = 0;
        std::uint32_t steps_since_content = 0;
        Integer a;
        Integer b;
        Integer g;
        while (head < h.size()) {
            const Monomial lt = h.mon[head];
            const IPoly* red = find_reducer(lt, support_mask(lt));
            if (!red && top_only_ && done.empty()) {
                // irreducible head: the tail is left for the final inter-reduction
                for (std::size_t k = head; k < h.size(); ++k) {
                    done.mon.push_back(h.mon[k]);
                    done.coef.push_back(std::move(h.coef[k]));
                }
                break;
            }
            if (!red) {
                done.mon.push_back(lt);
                done.coef.push_back(std::move(h.coef[head]));
                ++head;
                continue;
            }
            const Monomial m = red->mon.front().quotient_of(lt);
            mpz_gcd(g.get_mpz_t(), red->coef.front().get_mpz_t(), h.coef[head].get_mpz_t());
            mpz_divexact(a.get_mpz_t(), red->coef.front().get_mpz_t(), g.get_mpz_t());
            mpz_divexact(b.get_mpz_t(), h.coef[head].get_mpz_t(), g.get_mpz_t());
            if (sgn(a) < 0) {
                a = -a;
                b = -b;
            }
            reduce_step(h, head, *red, m, a, b);
            if (a != 1)
                for (auto& c : done.coef) c *= a;
            ++stats_.reduction_steps;
            if (++steps_since_content >= 16) {
                steps_since_content = 0;
                remove_content(h, done);
            }
            if ((stats_.reduction_steps & 0xff) == 0 && opt_.max_seconds > 0 && elapsed() > opt_.max_seconds)
                exhaust("time budget exhausted during reduction");
        }
        done.sugar = std::max(done.sugar, h.sugar);
        make_primitive(done);
        if (!done.empty()) done.lm_mask = support_mask(done.mon.front());
        return done;
    }

    static void remove_content(IPoly& h, IPoly& done) {
        Integer g = 0;
        for (const auto& c : done.coef) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            if (g == 1) return;
        }
        for (const auto& c : h.coef) {
            if (sgn(c) == 0) continue;
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            if (g == 1) return;
        }
        if (g == 0) return;
        for (auto& c : done.coef) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        for (auto& c : h.coef)
            if (sgn(c) != 0) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    }

    IPoly full_reduce(IPoly h) {
        top_only_ = !opt_.full_reduction;
        IPoly done;
        done.sugar = h.sugar;
        return reduce_from(std::move(h), std::move(done));
    }

    // Keeps the leading term and reduces the tail.
    IPoly tail_reduce(const IPoly& p) {
        top_only_ = false;
        IPoly done;
        done.sugar = p.sugar;
        done.mon.push_back(p.mon.front());
        done.coef.push_back(p.coef.front());
        IPoly rest;
        rest.sugar = p.sugar;
        rest.mon.assign(p.mon.begin() + 1, p.mon.end());
        rest.coef.assign(p.coef.begin() + 1, p.coef.end());
        return reduce_from(std::move(rest), std::move(done));
    }

    IPoly spoly(const IPoly& f, const IPoly& g) {
        const Monomial l = lcm(f.mon.front(), g.mon.front());
        const Monomial mf = f.mon.front().quotient_of(l);
        const Monomial mg = g.mon.front().quotient_of(l);
        Integer gc;
        mpz_gcd(gc.get_mpz_t(), f.coef.front().get_mpz_t(), g.coef.front().get_mpz_t());
        Integer a = g.coef.front() / gc;  // multiplies f
        Integer b = f.coef.front() / gc;  // multiplies g
        // s = a*mf*f - b*mg*g; reuse reduce_step by shifting f first
        IPoly sf;
        sf.mon.reserve(f.size());
        sf.coef.reserve(f.size());
        for (std::size_t k = 0; k < f.size(); ++k) {
            sf.mon.push_back(f.mon[k] * mf);
            sf.coef.push_back(f.coef[k]);
        }
        sf.sugar = f.sugar + mf.deg;
        std::size_t head = 0;
        if (sgn(a) < 0) {
            a = -a;
            b = -b;
        }
        reduce_step(sf, head, g, mg, a, b);
        return sf;
    }

    bool pair_less(const Pair& x, const Pair& y) const {
        if (opt_.strategy == SelectionStrategy::sugar && x.sugar != y.sugar) return x.sugar < y.sugar;
        if (x.lcm.deg != y.lcm.deg) return x.lcm.deg < y.lcm.deg;
        int c = cmp(x.lcm, y.lcm);
        if (c != 0) return c < 0;
        if (x.j != y.j) return x.j < y.j;
        return x.i < y.i;
    }

    Pair pop_pair() {
        std::size_t best = 0;
        for (std::size_t k = 1; k < pairs_.size(); ++k)
            if (pair_less(pairs_[k], pairs_[best])) best = k;
        Pair p = pairs_[best];
        pairs_[best] = pairs_.back();
        pairs_.pop_back();
        return p;
    }

    // Gebauer-Moeller update.
    void insert(IPoly h) {
        const std::uint32_t hid = static_cast<std::uint32_t>(store_.size());
        store_.push_back(std::move(h));
        const IPoly& hp = store_.back();
        const Monomial& lh = hp.mon.front();

        std::vector<Pair> cand;
        cand.reserve(active_.size());
        std::vector<bool> is_coprime;
        for (std::uint32_t id : active_ids()) {
            const IPoly& g = store_[id];
            const Monomial& lg = g.mon.front();
            Monomial l = lcm(lh, lg);
            unsigned sug = std::max(hp.sugar + lh.quotient_of(l).deg, g.sugar + lg.quotient_of(l).deg);
            cand.push_back(Pair{id, hid, l, sug});
            is_coprime.push_back(coprime(lh, lg));
        }

        // criterion M / F on the new pairs
        std::vector<bool> keep(cand.size(), true);
        for (std::size_t a = 0; a < cand.size(); ++a) {
            if (is_coprime[a]) continue;
            for (std::size_t b = 0; b < cand.size(); ++b) {
                if (a == b || !keep[b]) continue;
                if (cand[b].lcm.divides(cand[a].lcm)) {
                    keep[a] = false;
                    break;
                }
            }
        }
        std::vector<Pair> fresh;
        for (std::size_t a = 0; a < cand.size(); ++a) {
            if (!keep[a]) {
                ++stats_.pairs_discarded;
                continue;
            }
            if (is_coprime[a]) {
                ++stats_.pairs_discarded;  // product criterion
                continue;
            }
            fresh.push_back(cand[a]);
        }

        // chain criterion on the old pairs
        std::vector<Pair> kept;
        kept.reserve(pairs_.size() + fresh.size());
        for (const Pair& p : pairs_) {
            if (lh.divides(p.lcm)) {
                Monomial li = lcm(store_[p.i].mon.front(), lh);
                Monomial lj = lcm(store_[p.j].mon.front(), lh);
                if (!(li == p.lcm) && !(lj == p.lcm)) {
                    ++stats_.pairs_discarded;
                    continue;
                }
            }
            kept.push_back(p);
        }
        for (auto& p : fresh) kept.push_back(p);
        pairs_ = std::move(kept);

        std::erase_if(active_, [&](std::uint32_t id) { return lh.divides(store_[id].mon.front()); });
        active_.push_back(hid);
        stats_.max_basis_size = std::max(stats_.max_basis_size, active_.size());
    }

    VarTablePtr vars_;
    std::size_t n_;
    GroebnerOptions opt_;
    Clock::time_point start_;
    std::vector<IPoly> store_;
    std::vector<std::uint32_t> active_;
    bool top_only_ = false;
    std::vector<Pair> pairs_;
    GroebnerStats stats_;
};

}  // namespace

PolySystem GroebnerBasis::as_system() const {
    PolySystem sys;
    sys.vars = vars;
    sys.order = order;
    sys.polys = polys;
    sys.label = label;
    return sys;
}

QPoly reduce(const QPoly& p, std::span<const QPoly> basis, MonomialOrder order) {
    QPoly rem(p.vars(), order);
    QPoly work = p.with_order(order);
    std::vector<QPoly> divisors;
    divisors.reserve(basis.size());
    for (const auto& g : basis) {
        if (!same_vars(g.vars(), p.vars())) throw PolyError("reduce: variable table mismatch");
        if (!g.is_zero()) divisors.push_back(make_monic(g.with_order(order)));
    }
    std::vector<QPoly::Term> rem_terms;
    while (!work.is_zero()) {
        const auto& [lt, lc] = work.terms().front();
        const QPoly* red = nullptr;
        for (const auto& g : divisors)
            if (g.leading_monomial().divides(lt)) {
                red = &g;
                break;
            }
        if (!red) {
            rem_terms.emplace_back(lt, lc);
            QPoly head = QPoly::from_terms(p.vars(), order, {{lt, lc}});
            work -= head;
            continue;
        }
        Monomial m = red->leading_monomial().quotient_of(lt);
        Rational c = lc;
        work -= red->shifted(m) * c;
    }
    return QPoly::from_terms(p.vars(), order, std::move(rem_terms));
}

QPoly s_polynomial(const QPoly& f, const QPoly& g) {
    if (f.is_zero() || g.is_zero()) throw PolyError("S-polynomial of zero");
    Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
    QPoly a = f.shifted(f.leading_monomial().quotient_of(l)) * Rational(1 / f.leading_coeff());
    QPoly b = g.shifted(g.leading_monomial().quotient_of(l)) * Rational(1 / g.leading_coeff());
    return a - b;
}

GroebnerBasis buchberger(const PolySystem& system, const GroebnerOptions& options) {
    system.check();
    if (system.polys.empty()) throw PolyError("buchberger: empty system");
    Engine engine(system.vars, options);
    for (const auto& p : system.polys) engine.add_input(p);
    engine.run();
    GroebnerBasis gb = engine.finish();
    gb.label = system.label;
    return gb;
}

std::vector<QPoly> elimination_ideal(const GroebnerBasis& basis, std::size_t keep_last_k) {
    if (basis.order != MonomialOrder::lex) throw PolyError("elimination ideal needs a lex basis");
    const std::size_t n = basis.vars->size();
    if (keep_last_k > n) throw PolyError("elimination ideal: keep count exceeds variables");
    std::vector<QPoly> out;
    for (const auto& p : basis.polys) {
        bool ok = true;
        for (std::size_t v = 0; v + keep_last_k < n; ++v)
            if (p.involves(v)) {
                ok = false;
                break;
            }
        if (ok) out.push_back(p);
    }
    return out;
}

DimensionVerdict finiteness_test(const GroebnerBasis& basis) {
    DimensionVerdict v;
    const std::size_t n = basis.vars->size();
    std::vector<bool> has(n, false);
    for (const auto& p : basis.polys) {
        const Monomial& lm = p.leading_monomial();
        if (lm.is_one()) {
            v.inconsistent = true;
            v.zero_dimensional = true;
            return v;
        }
        if (auto i = lm.pure_power_var()) has[*i] = true;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!has[i]) v.missing_vars.push_back(basis.vars->name(i));
    v.zero_dimensional = v.missing_vars.empty();
    return v;
}

std::size_t spot_check_s_pairs(const GroebnerBasis& basis, std::size_t samples, std::uint64_t seed) {
    const std::size_t n = basis.polys.size();
    if (n < 2) return 0;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::size_t failures = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        std::size_t i = pick(rng);
        std::size_t j = pick(rng);
        if (i == j) j = (j + 1) % n;
        QPoly sp = s_polynomial(basis.polys[i], basis.polys[j]);
        if (!reduce(sp, basis.polys, basis.order).is_zero()) ++failures;
    }
    return failures;
}

std::string format_basis(const GroebnerBasis& basis) {
    // wall time is left out so that files are reproducible byte for byte
    std::vector<std::string> comments = {
        "pairs: " + std::to_string(basis.stats.pairs_processed),
        "zero_reductions: " + std::to_string(basis.stats.zero_reductions),
    };
    return format_system(basis.as_system(), comments);
}

GroebnerBasis parse_basis(std::string_view text) {
    PolySystem sys = parse_system(text);
    GroebnerBasis gb;
    gb.vars = sys.vars;
    gb.order = sys.order;
    gb.polys = sys.polys;
    gb.label = sys.label;
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
        auto grab = [&](std::string_view key) -> std::optional<std::string> {
            std::string prefix = "# " + std::string(key) + ":";
            if (line.rfind(prefix, 0) != 0) return std::nullopt;
            return line.substr(prefix.size());
        };
        if (auto v = grab("pairs")) gb.stats.pairs_processed = std::stoull(*v);
        if (auto v = grab("zero_reductions")) gb.stats.zero_reductions = std::stoull(*v);
        if (auto v = grab("seconds")) gb.stats.seconds = std::stod(*v);
    }
    return gb;
}

}  // namespace s3e
