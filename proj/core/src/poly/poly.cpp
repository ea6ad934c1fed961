#include "s3e/poly/poly.hpp"

#include <cctype>

namespace s3e {

namespace {

template <class C, class F>
std::string render(const Poly<C>& p, F&& coeff_text) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        auto [negative, mag] = coeff_text(c);
        std::string term;
        if (m.is_one())
            term = mag;
        else if (mag == "1")
            term = monomial_to_string(m, *p.vars());
        else
            term = mag + "*" + monomial_to_string(m, *p.vars());
        if (first) {
            out = (negative ? "-" : "") + term;
            first = false;
        } else {
            out += (negative ? " - " : " + ") + term;
        }
    }
    return out;
}

class PolyParser {
public:
    PolyParser(std::string_view text, const VarTablePtr& vars, MonomialOrder order, std::size_t line)
        : s_(text), vars_(vars), order_(order), line_(line) {}

    QPoly parse() {
        std::vector<QPoly::Term> terms;
        skip();
        bool negative = false;
        if (peek('-') || peek('+')) negative = s_[pos_++] == '-';
        for (;;) {
            auto [m, c] = term();
            if (negative) c = -c;
            terms.emplace_back(m, c);
            skip();
            if (pos_ == s_.size()) break;
            if (peek('+') || peek('-')) {
                negative = s_[pos_++] == '-';
                continue;
            }
            fail("expected '+', '-' or end of polynomial");
        }
        return QPoly::from_terms(vars_, order_, std::move(terms));
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError("polynomial: " + msg, line_, pos_ + 1); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }

    Integer integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return Integer(std::string(s_.substr(start, pos_ - start)), 10);
    }

    std::pair<Monomial, Rational> term() {
        Monomial m;
        Rational c = 1;
        for (;;) {
            skip();
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                Integer num = integer();
                Integer den = 1;
                skip();
                if (peek('/')) {
                    ++pos_;
                    den = integer();
                    if (den == 0) fail("zero denominator");
                }
                Rational q(num, den);
                q.canonicalize();
                c *= q;
            } else if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
                std::size_t start = pos_;
                while (pos_ < s_.size() &&
                       (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                    ++pos_;
                std::string_view name = s_.substr(start, pos_ - start);
                auto idx = vars_->find(name);
                if (!idx) {
                    pos_ = start;
                    fail("unknown variable '" + std::string(name) + "'");
                }
                unsigned e = 1;
                skip();
                if (peek('^')) {
                    ++pos_;
                    Integer ez = integer();
                    if (ez > 60000) fail("exponent too large");
                    e = static_cast<unsigned>(ez.get_ui());
                }
                m = m * Monomial::var(*idx, e);
            } else {
                fail("expected coefficient or variable");
            }
            skip();
            if (!peek('*')) break;
            ++pos_;
        }
        return {m, c};
    }

    std::string_view s_;
    const VarTablePtr& vars_;
    MonomialOrder order_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const QPoly& p) {
    return render(p, [](const Rational& c) { return std::pair{sgn(c) < 0, to_string(Rational(abs(c)))}; });
}

std::string to_string(const RPoly& p) {
    return render(p, [](const RadicalScalar& c) {
        if (c.is_rational()) {
            const Rational& q = c.rational_part();
            return std::pair{sgn(q) < 0, to_string(Rational(abs(q)))};
        }
        return std::pair{false, "(" + c.to_string() + ")"};
    });
}

QPoly parse_poly(std::string_view text, const VarTablePtr& vars, MonomialOrder order, std::size_t line_no) {
    return PolyParser(text, vars, order, line_no).parse();
}

QPoly primitive_part(const QPoly& p) {
    if (p.is_zero()) return p;
    Integer den_lcm = 1;
    Integer num_gcd = 0;
    for (const auto& [m, c] : p.terms()) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    }
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (sgn(p.leading_coeff()) < 0) scale = -scale;
    return p * scale;
}

QPoly make_monic(const QPoly& p) {
    if (p.is_zero()) return p;
    Rational inv = 1 / p.leading_coeff();
    return p * inv;
}

}  // namespace s3e
