#include "s3e/exactnum/param_ring.hpp"

#include <cctype>
#include <cmath>

namespace s3e {

namespace {

constexpr std::size_t kT = 0;
constexpr std::size_t kS = 1;

}  // namespace

const VarTablePtr& param_vars() {
    static const VarTablePtr vars = make_vars({"t", "s"});
    return vars;
}

SqrtRelation::SqrtRelation(RPoly relation) : rel_(std::move(relation)) {
    if (!same_vars(rel_.vars(), param_vars())) throw ParamRingError("relation must be a polynomial in t, s");
    d_ = rel_.degree_in(kS);
    if (d_ == 0) throw ParamRingError("relation does not involve s");
    RadicalScalar lc;
    RPoly rest(param_vars());
    std::vector<RPoly::Term> tail_terms;
    for (const auto& [m, c] : rel_.terms()) {
        if (m.exp[kS] == d_) {
            if (m.deg != d_) throw ParamRingError("non-monic relation");
            lc = c;
        } else {
            tail_terms.emplace_back(m, c);
        }
    }
    RadicalScalar scale = -lc.inverse();
    tail_ = RPoly::from_terms(param_vars(), MonomialOrder::lex, std::move(tail_terms)) * scale;
}

std::shared_ptr<const SqrtRelation> SqrtRelation::unit_circle(const Rational& c) {
    const auto& v = param_vars();
    RPoly t = RPoly::variable(v, kT);
    RPoly s = RPoly::variable(v, kS);
    RPoly rel = s * s + t * t * RadicalScalar(c) - RPoly::constant(v, RadicalScalar(1L));
    return std::make_shared<const SqrtRelation>(std::move(rel));
}

RPoly SqrtRelation::reduce(const RPoly& p) const {
    RPoly cur = p;
    for (;;) {
        std::vector<RPoly::Term> low;
        RPoly high(param_vars());
        bool any = false;
        for (const auto& [m, c] : cur.terms()) {
            if (m.exp[kS] >= d_) {
                Monomial rest = m;
                rest.exp[kS] = static_cast<std::uint16_t>(rest.exp[kS] - d_);
                rest.deg -= d_;
                high += tail_.shifted(rest) * c;
                any = true;
            } else {
                low.emplace_back(m, c);
            }
        }
        if (!any) return cur;
        cur = RPoly::from_terms(param_vars(), MonomialOrder::lex, std::move(low)) + high;
    }
}

std::string SqrtRelation::to_string() const { return s3e::to_string(rel_); }

ParamRingElem::ParamRingElem(RelationPtr rel, RPoly rep) : rel_(std::move(rel)), rep_(std::move(rep)) {
    if (rep_.vars() == nullptr) rep_ = RPoly(param_vars());
    if (!same_vars(rep_.vars(), param_vars())) throw ParamRingError("representative must be a polynomial in t, s");
    if (rel_) {
        rep_ = rel_->reduce(rep_);
    } else if (rep_.involves(kS) || rep_.involves(kT)) {
        throw ParamRingError("non-constant element without relation");
    }
}

ParamRingElem ParamRingElem::constant(RelationPtr rel, const RadicalScalar& c) {
    return ParamRingElem(std::move(rel), RPoly::constant(param_vars(), c));
}

ParamRingElem ParamRingElem::t(RelationPtr rel) { return ParamRingElem(std::move(rel), RPoly::variable(param_vars(), kT)); }

ParamRingElem ParamRingElem::s(RelationPtr rel) { return ParamRingElem(std::move(rel), RPoly::variable(param_vars(), kS)); }

RadicalScalar ParamRingElem::constant_value() const {
    if (!is_constant()) throw ParamRingError("element is not constant");
    return rep_.is_zero() ? RadicalScalar() : rep_.leading_coeff();
}

ParamRingElem ParamRingElem::scalar(const Rational& q) const { return constant(rel_, RadicalScalar(q)); }
ParamRingElem ParamRingElem::scalar(const RadicalScalar& q) const { return constant(rel_, q); }

RelationPtr ParamRingElem::common(const ParamRingElem& a, const ParamRingElem& b) {
    if (!a.rel_) return b.rel_;
    if (!b.rel_) return a.rel_;
    if (a.rel_ != b.rel_ && !(*a.rel_ == *b.rel_)) throw ParamRingError("elements of different quotient rings");
    return a.rel_;
}

ParamRingElem ParamRingElem::operator-() const { return ParamRingElem(rel_, -rep_); }

ParamRingElem operator+(const ParamRingElem& a, const ParamRingElem& b) {
    return ParamRingElem(ParamRingElem::common(a, b), a.rep_ + b.rep_);
}

ParamRingElem operator-(const ParamRingElem& a, const ParamRingElem& b) {
    return ParamRingElem(ParamRingElem::common(a, b), a.rep_ - b.rep_);
}

ParamRingElem operator*(const ParamRingElem& a, const ParamRingElem& b) {
    return ParamRingElem(ParamRingElem::common(a, b), a.rep_ * b.rep_);
}

ParamRingElem operator*(const ParamRingElem& a, const Rational& q) {
    return ParamRingElem(a.rel_, a.rep_ * RadicalScalar(q));
}

ParamRingElem operator*(const ParamRingElem& a, const RadicalScalar& q) { return ParamRingElem(a.rel_, a.rep_ * q); }

double ParamRingElem::evaluate(double t, double s) const {
    long double sum = 0;
    for (const auto& [m, c] : rep_.terms())
        sum += c.to_long_double() * std::pow(static_cast<long double>(t), m.exp[kT]) *
               std::pow(static_cast<long double>(s), m.exp[kS]);
    return static_cast<double>(sum);
}

std::string ParamRingElem::to_string() const { return s3e::to_string(rep_); }

ParamRingElem ParamRingElem::parse(std::string_view text, RelationPtr rel) {
    return ParamRingElem(std::move(rel), parse_rpoly(text, param_vars()));
}

ParamRingElem param_reduce(const ParamRingElem& x) {
    if (!x.relation()) return x;
    return ParamRingElem(x.relation(), x.relation()->reduce(x.representative()));
}

namespace {

class RPolyParser {
public:
    RPolyParser(std::string_view text, const VarTablePtr& vars) : s_(text), vars_(vars) {}

    RPoly parse() {
        std::vector<RPoly::Term> terms;
        skip();
        bool negative = false;
        if (peek('-') || peek('+')) negative = s_[pos_++] == '-';
        for (;;) {
            auto [m, c] = term();
            if (negative) c = -c;
            terms.emplace_back(m, std::move(c));
            skip();
            if (pos_ == s_.size()) break;
            if (peek('+') || peek('-')) {
                negative = s_[pos_++] == '-';
                continue;
            }
            fail("expected '+', '-' or end");
        }
        return RPoly::from_terms(vars_, MonomialOrder::lex, std::move(terms));
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError("radical polynomial: " + msg, 1, pos_ + 1); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }

    std::pair<Monomial, RadicalScalar> term() {
        Monomial m;
        RadicalScalar c(1L);
        for (;;) {
            skip();
            if (peek('(')) {
                int depth = 0;
                std::size_t start = pos_;
                do {
                    if (s_[pos_] == '(') ++depth;
                    if (s_[pos_] == ')') --depth;
                    ++pos_;
                } while (pos_ < s_.size() && depth > 0);
                if (depth != 0) fail("unbalanced parentheses");
                c *= RadicalScalar::parse(s_.substr(start, pos_ - start));
            } else if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                std::size_t start = pos_;
                while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/'))
                    ++pos_;
                c *= RadicalScalar(parse_rational(s_.substr(start, pos_ - start)));
            } else if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
                std::size_t start = pos_;
                while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                    ++pos_;
                auto idx = vars_->find(s_.substr(start, pos_ - start));
                if (!idx) {
                    pos_ = start;
                    fail("unknown variable");
                }
                unsigned e = 1;
                skip();
                if (peek('^')) {
                    ++pos_;
                    skip();
                    std::size_t es = pos_;
                    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                    if (es == pos_) fail("expected exponent");
                    e = static_cast<unsigned>(std::stoul(std::string(s_.substr(es, pos_ - es))));
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
    std::size_t pos_ = 0;
};

}  // namespace

RPoly parse_rpoly(std::string_view text, const VarTablePtr& vars) { return RPolyParser(text, vars).parse(); }

std::string format_param(const ParamRingElem& x) {
    std::string out = x.to_string();
    out += "\nrel: ";
    out += x.relation() ? x.relation()->to_string() : "none";
    return out;
}

ParamRingElem parse_param(std::string_view text) {
    std::size_t nl = text.find('\n');
    if (nl == std::string_view::npos) throw ParseError("parametric element: missing rel: line");
    std::string_view body = text.substr(0, nl);
    std::string_view rel = text.substr(nl + 1);
    while (!rel.empty() && (rel.back() == '\n' || rel.back() == '\r')) rel.remove_suffix(1);
    if (rel.substr(0, 4) != "rel:") throw ParseError("parametric element: expected 'rel:'", 2, 1);
    rel.remove_prefix(4);
    while (!rel.empty() && rel.front() == ' ') rel.remove_prefix(1);
    RelationPtr r;
    if (rel != "none") r = std::make_shared<const SqrtRelation>(parse_rpoly(rel, param_vars()));
    return ParamRingElem::parse(body, r);
}

}  // namespace s3e
