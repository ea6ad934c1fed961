#include "s3e/exactnum/radical.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace s3e {

namespace {

constexpr int idx(int i, int j) { return i + 2 * j; }

}  // namespace

RadicalScalar RadicalScalar::basis(int sqrt2_pow, int qroot3_pow) {
    if (sqrt2_pow < 0 || sqrt2_pow > 1 || qroot3_pow < 0 || qroot3_pow > 3)
        throw std::out_of_range("radical basis index out of range");
    RadicalScalar r;
    r.c_[idx(sqrt2_pow, qroot3_pow)] = 1;
    return r;
}

bool RadicalScalar::is_zero() const {
    for (const auto& q : c_)
        if (sgn(q) != 0) return false;
    return true;
}

bool RadicalScalar::is_rational() const {
    for (int k = 1; k < kDim; ++k)
        if (sgn(c_[k]) != 0) return false;
    return true;
}

RadicalScalar RadicalScalar::operator-() const {
    RadicalScalar r;
    for (int k = 0; k < kDim; ++k) r.c_[k] = -c_[k];
    return r;
}

RadicalScalar& RadicalScalar::operator+=(const RadicalScalar& o) {
    for (int k = 0; k < kDim; ++k) c_[k] += o.c_[k];
    return *this;
}

RadicalScalar& RadicalScalar::operator-=(const RadicalScalar& o) {
    for (int k = 0; k < kDim; ++k) c_[k] -= o.c_[k];
    return *this;
}

RadicalScalar& RadicalScalar::operator*=(const Rational& q) {
    for (auto& x : c_) x *= q;
    return *this;
}

RadicalScalar operator*(const RadicalScalar& a, const RadicalScalar& b) {
    RadicalScalar r;
    Rational t;
    for (int i1 = 0; i1 < 2; ++i1) {
        for (int j1 = 0; j1 < 4; ++j1) {
            const Rational& x = a.c_[idx(i1, j1)];
            if (sgn(x) == 0) continue;
            for (int i2 = 0; i2 < 2; ++i2) {
                for (int j2 = 0; j2 < 4; ++j2) {
                    const Rational& y = b.c_[idx(i2, j2)];
                    if (sgn(y) == 0) continue;
                    int i = i1 + i2;
                    int j = j1 + j2;
                    long factor = 1;
                    if (i >= 2) {
                        i -= 2;
                        factor *= 2;
                    }
                    if (j >= 4) {
                        j -= 4;
                        factor *= 3;
                    }
                    t = x * y;
                    if (factor != 1) t *= factor;
                    r.c_[idx(i, j)] += t;
                }
            }
        }
    }
    return r;
}

RadicalScalar& RadicalScalar::operator*=(const RadicalScalar& o) {
    *this = *this * o;
    return *this;
}

RadicalScalar RadicalScalar::conj_sqrt2() const {
    RadicalScalar r = *this;
    for (int j = 0; j < 4; ++j) r.c_[idx(1, j)] = -r.c_[idx(1, j)];
    return r;
}

RadicalScalar RadicalScalar::conj_qroot3() const {
    RadicalScalar r = *this;
    for (int i = 0; i < 2; ++i) {
        r.c_[idx(i, 1)] = -r.c_[idx(i, 1)];
        r.c_[idx(i, 3)] = -r.c_[idx(i, 3)];
    }
    return r;
}

RadicalScalar RadicalScalar::conj_sqrt3() const {
    for (int k = 0; k < kDim; ++k)
        if (k != idx(0, 0) && k != idx(0, 2) && sgn(c_[k]) != 0)
            throw std::logic_error("conj_sqrt3 applied outside Q(sqrt3)");
    RadicalScalar r = *this;
    r.c_[idx(0, 2)] = -r.c_[idx(0, 2)];
    return r;
}

RadicalScalar RadicalScalar::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero radical scalar");
    // Tower of quadratic norms: K -> Q(r) -> Q(sqrt3) -> Q.
    RadicalScalar c1 = conj_sqrt2();
    RadicalScalar y = *this * c1;  // in Q(r)
    RadicalScalar c2 = y.conj_qroot3();
    RadicalScalar z = y * c2;  // in Q(sqrt3)
    RadicalScalar c3 = z.conj_sqrt3();
    RadicalScalar n = z * c3;  // in Q
    RadicalScalar num = c1 * c2 * c3;
    Rational inv = 1 / n.c_[0];
    return num * inv;
}

RadicalScalar RadicalScalar::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    RadicalScalar result(1L);
    RadicalScalar base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

std::pair<Rational, Rational> RadicalScalar::enclosure(unsigned bits) const {
    Integer scale = 1;
    scale <<= bits;
    // sqrt2 in [s2lo, s2lo+1] / 2^bits, r in [r3lo, r3lo+1] / 2^bits
    Integer two_scaled = 2 * scale * scale;
    Integer three_scaled = 3 * scale * scale * scale * scale;
    Integer s2lo = iroot(two_scaled, 2);
    Integer r3lo = iroot(three_scaled, 4);
    Rational s2[2] = {Rational(s2lo, scale), Rational(Integer(s2lo + 1), scale)};
    Rational r3[2] = {Rational(r3lo, scale), Rational(Integer(r3lo + 1), scale)};
    for (auto& q : s2) q.canonicalize();
    for (auto& q : r3) q.canonicalize();

    Rational lo = 0;
    Rational hi = 0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 4; ++j) {
            const Rational& c = c_[idx(i, j)];
            if (sgn(c) == 0) continue;
            Rational blo = 1;
            Rational bhi = 1;
            if (i == 1) {
                blo *= s2[0];
                bhi *= s2[1];
            }
            for (int k = 0; k < j; ++k) {
                blo *= r3[0];
                bhi *= r3[1];
            }
            if (sgn(c) > 0) {
                lo += c * blo;
                hi += c * bhi;
            } else {
                lo += c * bhi;
                hi += c * blo;
            }
        }
    }
    return {lo, hi};
}

int RadicalScalar::sign() const {
    if (is_zero()) return 0;
    if (is_rational()) return sgn(c_[0]);
    for (unsigned bits = 16;; bits *= 2) {
        auto [lo, hi] = enclosure(bits);
        if (sgn(lo) > 0) return 1;
        if (sgn(hi) < 0) return -1;
    }
}

long double RadicalScalar::to_long_double() const {
    const long double s2 = std::sqrt(2.0L);
    const long double r3 = std::pow(3.0L, 0.25L);
    long double sum = 0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 4; ++j) {
            const Rational& c = c_[idx(i, j)];
            if (sgn(c) == 0) continue;
            long double b = (i ? s2 : 1.0L) * std::pow(r3, static_cast<long double>(j));
            sum += static_cast<long double>(c.get_d()) * b;
        }
    }
    return sum;
}

double RadicalScalar::to_double() const { return static_cast<double>(to_long_double()); }

std::string RadicalScalar::to_string() const {
    std::string out;
    bool first = true;
    for (int k = kDim - 1; k >= 0; --k) {
        const Rational& c = c_[k];
        if (sgn(c) == 0) continue;
        const int i = k % 2;
        const int j = k / 2;
        std::string factors;
        if (i == 1) factors += "r2";
        if (j > 0) {
            if (!factors.empty()) factors += "*";
            factors += "r3q";
            if (j > 1) factors += "^" + std::to_string(j);
        }
        Rational mag = abs(c);
        std::string term;
        if (factors.empty())
            term = s3e::to_string(mag);
        else if (mag == 1)
            term = factors;
        else
            term = s3e::to_string(mag) + "*" + factors;
        if (first) {
            out = (sgn(c) < 0 ? "-" : "") + term;
            first = false;
        } else {
            out += (sgn(c) < 0 ? " - " : " + ") + term;
        }
    }
    return first ? "0" : out;
}

namespace {

class RadicalParser {
public:
    explicit RadicalParser(std::string_view text) : s_(text) {}

    RadicalScalar parse() {
        RadicalScalar v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("radical expression: " + msg + " in '" + std::string(s_) + "'", 1, pos_ + 1);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool accept_word(std::string_view w) {
        skip();
        if (s_.substr(pos_, w.size()) == w) {
            std::size_t end = pos_ + w.size();
            if (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_'))
                return false;
            pos_ = end;
            return true;
        }
        return false;
    }

    Integer integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return Integer(std::string(s_.substr(start, pos_ - start)), 10);
    }

    RadicalScalar expr() {
        RadicalScalar v = term();
        for (;;) {
            if (accept('+'))
                v += term();
            else if (accept('-'))
                v -= term();
            else
                return v;
        }
    }

    RadicalScalar term() {
        RadicalScalar v = unary();
        for (;;) {
            if (accept('*')) {
                v *= unary();
            } else if (accept('/')) {
                RadicalScalar d = unary();
                if (d.is_zero()) fail("division by zero");
                v /= d;
            } else {
                return v;
            }
        }
    }

    RadicalScalar unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    // exponent: INT | -INT | ( [-]INT [/INT] )
    Rational exponent() {
        if (accept('(')) {
            bool neg = accept('-');
            Integer p = integer();
            Integer q = 1;
            if (accept('/')) q = integer();
            if (!accept(')')) fail("expected ')'");
            if (q == 0) fail("zero exponent denominator");
            Rational e(neg ? Integer(-p) : p, q);
            e.canonicalize();
            return e;
        }
        bool neg = accept('-');
        Integer p = integer();
        return Rational(neg ? Integer(-p) : p);
    }

    RadicalScalar power() {
        skip();
        std::size_t start = pos_;
        bool literal = pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
        RadicalScalar base = atom();
        if (!accept('^')) return base;
        Rational e = exponent();
        if (e.get_den() == 1) {
            if (!e.get_num().fits_sint_p()) fail("exponent too large");
            return base.pow(static_cast<int>(e.get_num().get_si()));
        }
        // fractional exponents only on the literal bases 2 and 3
        if (!literal || !base.is_rational()) {
            pos_ = start;
            fail("fractional exponent needs base 2 or 3");
        }
        const Rational& b = base.rational_part();
        const Rational e2 = 2 * e;
        const Rational e4 = 4 * e;
        if (b == 2 && e2.get_den() == 1) {
            long k = e2.get_num().get_si();
            return RadicalScalar::sqrt2().pow(static_cast<int>(k));
        }
        if (b == 3 && e4.get_den() == 1) {
            long k = e4.get_num().get_si();
            return RadicalScalar::qroot3().pow(static_cast<int>(k));
        }
        fail("exponent leaves Q(sqrt2, 3^(1/4))");
    }

    RadicalScalar atom() {
        skip();
        if (accept('(')) {
            RadicalScalar v = expr();
            if (!accept(')')) fail("expected ')'");
            return v;
        }
        if (accept_word("sqrt2") || accept_word("r2")) return RadicalScalar::sqrt2();
        if (accept_word("sqrt3")) return RadicalScalar::sqrt3();
        if (accept_word("r3q")) return RadicalScalar::qroot3();
        if (accept_word("sqrt")) {
            if (!accept('(')) fail("expected '(' after sqrt");
            Integer n = integer();
            if (!accept(')')) fail("expected ')'");
            if (n == 2) return RadicalScalar::sqrt2();
            if (n == 3) return RadicalScalar::sqrt3();
            if (n == 1) return RadicalScalar(1L);
            if (n == 0) return RadicalScalar();
            Integer r = iroot(n, 2);
            if (r * r == n) return RadicalScalar(Rational(r));
            fail("sqrt argument outside Q(sqrt2, 3^(1/4))");
        }
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            return RadicalScalar(Rational(integer()));
        }
        fail("expected number, constant or '('");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

RadicalScalar RadicalScalar::parse(std::string_view text) { return RadicalParser(text).parse(); }

std::optional<Rational> rational_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    Rational r(q);
    if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t())) return std::nullopt;
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
    return Rational(n, d);
}

std::optional<RadicalScalar> radical_sqrt(const RadicalScalar& x) {
    if (x.is_zero()) return RadicalScalar();
    int nonzero = -1;
    for (int k = 0; k < RadicalScalar::kDim; ++k) {
        if (is_zero(x[k])) continue;
        if (nonzero >= 0) return std::nullopt;
        nonzero = k;
    }
    if (nonzero != 0 && nonzero != 4) return std::nullopt;
    const Rational& c = x[nonzero];
    if (sgn(c) < 0) return std::nullopt;
    // (q * 2^(i/2) * 3^(j/4))^2 = q^2 * 2^i * 3^(j/2); match the rational factor and the sqrt3 part.
    const int j_base = nonzero == 0 ? 0 : 1;
    for (int j : {j_base, j_base + 2})
        for (int i : {0, 1}) {
            Rational scale = Rational(i ? 2 : 1) * Rational(j >= 2 ? 3 : 1);
            if (auto q = rational_sqrt(Rational(c / scale))) return RadicalScalar::basis(i, j) * *q;
        }
    return std::nullopt;
}

}  // namespace s3e
