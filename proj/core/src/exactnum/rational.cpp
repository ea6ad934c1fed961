#include "s3e/exactnum/rational.hpp"

#include <cctype>

namespace s3e {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(line == 0 ? what
                                   : what + " (line " + std::to_string(line) + ", column " +
                                         std::to_string(column) + ")"),
      line_(line),
      column_(column) {}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
    std::size_t pos = 0;
    auto digits = [&](std::size_t from) {
        std::size_t end = from;
        while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
        if (end == from) throw ParseError("expected digits in rational '" + std::string(text) + "'");
        return end;
    };
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        negative = text[pos] == '-';
        ++pos;
    }
    std::size_t end = digits(pos);
    Integer num(std::string(text.substr(pos, end - pos)), 10);
    Integer den = 1;
    pos = end;
    if (pos < text.size() && text[pos] == '/') {
        end = digits(pos + 1);
        den = Integer(std::string(text.substr(pos + 1, end - pos - 1)), 10);
        pos = end;
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    if (pos != text.size()) throw ParseError("trailing characters in rational '" + std::string(text) + "'");
    Rational q(negative ? Integer(-num) : num, den);
    q.canonicalize();
    return q;
}

Integer iroot(const Integer& x, unsigned long k) {
    Integer r;
    mpz_root(r.get_mpz_t(), x.get_mpz_t(), k);
    return r;
}

}  // namespace s3e
