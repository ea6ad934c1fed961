#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace s3e {

using Integer = mpz_class;
using Rational = mpq_class;

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// Accepts "p" or "p/q" (optional leading sign); result is canonical.
Rational parse_rational(std::string_view text);

/// Integer k-th root floor for k >= 1, x >= 0.
Integer iroot(const Integer& x, unsigned long k);

}  // namespace s3e
