#pragma once

#include "s3e/exactnum/rational.hpp"
#include "s3e/poly/poly.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace s3e {

/// Polynomial with integer (possibly negative) exponents over up to 32 variables.
/// Used for the rational expressions in the original metric parameters.
class LaurentPoly {
public:
    static constexpr std::size_t kMaxVars = 32;
    using Exps = std::array<std::int16_t, kMaxVars>;

    LaurentPoly() = default;
    explicit LaurentPoly(VarTablePtr vars);

    static LaurentPoly constant(VarTablePtr vars, const Rational& c);
    static LaurentPoly variable(VarTablePtr vars, std::string_view name, int power = 1);
    static LaurentPoly monomial(VarTablePtr vars, const Exps& e, const Rational& c);
    /// Embeds a polynomial whose variable names all appear in `vars`.
    static LaurentPoly from_poly(const QPoly& p, VarTablePtr vars);

    const VarTablePtr& vars() const noexcept { return vars_; }
    const std::map<Exps, Rational>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(LaurentPoly a, const Rational& c);
    friend LaurentPoly operator*(const Rational& c, LaurentPoly a) { return std::move(a) * c; }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

    LaurentPoly pow(unsigned e) const;
    /// Multiplicative inverse; only for a single term.
    LaurentPoly inverse() const;
    LaurentPoly diff(std::size_t var) const;
    LaurentPoly diff(std::string_view name) const;

    /// Replace variables by Laurent polynomials on `target` (nullopt keeps the variable,
    /// which must then exist in target by name). Negative powers need single-term values.
    LaurentPoly substitute(const std::vector<std::optional<LaurentPoly>>& values, VarTablePtr target) const;

    /// Componentwise minimum exponent over all terms (0 where all exponents are positive).
    Exps min_exponents() const;
    /// Multiply by the monomial x^e.
    LaurentPoly shifted(const Exps& e) const;
    /// Divide the exponents of the listed variables by two; throws if any is odd.
    LaurentPoly halve_exponents(std::span<const std::size_t> vars) const;

    /// Requires non-negative exponents; variables are matched to `target` by name.
    QPoly to_poly(const VarTablePtr& target, MonomialOrder order = MonomialOrder::lex) const;

    double evaluate(std::span<const double> values) const;

private:
    VarTablePtr vars_;
    std::map<Exps, Rational> terms_;
};

}  // namespace s3e
