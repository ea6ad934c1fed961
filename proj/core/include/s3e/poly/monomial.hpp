#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace s3e {

inline constexpr std::size_t kMaxVars = 16;

class PolyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Ordered variable names; position 0 is the largest variable under lex. Polynomials
/// accept at most kMaxVars of them.
class VarTable {
public:
    VarTable() = default;
    explicit VarTable(std::vector<std::string> names);
    VarTable(std::initializer_list<std::string> names) : VarTable(std::vector<std::string>(names)) {}

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    std::optional<std::size_t> find(std::string_view name) const;
    /// Throws PolyError for unknown names.
    std::size_t index(std::string_view name) const;

    friend bool operator==(const VarTable& a, const VarTable& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

inline VarTablePtr make_vars(std::vector<std::string> names) {
    return std::make_shared<const VarTable>(std::move(names));
}

inline bool same_vars(const VarTablePtr& a, const VarTablePtr& b) {
    return a == b || (a && b && *a == *b);
}

enum class MonomialOrder { lex, grevlex };

std::string_view to_string(MonomialOrder order);
MonomialOrder parse_order(std::string_view text);

/// Dense exponent vector over at most kMaxVars variables.
struct Monomial {
    std::array<std::uint16_t, kMaxVars> exp{};
    std::uint32_t deg = 0;

    static Monomial var(std::size_t i, unsigned power = 1) {
        Monomial m;
        m.exp[i] = static_cast<std::uint16_t>(power);
        m.deg = power;
        return m;
    }

    bool is_one() const noexcept { return deg == 0; }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exp == b.exp; }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint16_t>(a.exp[i] + b.exp[i]);
        r.deg = a.deg + b.deg;
        return r;
    }

    /// True when this divides other.
    bool divides(const Monomial& other) const noexcept {
        if (deg > other.deg) return false;
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (exp[i] > other.exp[i]) return false;
        return true;
    }

    /// other / this; caller guarantees divisibility.
    Monomial quotient_of(const Monomial& other) const noexcept {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint16_t>(other.exp[i] - exp[i]);
        r.deg = other.deg - deg;
        return r;
    }

    friend Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            r.exp[i] = a.exp[i] > b.exp[i] ? a.exp[i] : b.exp[i];
            r.deg += r.exp[i];
        }
        return r;
    }

    friend bool coprime(const Monomial& a, const Monomial& b) {
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (a.exp[i] && b.exp[i]) return false;
        return true;
    }

    /// Index of the only variable with positive exponent, if the monomial is a pure power.
    std::optional<std::size_t> pure_power_var() const noexcept;
};

/// Three-way comparison (-1, 0, 1) under the given order.
inline int compare(const Monomial& a, const Monomial& b, MonomialOrder order, std::size_t nvars) noexcept {
    if (order == MonomialOrder::lex) {
        for (std::size_t i = 0; i < nvars; ++i)
            if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? 1 : -1;
        return 0;
    }
    if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
    for (std::size_t i = nvars; i-- > 0;)
        if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
    return 0;
}

std::string monomial_to_string(const Monomial& m, const VarTable& vars);

}  // namespace s3e
