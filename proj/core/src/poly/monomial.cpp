#include "s3e/poly/monomial.hpp"

#include <unordered_set>

namespace s3e {

VarTable::VarTable(std::vector<std::string> names) : names_(std::move(names)) {
    std::unordered_set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw PolyError("empty variable name");
        if (!seen.insert(n).second) throw PolyError("duplicate variable '" + n + "'");
    }
}

std::optional<std::size_t> VarTable::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

std::size_t VarTable::index(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw PolyError("unknown variable '" + std::string(name) + "'");
}

std::string_view to_string(MonomialOrder order) { return order == MonomialOrder::lex ? "lex" : "grevlex"; }

MonomialOrder parse_order(std::string_view text) {
    if (text == "lex") return MonomialOrder::lex;
    if (text == "grevlex") return MonomialOrder::grevlex;
    throw PolyError("unknown monomial order '" + std::string(text) + "'");
}

std::optional<std::size_t> Monomial::pure_power_var() const noexcept {
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        if (!exp[i]) continue;
        if (found) return std::nullopt;
        found = i;
    }
    return found;
}

std::string monomial_to_string(const Monomial& m, const VarTable& vars) {
    std::string out;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (!m.exp[i]) continue;
        if (!out.empty()) out += '*';
        out += vars.name(i);
        if (m.exp[i] > 1) out += "^" + std::to_string(m.exp[i]);
    }
    return out.empty() ? "1" : out;
}

}  // namespace s3e
