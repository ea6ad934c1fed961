#pragma once

#include "s3e/poly/system.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace s3e {

enum class SelectionStrategy {
    normal,  // smallest lcm (total degree, then term order) first
    sugar,   // smallest sugar degree first
};

struct GroebnerOptions {
    MonomialOrder order = MonomialOrder::lex;
    SelectionStrategy strategy = SelectionStrategy::sugar;
    std::uint64_t max_pairs = 1'000'000;
    double max_seconds = 0.0;  // 0 disables the wall-clock limit
    bool full_reduction = true;  // reduce tails of new elements too (else only at the end)
};

struct GroebnerStats {
    std::uint64_t pairs_processed = 0;
    std::uint64_t zero_reductions = 0;
    std::uint64_t pairs_discarded = 0;  // removed by the product and chain criteria
    std::uint64_t reduction_steps = 0;
    std::size_t max_basis_size = 0;
    double seconds = 0.0;
};

/// Reduced Groebner basis: minimal, fully inter-reduced, monic.
struct GroebnerBasis {
    VarTablePtr vars;
    MonomialOrder order = MonomialOrder::lex;
    std::vector<QPoly> polys;
    GroebnerStats stats;
    std::string label;

    /// Basis as a system, for serialization.
    PolySystem as_system() const;
};

/// Thrown when the pair or time budget runs out; carries the partial state.
class BudgetExhausted : public std::runtime_error {
public:
    BudgetExhausted(const std::string& what, GroebnerStats stats, std::vector<QPoly> partial,
                    std::size_t pairs_pending)
        : std::runtime_error(what), stats_(stats), partial_(std::move(partial)), pending_(pairs_pending) {}

    const GroebnerStats& stats() const noexcept { return stats_; }
    const std::vector<QPoly>& partial_basis() const noexcept { return partial_; }
    std::size_t pairs_pending() const noexcept { return pending_; }

private:
    GroebnerStats stats_;
    std::vector<QPoly> partial_;
    std::size_t pending_;
};

/// Normal form of p modulo basis under `order` (full reduction over Q).
QPoly reduce(const QPoly& p, std::span<const QPoly> basis, MonomialOrder order);

QPoly s_polynomial(const QPoly& f, const QPoly& g);

GroebnerBasis buchberger(const PolySystem& system, const GroebnerOptions& options = {});

/// Elements of a lex basis that only involve the last `keep_last_k` variables.
std::vector<QPoly> elimination_ideal(const GroebnerBasis& basis, std::size_t keep_last_k);

struct DimensionVerdict {
    bool zero_dimensional = false;
    bool inconsistent = false;  // basis is {1}: empty variety
    std::vector<std::string> missing_vars;
};

/// Finiteness test: zero-dimensional iff each variable has a pure power among the leading monomials.
DimensionVerdict finiteness_test(const GroebnerBasis& basis);

/// Checks that sampled S-polynomials reduce to zero. Returns the number of failing pairs.
std::size_t spot_check_s_pairs(const GroebnerBasis& basis, std::size_t samples, std::uint64_t seed);

/// Serialization: system format plus "# pairs:" and "# zero_reductions:" lines (an optional
/// "# seconds:" line is accepted when parsing).
std::string format_basis(const GroebnerBasis& basis);
GroebnerBasis parse_basis(std::string_view text);

}  // namespace s3e
