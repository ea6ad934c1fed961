#pragma once

#include "s3e/exactnum/radical.hpp"
#include "s3e/poly/poly.hpp"
#include "s3e/poly/system.hpp"
#include "s3e/varsys/laurent.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace s3e {

enum class ChartCase { general, trace2, z2xz2, z2, z2_mu_fixed };

/// Parameter names, index-aligned: original (a..f, x,y,z,u,v,w, alpha,beta,gamma) and
/// transformed (A..F, X,Y,Z,U,V,W, AA,BB,CC). CC is the script C of the z2 case.
const std::array<std::string, 15>& original_names();
const std::array<std::string, 15>& transformed_names();

/// One symmetry case: which off-diagonal parameters survive and the variable order used
/// for Groebner computations (the multiplier is MU, or mu in original coordinates).
struct MetricChart {
    ChartCase kind = ChartCase::general;
    std::optional<RadicalScalar> mu0;      // z2_mu_fixed only
    std::vector<std::size_t> free_params;  // indices into the name arrays, diagonals first
    std::vector<std::size_t> zeroed_params;
    VarTablePtr free_vars;    // transformed names of free_params plus MU, in elimination order
    VarTablePtr system_vars;  // variables of the variational system (trace2 drops X, AA, BB)

    static MetricChart general();
    static MetricChart trace2();
    static MetricChart z2xz2();
    static MetricChart z2();
    static MetricChart z2_mu_fixed(const RadicalScalar& mu0);
    /// "general", "trace2", "z2xz2", "z2", or "z2-mu=<scalar>". Throws ParseError.
    static MetricChart from_case(std::string_view text);

    std::string label() const;
    bool is_free(std::size_t param) const;
    /// Variable order the paper used for the grevlex run of the z2 system.
    static VarTablePtr z2_grevlex_vars();
};

/// For an off-diagonal parameter index, the diagonal index that divides it in the
/// transform (X = x/a, U = u/b, V = v/c, ...).
std::size_t transform_divisor(std::size_t param);

/// Original <-> transformed coordinates restricted to a chart; zeroed parameters map to 0.
struct TransformSpec {
    MetricChart chart;

    std::array<double, 15> forward(const std::array<double, 15>& original) const;
    std::array<double, 15> inverse(const std::array<double, 15>& transformed) const;
    std::array<RadicalScalar, 15> forward_exact(const std::array<RadicalScalar, 15>& original) const;
    /// nullopt when a square root leaves the field or a diagonal value is not positive.
    std::optional<std::array<RadicalScalar, 15>> inverse_exact(const std::array<RadicalScalar, 15>& transformed) const;
};

/// The rational expression for S in the 15 original parameters, over `vars`
/// (which must contain the original names).
LaurentPoly scalar_curvature_laurent(const VarTablePtr& vars);

/// S in transformed coordinates, over chart.free_vars.
QPoly build_scalar_curvature(const MetricChart& chart);

/// Constraint ABCDEF - 1 followed by the gradient equations of the free variables,
/// each made primitive. Diagonal equations are dS/dQ + MU * d(ABCDEF)/dQ, which on the
/// constraint surface agrees with dS/dQ - MU * dV/dQ for V = (ABCDEF)^-1.
PolySystem build_variational_system(const MetricChart& chart);

/// The trace-two system in original coordinates (a..f, mu): q*dS/dq + mu*V cleared by the
/// smallest monomial, plus abcdef - 1.
PolySystem build_trace2_original_system();

/// Exact check that the transformed and original trace-two equations agree: for each
/// diagonal Q, Q*eq_Q pulled back to original coordinates equals the average of the two
/// corresponding original equations up to MU*(P - 1/P), P = abcdef.
struct ConsistencyReport {
    bool ok = true;
    std::vector<std::string> failures;
};
ConsistencyReport check_trace2_consistency();

struct FixtureMatch {
    bool ok = false;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // generated index -> fixture index
    std::vector<std::size_t> unmatched_generated;
    std::vector<std::size_t> unmatched_fixture;
    std::string message;
};

/// Bijection between the two systems where matched polynomials differ by a nonzero
/// rational factor. Variable tables must hold the same names (order may differ).
FixtureMatch match_against_fixture(const PolySystem& generated, const PolySystem& fixture);

}  // namespace s3e
