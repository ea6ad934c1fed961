#pragma once

#include "s3e/exactnum/param_ring.hpp"
#include "s3e/groebner/groebner.hpp"
#include "s3e/solver/roots.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace s3e {

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact solution; values[i] belongs to vars->name(i).
struct SolutionPoint {
    VarTablePtr vars;
    std::vector<RadicalScalar> values;
    Rational residual_bound;  // exact recognition: 0

    const RadicalScalar& at(std::string_view name) const { return values.at(vars->index(name)); }
};

/// One-parameter family over Q(sqrt2, 3^(1/4))[t, s] / (relation). Both signs of s are
/// covered by one family.
struct SolutionFamily {
    VarTablePtr vars;
    std::string parameter_var;  // system variable promoted to t
    RelationPtr relation;
    std::optional<RadicalScalar> domain_lo, domain_hi;  // real t with s real
    std::vector<ParamRingElem> values;

    const ParamRingElem& at(std::string_view name) const { return values.at(vars->index(name)); }
};

/// Branch that produced a real root outside the field; reported, not followed.
struct UnresolvedBranch {
    std::string var;
    std::string reason;
    std::vector<std::pair<std::string, std::string>> partial;  // assigned so far, as text
};

struct SolveOptions {
    std::vector<std::string> positive;                  // variables required > 0
    std::map<std::string, RadicalScalar> fixed;         // variables required to equal a value
    std::vector<std::string> family_vars;               // candidates for promotion (finiteness verdict)
};

struct BackSubstitution {
    std::vector<SolutionPoint> points;
    std::vector<SolutionFamily> families;
    std::vector<UnresolvedBranch> unresolved;
    std::size_t discarded_sign = 0;    // violated positivity
    std::size_t discarded_filter = 0;  // violated a fixed value
};

/// Triangular solve of a reduced lex basis from the last variable upward. A variable is
/// promoted to the family parameter only if it is listed in options.family_vars and every
/// specialised basis element at its level vanishes; otherwise such a level is an error
/// ("ambiguous specialization").
BackSubstitution back_substitute(const GroebnerBasis& basis, const SolveOptions& options);

/// Exact residuals of a point; all zero iff the point solves the system.
std::vector<RadicalScalar> point_residuals(const SolutionPoint& p, const PolySystem& system);

struct FamilyReport {
    bool ok = true;
    std::vector<std::string> residuals;  // reduced residual per system polynomial
    std::vector<std::size_t> failing;    // indices of nonzero residuals
};

/// Substitutes the family into every polynomial and reduces modulo its relation.
FamilyReport verify_family(const SolutionFamily& family, const PolySystem& system);

/// Values on another table holding the same names (missing names are an error).
SolutionPoint rebase(const SolutionPoint& p, const VarTablePtr& vars);
SolutionFamily rebase(const SolutionFamily& f, const VarTablePtr& vars);

}  // namespace s3e
