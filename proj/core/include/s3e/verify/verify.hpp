#pragma once

#include "s3e/exactnum/param_ring.hpp"
#include "s3e/liegeom/curvature.hpp"
#include "s3e/solver/solver.hpp"
#include "s3e/varsys/chart.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace s3e {

class VerifyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point or one-parameter family of metrics on a chart, in original coordinates
/// (a..f, x, y, z, u, v, w, alpha, beta, gamma) plus the multiplier mu. Points carry a
/// null relation and constant values.
struct MetricSolution {
    MetricChart chart;
    RelationPtr relation;
    std::string parameter;  // transformed variable promoted to t
    std::optional<RadicalScalar> t_lo, t_hi;
    std::array<ParamRingElem, 15> original;
    ParamRingElem mu;
    std::optional<std::string> claimed_scalar;  // S as written in a table
    std::string label;

    bool is_family() const { return relation != nullptr; }
    /// Diagonal values; throws VerifyError when a diagonal depends on t.
    std::array<RadicalScalar, 6> diagonal() const;
    /// Transformed coordinates A..F, X, ..., CC (zeroed parameters are 0).
    std::array<ParamRingElem, 15> transformed() const;
    BasisChange at(double t, double s) const;
    double mu_at(double t, double s) const;
};

/// Converts solver output over chart.system_vars (or the original trace-two variables
/// a..f, mu) into original coordinates.
MetricSolution from_point(const SolutionPoint& p, const MetricChart& chart);
MetricSolution from_family(const SolutionFamily& f, const MetricChart& chart);

struct ExactReport {
    bool ok = true;
    std::vector<std::string> residuals;  // per system polynomial
    std::vector<std::size_t> failing;
    std::string scalar;                  // exact S (text)
    std::optional<bool> scalar_matches;  // against claimed_scalar
    std::string message;
};

/// Substitutes the solution into every polynomial of the system (whose variables may be
/// transformed names, original names, MU or mu) and evaluates S exactly.
ExactReport exact_verify(const MetricSolution& sol, const PolySystem& system);

/// Exact S of the solution as an element of the parametric ring.
ParamRingElem exact_scalar_curvature(const MetricSolution& sol);

struct Thresholds {
    double ricci = 1e-9;
    double scalar = 1e-9;
    double multiplier = 1e-9;
    double volume = 1e-12;
};

struct SampleCertificate {
    double t = 0, s = 0;
    CurvatureReport report;
    double lambda = 0;           // -mu/2
    double ricci_residual = 0;   // max |Ric - lambda Id|
    double scalar_residual = 0;  // |S - 6 lambda|
    double multiplier_residual = 0;  // |mu + 2 S/6|
    double volume_residual = 0;  // |abcdef - 1|
    bool ok = false;
    std::string failure;
};

struct Certificate {
    bool ok = true;
    std::vector<SampleCertificate> samples;
};

/// Parameter samples of a family: both endpoints and k interior points, each with both
/// signs of s where s is nonzero. A point yields the single sample (0, 0).
std::vector<std::pair<double, double>> family_samples(const MetricSolution& sol, int k);

Certificate certify_einstein(const MetricSolution& sol, int samples = 5, const Thresholds& th = {});

enum class MetricLabel { standard, nearly_kahler, unknown };
std::string_view to_string(MetricLabel label);

struct ReferenceMetric {
    MetricLabel label;
    double scalar;
    double invariant_R2;
};

/// S and |R|^2 of g_can and g_NK, computed once with the curvature oracle.
const std::array<ReferenceMetric, 2>& reference_metrics();

/// Matches (S, |R|^2) against the references within relative tolerance.
MetricLabel classify(const CurvatureReport& report, double rel_tol = 1e-8);

/// Solutions file: "# key: value" header lines, then records
///
///     point | family
///       name = value      (original names, mu, S, relation, domain, parameter, label)
///     end
struct SolutionsFile {
    std::map<std::string, std::string> header;
    std::vector<MetricSolution> solutions;
};

std::string format_solutions(const SolutionsFile& file);
/// The chart comes from the "case" header. Throws ParseError.
SolutionsFile parse_solutions(std::string_view text);

/// Table in the column order a..f, the chart's free off-diagonals, mu, S.
std::string render_table(const std::vector<MetricSolution>& sols);

}  // namespace s3e
