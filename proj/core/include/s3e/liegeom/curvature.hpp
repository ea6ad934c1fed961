#pragma once

#include <array>
#include <optional>
#include <stdexcept>

namespace s3e {

using Mat6 = std::array<std::array<double, 6>, 6>;

/// Structure constants c[i][j][k]: component of [e_i, e_j] along e_k.
struct LieAlgebra {
    std::array<std::array<std::array<double, 6>, 6>, 6> c{};
    double kappa = 1.0;
};

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The 15 metric parameters. Row i of matrix() holds the components of the i-th
/// g-orthonormal vector (X1,X2,X3,Y1,Y2,Y3) in the basis (E1,E2,E3,F1,F2,F3).
struct BasisChange {
    double a = 1, b = 1, c = 1, d = 1, e = 1, f = 1;
    double x = 0, y = 0, z = 0, u = 0, v = 0, w = 0;
    double alpha = 0, beta = 0, gamma = 0;

    Mat6 matrix() const;
    double det() const { return a * b * c * d * e * f; }
    std::array<double, 15> to_array() const;
    static BasisChange from_array(const std::array<double, 15>& p);
};

/// Parameter names in to_array() order.
const std::array<const char*, 15>& basis_change_names();

struct CurvatureReport {
    Mat6 ricci{};
    double scalar = 0;
    double volume_factor = 0;
    std::optional<double> einstein_lambda;
    double einstein_residual = 0;
    double invariant_R2 = 0;
    double ricci_asymmetry = 0;
};

/// su(2) + su(2) with [E1,E2] = kappa E3 cyclic, normalised so -B/2 is the identity.
const LieAlgebra& structure_constants_normalized();

/// Killing form B(e_i, e_j) = tr(ad e_i ad e_j).
Mat6 killing_form(const LieAlgebra& g);

/// Largest |Jacobi identity| defect over all basis triples.
double jacobi_defect(const LieAlgebra& g);

/// Koszul computation in the g-orthonormal frame. If lambda is given the residual is
/// taken against it, otherwise against S/6.
CurvatureReport curvature(const BasisChange& p, std::optional<double> lambda = std::nullopt);

/// Closed-form scalar curvature in the original parameters.
double scalar_curvature_formula(const BasisChange& p);

}  // namespace s3e
