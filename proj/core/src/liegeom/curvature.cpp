#include "s3e/liegeom/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace s3e {

namespace {

using Tensor3 = std::array<std::array<std::array<double, 6>, 6>, 6>;

LieAlgebra make_algebra() {
    // With [E1,E2] = k E3 cyclic, B(E_i,E_i) = -2k^2, so Q = -B/2 orthonormal needs k^2 = 1.
    // Orientation leaves the sign free; k = +1 is used.
    LieAlgebra g;
    g.kappa = 1.0;
    for (int off : {0, 3}) {
        for (int i = 0; i < 3; ++i) {
            int j = (i + 1) % 3;
            int k = (i + 2) % 3;
            g.c[off + i][off + j][off + k] = g.kappa;
            g.c[off + j][off + i][off + k] = -g.kappa;
        }
    }
    return g;
}

Mat6 inverse_lower_block(const BasisChange& p) {
    // A = [[D,0],[W,Dt]] so A^{-1} = [[D^{-1},0],[-Dt^{-1} W D^{-1}, Dt^{-1}]].
    Mat6 A = p.matrix();
    Mat6 inv{};
    for (int i = 0; i < 6; ++i) inv[i][i] = 1.0 / A[i][i];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) inv[3 + i][j] = -inv[3 + i][3 + i] * A[3 + i][j] * inv[j][j];
    return inv;
}

}  // namespace

Mat6 BasisChange::matrix() const {
    Mat6 m{};
    m[0][0] = a;
    m[1][1] = b;
    m[2][2] = c;
    m[3] = {x, u, v, d, 0, 0};
    m[4] = {alpha, y, w, 0, e, 0};
    m[5] = {beta, gamma, z, 0, 0, f};
    return m;
}

std::array<double, 15> BasisChange::to_array() const {
    return {a, b, c, d, e, f, x, y, z, u, v, w, alpha, beta, gamma};
}

BasisChange BasisChange::from_array(const std::array<double, 15>& q) {
    BasisChange p;
    p.a = q[0], p.b = q[1], p.c = q[2], p.d = q[3], p.e = q[4], p.f = q[5];
    p.x = q[6], p.y = q[7], p.z = q[8], p.u = q[9], p.v = q[10], p.w = q[11];
    p.alpha = q[12], p.beta = q[13], p.gamma = q[14];
    return p;
}

const std::array<const char*, 15>& basis_change_names() {
    static const std::array<const char*, 15> names = {"a", "b", "c", "d", "e", "f", "x", "y",
                                                      "z", "u", "v", "w", "alpha", "beta", "gamma"};
    return names;
}

const LieAlgebra& structure_constants_normalized() {
    static const LieAlgebra g = make_algebra();
    return g;
}

Mat6 killing_form(const LieAlgebra& g) {
    // (ad e_i)_{kl} = c[i][l][k]
    Mat6 B{};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            double t = 0;
            for (int k = 0; k < 6; ++k)
                for (int l = 0; l < 6; ++l) t += g.c[i][l][k] * g.c[j][k][l];
            B[i][j] = t;
        }
    return B;
}

double jacobi_defect(const LieAlgebra& g) {
    double worst = 0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            for (int k = 0; k < 6; ++k)
                for (int m = 0; m < 6; ++m) {
                    double t = 0;
                    for (int l = 0; l < 6; ++l)
                        t += g.c[j][k][l] * g.c[i][l][m] + g.c[k][i][l] * g.c[j][l][m] + g.c[i][j][l] * g.c[k][l][m];
                    worst = std::max(worst, std::abs(t));
                }
    return worst;
}

CurvatureReport curvature(const BasisChange& p, std::optional<double> lambda) {
    if (!(p.a > 0 && p.b > 0 && p.c > 0 && p.d > 0 && p.e > 0 && p.f > 0))
        throw GeometryError("curvature: diagonal parameters must be positive");
    const LieAlgebra& g = structure_constants_normalized();
    const Mat6 A = p.matrix();
    const Mat6 Ainv = inverse_lower_block(p);

    // C[i][j][k]: [b_i, b_j] = sum_k C b_k with b_i = sum_p A_ip e_p.
    Tensor3 C{};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            std::array<double, 6> br{};
            for (int s = 0; s < 6; ++s) {
                if (A[i][s] == 0) continue;
                for (int t = 0; t < 6; ++t) {
                    if (A[j][t] == 0) continue;
                    for (int r = 0; r < 6; ++r) br[r] += A[i][s] * A[j][t] * g.c[s][t][r];
                }
            }
            for (int k = 0; k < 6; ++k) {
                double v = 0;
                for (int r = 0; r < 6; ++r) v += br[r] * Ainv[r][k];
                C[i][j][k] = v;
            }
        }

    // nabla_{b_i} b_j = sum_k G[i][j][k] b_k
    Tensor3 G{};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            for (int k = 0; k < 6; ++k) G[i][j][k] = 0.5 * (C[i][j][k] - C[j][k][i] + C[k][i][j]);

    // R(b_i,b_j) b_k = sum_m R[i][j][k][m] b_m,  R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]
    CurvatureReport rep;
    Mat6& ric = rep.ricci;
    double r2 = 0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            for (int k = 0; k < 6; ++k)
                for (int m = 0; m < 6; ++m) {
                    double v = 0;
                    for (int l = 0; l < 6; ++l)
                        v += G[j][k][l] * G[i][l][m] - G[i][k][l] * G[j][l][m] - C[i][j][l] * G[l][k][m];
                    r2 += v * v;
                    if (m == i) ric[j][k] += v;
                }
    rep.invariant_R2 = r2;

    double s = 0;
    for (int i = 0; i < 6; ++i) s += ric[i][i];
    rep.scalar = s;
    rep.volume_factor = 1.0 / p.det();
    rep.einstein_lambda = lambda ? *lambda : s / 6.0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            double target = i == j ? *rep.einstein_lambda : 0.0;
            rep.einstein_residual = std::max(rep.einstein_residual, std::abs(ric[i][j] - target));
            rep.ricci_asymmetry = std::max(rep.ricci_asymmetry, std::abs(ric[i][j] - ric[j][i]));
        }
    return rep;
}

double scalar_curvature_formula(const BasisChange& p) {
    const double a2 = p.a * p.a, b2 = p.b * p.b, c2 = p.c * p.c;
    const double d2 = p.d * p.d, e2 = p.e * p.e, f2 = p.f * p.f;
    const double x = p.x, y = p.y, z = p.z, u = p.u, v = p.v, w = p.w;
    const double al = p.alpha, be = p.beta, ga = p.gamma;
    const double def = p.d * p.e / p.f, dfe = p.d * p.f / p.e, efd = p.e * p.f / p.d;
    auto sq = [](double t) { return t * t; };

    double quad = a2 + b2 + c2 + d2 + e2 + f2 + x * x + y * y + z * z + u * u + v * v + w * w + al * al + be * be +
                  ga * ga;
    double br = a2 * b2 / c2 + b2 * c2 / a2 + c2 * a2 / b2 + d2 * e2 / f2 + e2 * f2 / d2 + f2 * d2 / e2;
    br += (a2 / c2 + c2 / a2) * (u * u + y * y + ga * ga);
    br += (a2 / b2 + b2 / a2) * (v * v + w * w + z * z);
    br += (b2 / c2 + c2 / b2) * (x * x + al * al + be * be);
    br += (sq(u * w - v * y - def * be) + sq(v * ga - u * z - dfe * al) + sq(y * z - w * ga - efd * x)) / a2;
    br += (sq(v * al - x * w - def * ga) + sq(x * z - v * be - dfe * y) + sq(w * be - z * al - efd * u)) / b2;
    br += (sq(x * y - u * al - def * z) + sq(u * be - x * ga - dfe * w) + sq(al * ga - y * be - efd * v)) / c2;
    return quad - 0.5 * br;
}

}  // namespace s3e
