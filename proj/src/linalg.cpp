#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "errors.hpp"

namespace cdsar {

// Classic cyclic Jacobi: sweep the (p, q) upper-triangle pairs, each rotation
// annihilating one off-diagonal entry.  Quadratic convergence once the
// off-diagonal mass is small; 30 sweeps is far beyond what 4x4 ever needs.
EigenSym4 eigen_sym4(const std::array<std::array<double, 4>, 4>& m) {
    double a[4][4];
    double v[4][4] = {};
    double max_abs = 0.0;
    for (int i = 0; i < 4; ++i) {
        v[i][i] = 1.0;
        for (int j = 0; j < 4; ++j) {
            if (!std::isfinite(m[i][j]))
                throw std::invalid_argument("matrix entries must be finite");
            a[i][j] = 0.5 * (m[i][j] + m[j][i]);
            max_abs = std::max(max_abs, std::abs(a[i][j]));
        }
    }

    const double tol = 1e-15 * std::max(max_abs, 1.0);
    bool converged = false;
    for (int sweep = 0; sweep < 30 && !converged; ++sweep) {
        converged = true;
        for (int p = 0; p < 3; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                const double apq = a[p][q];
                if (std::abs(apq) <= tol) continue;
                converged = false;
                const double theta = 0.5 * (a[q][q] - a[p][p]) / apq;
                // Smaller-angle root of t^2 + 2 theta t - 1 = 0.
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (int k = 0; k < 4; ++k) {
                    const double akp = a[k][p];
                    const double akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 4; ++k) {
                    const double apk = a[p][k];
                    const double aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for (int k = 0; k < 4; ++k) {
                    const double vkp = v[k][p];
                    const double vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if (!converged) throw numeric_error("Jacobi iteration failed to converge");

    EigenSym4 out;
    std::array<int, 4> order{0, 1, 2, 3};
    std::array<double, 4> diag{a[0][0], a[1][1], a[2][2], a[3][3]};
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (diag[x] != diag[y]) return diag[x] > diag[y];
        return x < y; // stable tie order keeps results platform-independent
    });
    for (int k = 0; k < 4; ++k) {
        out.values[k] = diag[order[k]];
        for (int i = 0; i < 4; ++i) out.vectors[k][i] = v[i][order[k]];
    }
    return out;
}

} // namespace cdsar
