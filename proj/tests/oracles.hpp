// Test-only oracles, kept independent of the library code paths they check.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <utility>

#include "toricci/lattice.hpp"
#include "toricci/pfaffian.hpp"

namespace toricci::testing {

/// Clean-Ising partition function on the torus by transfer matrix:
/// T(s, s') = exp(J sum_x s_x s_{x+1}) * exp(J sum_x s_x s'_x), Z = tr T^ly.
inline double transfer_matrix_partition(int lx, int ly, double j) {
    const int dim = 1 << lx;
    auto spin = [&](int conf, int x) {
        return (conf >> (x % lx)) & 1 ? -1.0 : 1.0;
    };
    Eigen::MatrixXd t(dim, dim);
    for (int a = 0; a < dim; ++a) {
        double row = 0.0;
        for (int x = 0; x < lx; ++x) row += spin(a, x) * spin(a, x + 1);
        if (lx == 1) row = 1.0;  // single self-loop bond per row
        for (int b = 0; b < dim; ++b) {
            double vert = 0.0;
            for (int x = 0; x < lx; ++x) vert += spin(a, x) * spin(b, x);
            t(a, b) = std::exp(j * row + j * vert);
        }
    }
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(dim, dim);
    for (int y = 0; y < ly; ++y) power = power * t;
    return power.trace();
}

/// Signed-log determinant via LU, the independent side of Pf^2 = det.
inline std::pair<int, double> lu_det_signed_log(const SkewMatrix& m) {
    const auto n = static_cast<Eigen::Index>(m.dim());
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = m(i, j);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    int sign = lu.permutationP().determinant() > 0 ? 1 : -1;
    double log_abs = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double d = lu.matrixLU()(i, i);
        if (d == 0.0) return {0, 0.0};
        if (d < 0) sign = -sign;
        log_abs += std::log(std::abs(d));
    }
    return {sign, log_abs};
}

inline double self_dual_error_rate() {
    return 0.5 * (1.0 - std::sqrt(std::sqrt(2.0) - 1.0));
}

}  // namespace toricci::testing
