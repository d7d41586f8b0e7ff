#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "spindirac/error.hpp"
#include "spindirac/exact_spectra.hpp"

namespace spindirac {

enum class BoundaryPhase { periodic, antiperiodic };

inline BoundaryPhase boundary_phase(int eps_t)
{
    return eps_t == 0 ? BoundaryPhase::periodic : BoundaryPhase::antiperiodic;
}

// Fourier differentiation on n equispaced points of [0, period), n even.
// Periodic: frequencies (2pi/period) k, |k| < n/2 (the Nyquist column is dropped).
// Antiperiodic: frequencies (2pi/period)(k + 1/2), k = -n/2 .. n/2 - 1.
// Both matrices are real and exactly antisymmetric.
inline Eigen::MatrixXd fourier_derivative(int n, double period, BoundaryPhase phase)
{
    require(n >= 2 && n % 2 == 0, "grid size must be even");
    require(period > 0.0 && std::isfinite(period), "period must be positive");
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    const double scale = pi / period;
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            const int m = j - k;
            const double sign = (m % 2 == 0) ? 1.0 : -1.0;
            const double x = pi * m / n;
            const double entry = phase == BoundaryPhase::periodic ? scale * sign / std::tan(x) : scale * sign / std::sin(x);
            d(j, k) = entry;
            d(k, j) = -entry;
        }
    }
    return d;
}

// Unit alternating vector (-1)^j / sqrt(n), the grid restriction of the Nyquist mode.
inline Eigen::VectorXd nyquist_vector(int n)
{
    Eigen::VectorXd q(n);
    for (int j = 0; j < n; ++j) q(j) = (j % 2 == 0 ? 1.0 : -1.0) / std::sqrt(static_cast<double>(n));
    return q;
}

} // namespace spindirac
