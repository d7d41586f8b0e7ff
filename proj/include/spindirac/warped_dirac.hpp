#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "spindirac/eigensolve.hpp"
#include "spindirac/error.hpp"
#include "spindirac/lattice.hpp"
#include "spindirac/spectral_diff.hpp"
#include "spindirac/warp_profile.hpp"

namespace spindirac {

// Dirac operator of dt^2 + f^2 dtheta^2 restricted to the theta-mode e^{i nu theta},
// in the sqrt(f) gauge: H = -i sigma_1 d/dt + sigma_2 nu / f(t), acting on
// (psi_1 at the N nodes, psi_2 at the N nodes).
struct ModeOperator {
    double nu = 0.0;
    int grid_size = 0;
    int eps_t = 0;
    double period = 0.0;
    Eigen::MatrixXcd matrix;
};

namespace detail {

inline void require_grid(int n)
{
    require(n >= 8, "grid size must be at least 8");
    require(n % 2 == 0, "grid size must be even");
    require(n <= 8192, "grid size must be at most 8192");
}

// Assembles -i sigma_1 (W D W) + sigma_2 diag(nu * g) + [periodic] omega sigma_1 (W q q^T W).
// The periodic Nyquist term pairs the otherwise spurious alternating null mode
// of D with frequency omega, so the discrete spectrum keeps the continuum structure.
inline Eigen::MatrixXcd assemble_mode_matrix(const Eigen::MatrixXd& d, const Eigen::VectorXd& w, const Eigen::VectorXd& g,
                                             double nu, BoundaryPhase phase, double omega_nyquist)
{
    using namespace std::complex_literals;
    const Eigen::Index n = d.rows();
    Eigen::MatrixXd wdw = w.asDiagonal() * d * w.asDiagonal();
    Eigen::MatrixXd nyq = Eigen::MatrixXd::Zero(n, n);
    if (phase == BoundaryPhase::periodic) {
        const Eigen::VectorXd q = w.cwiseProduct(nyquist_vector(static_cast<int>(n)));
        nyq = omega_nyquist * q * q.transpose();
    }
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    Eigen::MatrixXcd upper = -1.0i * wdw.cast<std::complex<double>>() + nyq.cast<std::complex<double>>();
    upper.diagonal() += (-1.0i * nu) * g.cast<std::complex<double>>();
    h.topRightCorner(n, n) = upper;
    h.bottomLeftCorner(n, n) = upper.adjoint();
    return h;
}

} // namespace detail

inline ModeOperator build_mode_operator(const WarpProfile& profile, double nu, int eps_t, int n)
{
    detail::require_grid(n);
    require(eps_t == 0 || eps_t == 1, "eps_t must be 0 or 1");
    require(std::isfinite(nu), "mode frequency must be finite");
    const std::vector<double> f = profile.sample(n);
    const double period = profile.period();
    const BoundaryPhase phase = boundary_phase(eps_t);
    Eigen::VectorXd g(n);
    for (int j = 0; j < n; ++j) g(j) = 1.0 / f[static_cast<std::size_t>(j)];
    ModeOperator op;
    op.nu = nu;
    op.grid_size = n;
    op.eps_t = eps_t;
    op.period = period;
    op.matrix = detail::assemble_mode_matrix(fourier_derivative(n, period, phase), Eigen::VectorXd::Ones(n), g, nu, phase,
                                             pi * n / period);
    return op;
}

struct EigenEntry {
    double d2 = 0.0;
    double nu = 0.0;
    int k = 0;
    int index = 0;
};

struct EigenResult {
    std::vector<EigenEntry> entries;
    // Largest eigenpair residual of each mode, in mode order k = -kmax .. kmax.
    std::vector<double> mode_residuals;
    std::vector<double> mode_spectral_radius;
    int kmax = 0;
    int grid_size = 0;

    std::vector<double> d2_values() const
    {
        std::vector<double> v;
        v.reserve(entries.size());
        for (const auto& e : entries) v.push_back(e.d2);
        return v;
    }
};

// Eigenvalues of D below this fraction of the mode's spectral radius count as zero.
inline constexpr double zero_mode_rtol = 1e-9;

inline double lambda1_plus(const EigenResult& r)
{
    double radius = 0.0;
    for (const double s : r.mode_spectral_radius) radius = std::max(radius, s);
    const double floor = zero_mode_rtol * radius;
    for (const auto& e : r.entries) {
        if (std::sqrt(e.d2) > floor) return e.d2;
    }
    throw numerical_failure("no positive eigenvalue found");
}

namespace detail {

inline void sort_entries(std::vector<EigenEntry>& entries)
{
    std::sort(entries.begin(), entries.end(), [](const EigenEntry& a, const EigenEntry& b) {
        return std::tie(a.d2, a.nu, a.index) < std::tie(b.d2, b.nu, b.index);
    });
}

} // namespace detail

inline EigenResult warped_spectrum(const WarpProfile& profile, SpinStructure2 spin, int n, int kmax)
{
    detail::require_grid(n);
    require(kmax >= 1, "kmax must be at least 1");
    require(kmax <= 4096, "kmax must be at most 4096");
    EigenResult result;
    result.kmax = kmax;
    result.grid_size = n;
    for (int k = -kmax; k <= kmax; ++k) {
        const double nu = k + 0.5 * spin.eps2;
        const ModeOperator op = build_mode_operator(profile, nu, spin.eps1, n);
        const auto eig = eigensolve_hermitian(op.matrix);
        double worst = 0.0;
        for (const double r : eig.residuals) worst = std::max(worst, r);
        result.mode_residuals.push_back(worst);
        result.mode_spectral_radius.push_back(eig.spectral_radius);
        for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
            const double lam = eig.values(i);
            result.entries.push_back({lam * lam, nu, k, static_cast<int>(i)});
        }
    }
    detail::sort_entries(result.entries);
    return result;
}

// Smallest kmax >= 1 such that every omitted mode satisfies (nu / max f)^2 > 2 window.
// In the continuum the mode operator is W B W with W = f^{-1/2} and B the
// constant-coefficient operator in the conformal coordinate, B^2 >= nu^2, so
// |lambda| >= |nu| / max f.
inline int default_kmax(const std::vector<double>& f_samples, int eps_theta, double window)
{
    require(window > 0.0 && std::isfinite(window), "spectral window must be positive");
    require(!f_samples.empty(), "profile samples required");
    const double fmax = *std::max_element(f_samples.begin(), f_samples.end());
    const double need = std::sqrt(2.0 * window) * fmax;
    int k = 1;
    while (k + 1 - 0.5 * eps_theta <= need) {
        ++k;
        require(k <= 4096, "spectral window needs more than 4096 modes");
    }
    return k;
}

} // namespace spindirac
