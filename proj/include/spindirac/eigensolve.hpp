#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spindirac/error.hpp"

namespace spindirac {

template <class Scalar>
struct HermitianEigen {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Eigen::VectorXd values;
    Matrix vectors;
    std::vector<double> residuals;
    double spectral_radius = 0.0;
};

template <class Derived>
double hermitian_defect(const Eigen::MatrixBase<Derived>& a)
{
    if (a.rows() == 0) return 0.0;
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

template <class Derived>
void require_hermitian(const Eigen::MatrixBase<Derived>& a, double rtol = 1e-12)
{
    require(a.rows() == a.cols(), "matrix must be square");
    require(a.allFinite(), "matrix has non-finite entries");
    if (a.rows() == 0) return;
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    require(hermitian_defect(a) <= rtol * scale, "matrix is not Hermitian");
}

namespace detail {

// Rotates each column so its largest entry (first on ties) is real and positive.
template <class Matrix>
void canonical_phase(Matrix& v)
{
    using Scalar = typename Matrix::Scalar;
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
        Eigen::Index best = 0;
        double mag = -1.0;
        for (Eigen::Index r = 0; r < v.rows(); ++r) {
            const double m = std::abs(v(r, c));
            if (m > mag * (1.0 + 1e-12)) {
                mag = m;
                best = r;
            }
        }
        if (mag <= 0.0) continue;
        const Scalar phase = v(best, c) / mag;
        if constexpr (Eigen::NumTraits<Scalar>::IsComplex) {
            v.col(c) *= std::conj(phase);
        } else {
            v.col(c) *= phase;
        }
    }
}

} // namespace detail

// Dense Hermitian eigendecomposition with ascending eigenvalues and
// per-pair residual validation ||Av - lambda v|| <= 1e-9 ||A||.
template <class Derived>
auto eigensolve_hermitian(const Eigen::MatrixBase<Derived>& input, bool with_vectors = true)
{
    using Scalar = typename Derived::Scalar;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    require_hermitian(input);
    const Matrix a = input;
    HermitianEigen<Scalar> out;
    if (a.rows() == 0) return out;

    Eigen::SelfAdjointEigenSolver<Matrix> solver(a, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw numerical_failure("Hermitian eigensolver did not converge");
    out.values = solver.eigenvalues();
    out.spectral_radius = out.values.cwiseAbs().maxCoeff();
    if (!with_vectors) return out;

    out.vectors = solver.eigenvectors();
    detail::canonical_phase(out.vectors);
    const double tol = 1e-9 * std::max(out.spectral_radius, std::numeric_limits<double>::min());
    const Matrix av = a * out.vectors;
    out.residuals.resize(static_cast<std::size_t>(a.rows()));
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
        const double r = (av.col(c) - out.values(c) * out.vectors.col(c)).norm();
        out.residuals[static_cast<std::size_t>(c)] = r;
        if (!(r <= tol)) {
            throw numerical_failure("eigenpair residual " + std::to_string(r) + " exceeds 1e-9 * ||A||");
        }
    }
    return out;
}

} // namespace spindirac
