#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "spindirac/eigensolve.hpp"
#include "spindirac/error.hpp"

namespace spindirac {

struct CutoffSpec {
    double delta = 0.5;
    double center = 0.0;

    CutoffSpec() = default;
    explicit CutoffSpec(double d, double c = 0.0) : delta(d), center(c)
    {
        require(std::isfinite(d) && d > 0.0 && d < 1.0, "cutoff delta must lie in (0, 1)");
    }
};

// chi(d) = 0 for d <= delta, 2 - 2 ln d / ln delta on (delta, sqrt delta), 1 beyond.
inline double log_cutoff(double d, const CutoffSpec& spec)
{
    if (!(d > spec.delta)) return 0.0;
    const double ld = std::log(spec.delta);
    const double v = 2.0 - 2.0 * std::log(d) / ld;
    return std::clamp(v, 0.0, 1.0);
}

// d chi / d d, zero outside the open annulus.
inline double log_cutoff_slope(double d, const CutoffSpec& spec)
{
    if (!(d > spec.delta) || d >= std::sqrt(spec.delta)) return 0.0;
    return -2.0 / (d * std::log(spec.delta));
}

struct AnnulusEnergy {
    double closed_form = 0.0;
    double quadrature = 0.0;
};

// Integral over delta < r < sqrt(delta) of |d chi/dr|^2 r dr.
inline AnnulusEnergy annulus_energy(double delta)
{
    require(std::isfinite(delta) && delta > 0.0 && delta < 1.0, "annulus delta must lie in (0, 1)");
    using boost::math::quadrature::gauss_kronrod;
    const double ld = std::log(delta);
    const auto integrand = [ld](double r) { return 4.0 / (r * r * ld * ld) * r; };
    const double lo = delta;
    const double hi = std::sqrt(delta);
    // Geometric panels keep the 1/r integrand resolved across many decades.
    const int panels = std::max(1, static_cast<int>(std::ceil(std::log(hi / lo))));
    const double ratio = std::pow(hi / lo, 1.0 / panels);
    double sum = 0.0;
    double a = lo;
    for (int i = 0; i < panels; ++i) {
        const double b = i + 1 == panels ? hi : a * ratio;
        sum += gauss_kronrod<double, 61>::integrate(integrand, a, b, 15, 1e-15);
        a = b;
    }
    return {-2.0 / ld, sum};
}

struct Certificate {
    double lambda = 0.0;
    double residual = 0.0;
    double test_vector_norm = 0.0;
    Eigen::VectorXcd vector;
    double nearest_eigenvalue = std::numeric_limits<double>::quiet_NaN();
    bool sound = false;

    std::string claim() const { return "Spec intersects [lambda - residual, lambda + residual]"; }
};

inline double residual_norm(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& v, double lambda)
{
    return (a * v - lambda * v).norm() / v.norm();
}

inline bool interval_hits(double nearest_distance, double residual, double lambda)
{
    return nearest_distance <= residual + 1e-10 * std::max(1.0, std::abs(lambda));
}

// Residual certificate checked against a precomputed spectrum of a.
inline Certificate certify(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& v, double lambda, const Eigen::VectorXd& spectrum)
{
    require(a.rows() == a.cols() && a.rows() == v.size(), "operator and vector sizes differ");
    require(std::isfinite(lambda), "target eigenvalue must be finite");
    const double nv = v.norm();
    require(nv > 0.0 && std::isfinite(nv), "test vector must be nonzero");
    require(spectrum.size() > 0, "spectrum must be nonempty");
    Certificate c;
    c.lambda = lambda;
    c.vector = v;
    c.test_vector_norm = nv;
    c.residual = residual_norm(a, v, lambda);
    c.nearest_eigenvalue = spectrum(0);
    for (Eigen::Index i = 1; i < spectrum.size(); ++i) {
        if (std::abs(spectrum(i) - lambda) < std::abs(c.nearest_eigenvalue - lambda)) c.nearest_eigenvalue = spectrum(i);
    }
    c.sound = interval_hits(std::abs(c.nearest_eigenvalue - lambda), c.residual, lambda);
    return c;
}

inline Certificate certify(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& v, double lambda)
{
    require_hermitian(a);
    return certify(a, v, lambda, eigensolve_hermitian(a, false).values);
}

// Certificate for a subspace: if ||(A - lambda) x|| <= rho ||x|| for every x in
// an m-dimensional span, A has at least m eigenvalues in [lambda - rho, lambda + rho].
struct SubspaceCertificate {
    double lambda = 0.0;
    double residual = 0.0;
    int dimension = 0;
    int eigenvalues_in_interval = 0;
    bool sound = false;
};

inline SubspaceCertificate certify_subspace(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& vectors, double lambda,
                                            const Eigen::VectorXd& spectrum)
{
    require(vectors.cols() >= 1 && vectors.rows() == a.rows(), "subspace basis has the wrong shape");
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(vectors);
    const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(vectors.rows(), vectors.cols());
    const Eigen::MatrixXcd r = a * q - lambda * q;
    const Eigen::MatrixXcd gram = r.adjoint() * r;
    const auto eig = eigensolve_hermitian(0.5 * (gram + gram.adjoint()), false);
    SubspaceCertificate c;
    c.lambda = lambda;
    c.dimension = static_cast<int>(vectors.cols());
    c.residual = std::sqrt(std::max(0.0, eig.values(eig.values.size() - 1)));
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
        if (interval_hits(std::abs(spectrum(i) - lambda), c.residual, lambda)) ++c.eigenvalues_in_interval;
    }
    c.sound = c.eigenvalues_in_interval >= c.dimension;
    return c;
}

// One side's contribution to the test-spinor map: eigenvectors on the source
// grid (two components of n_src nodes each), the glued node receiving each
// source node (-1 when cut away) and the cut-off value at each source node.
struct SideTransplant {
    Eigen::MatrixXcd eigenvectors;
    std::vector<int> glued_node;
    std::vector<double> cutoff;
};

struct TestSpinorSet {
    Eigen::MatrixXcd vectors;
    std::vector<int> side_of_column;
    Eigen::MatrixXcd gram;
    int rank = 0;
    double max_cross_inner = 0.0;

    bool full_rank() const { return rank == vectors.cols(); }
};

inline TestSpinorSet build_test_spinors(const std::vector<SideTransplant>& sides, int glued_size)
{
    require(glued_size >= 1, "glued grid must be nonempty");
    std::vector<int> owner(static_cast<std::size_t>(glued_size), -1);
    Eigen::Index columns = 0;
    for (std::size_t s = 0; s < sides.size(); ++s) {
        const SideTransplant& t = sides[s];
        const std::size_t n = t.glued_node.size();
        require(t.cutoff.size() == n && static_cast<std::size_t>(t.eigenvectors.rows()) == 2 * n,
                "transplant data sizes disagree");
        for (std::size_t j = 0; j < n; ++j) {
            if (t.cutoff[j] == 0.0) continue;
            const int g = t.glued_node[j];
            require(g >= 0, "cut-off support extends past the glued grid");
            require(g < glued_size, "glued node index out of range");
            int& o = owner[static_cast<std::size_t>(g)];
            require(o == -1 || o == static_cast<int>(s), "cut-off supports of different sides overlap");
            o = static_cast<int>(s);
        }
        columns += t.eigenvectors.cols();
    }

    TestSpinorSet out;
    out.vectors = Eigen::MatrixXcd::Zero(2 * glued_size, columns);
    Eigen::Index col = 0;
    for (std::size_t s = 0; s < sides.size(); ++s) {
        const SideTransplant& t = sides[s];
        const Eigen::Index n = static_cast<Eigen::Index>(t.glued_node.size());
        for (Eigen::Index c = 0; c < t.eigenvectors.cols(); ++c, ++col) {
            for (Eigen::Index j = 0; j < n; ++j) {
                const double chi = t.cutoff[static_cast<std::size_t>(j)];
                if (chi == 0.0) continue;
                const Eigen::Index g = t.glued_node[static_cast<std::size_t>(j)];
                out.vectors(g, col) = chi * t.eigenvectors(j, c);
                out.vectors(glued_size + g, col) = chi * t.eigenvectors(n + j, c);
            }
            out.side_of_column.push_back(static_cast<int>(s));
        }
    }
    out.gram = out.vectors.adjoint() * out.vectors;
    for (Eigen::Index i = 0; i < out.gram.rows(); ++i) {
        for (Eigen::Index j = 0; j < out.gram.cols(); ++j) {
            if (out.side_of_column[static_cast<std::size_t>(i)] != out.side_of_column[static_cast<std::size_t>(j)]) {
                out.max_cross_inner = std::max(out.max_cross_inner, std::abs(out.gram(i, j)));
            }
        }
    }
    if (columns > 0) {
        const auto eig = eigensolve_hermitian(0.5 * (out.gram + out.gram.adjoint()), false);
        const double top = eig.values(eig.values.size() - 1);
        for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
            if (eig.values(i) > 1e-10 * top) ++out.rank;
        }
    }
    return out;
}

} // namespace spindirac
