#pragma once

#include <array>
#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

#include "spindirac/eigensolve.hpp"
#include "spindirac/error.hpp"
#include "spindirac/spectral_diff.hpp"
#include "spindirac/warp_profile.hpp"
#include "spindirac/warped_dirac.hpp"

namespace spindirac {

// Conformal coordinate s = int dt / f on one dumbbell side, with s = 0 at the
// side's midpoint. On the cone (d <= plateau - smoothing) s = ln d - P.
class SideConformalMap {
public:
    explicit SideConformalMap(const SideProfile& sp) : sp_(sp)
    {
        require(sp.smoothing < sp.plateau, "conformal grid needs smoothing below the plateau radius");
        require(sp.length >= 2.0 * sp.plateau, "side too short to reach its plateau");
        cone_end_ = sp.plateau - sp.smoothing;
        blend_total_ = blend(sp.plateau);
        half_ = blend_total_ + (0.5 * sp.length - sp.plateau) / sp.plateau;
    }

    const SideProfile& profile() const { return sp_; }
    double cone_end() const { return cone_end_; }
    double half_length() const { return half_; }
    double pole_offset() const { return half_ + std::log(cone_end_); }

    // Inverse map restricted to s <= 0: distance to the nearer pole.
    double pole_distance(double s) const
    {
        const double x = std::min(s, -s) + half_;
        if (x <= 0.0) return cone_end_ * std::exp(x);
        if (x >= blend_total_) return sp_.plateau + sp_.plateau * (x - blend_total_);
        double lo = cone_end_;
        double hi = sp_.plateau;
        double d = cone_end_ + (hi - lo) * x / blend_total_;
        for (int it = 0; it < 100; ++it) {
            const double g = blend(d) - x;
            if (g > 0.0) hi = d; else lo = d;
            double next = d - g * sp_.radial(d);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (std::abs(next - d) <= 1e-15 * sp_.plateau) return next;
            d = next;
        }
        return d;
    }

private:
    double blend(double d) const
    {
        if (sp_.smoothing <= 0.0 || d <= cone_end_) return 0.0;
        // 1/F is analytic on the blend interval, so a fixed Gauss rule reaches rounding level.
        const auto inv = [this](double x) { return 1.0 / sp_.radial(x); };
        return boost::math::quadrature::gauss<double, 40>::integrate(inv, cone_end_, std::min(d, sp_.plateau));
    }

    SideProfile sp_;
    double cone_end_ = 0.0;
    double blend_total_ = 0.0;
    double half_ = 0.0;
};

// Periodic grid uniform in the conformal coordinate.
struct ConformalGrid {
    double h = 0.0;
    std::vector<double> f;
    std::vector<double> pole_distance;
    std::vector<int> side;
    std::vector<int> source_index;

    int size() const { return static_cast<int>(f.size()); }
};

// Side closed on itself through a neck of radius e^{P - n h / 2}: n nodes at
// s_j = -n h / 2 + (j + 1/2) h.
inline ConformalGrid reference_grid(const SideConformalMap& map, int side, int n, double h)
{
    require(n >= 8 && n % 2 == 0, "reference grid size must be even and at least 8");
    ConformalGrid g;
    g.h = h;
    for (int j = 0; j < n; ++j) {
        const double s = -0.5 * n * h + (j + 0.5) * h;
        const double d = map.pole_distance(s);
        g.pole_distance.push_back(d);
        g.f.push_back(map.profile().radial(d));
        g.side.push_back(side);
        g.source_index.push_back(j);
    }
    return g;
}

// Cut m nodes from each end of both reference grids and join the remainders.
inline ConformalGrid glued_grid(const ConformalGrid& a, const ConformalGrid& b, int m)
{
    require(a.h == b.h, "reference grids must share the conformal spacing");
    require(m >= 1 && 2 * m + 2 <= a.size() && 2 * m + 2 <= b.size(), "neck cut leaves too few nodes");
    ConformalGrid g;
    g.h = a.h;
    for (const ConformalGrid* src : {&a, &b}) {
        for (int j = m; j < src->size() - m; ++j) {
            g.f.push_back(src->f[static_cast<std::size_t>(j)]);
            g.pole_distance.push_back(src->pole_distance[static_cast<std::size_t>(j)]);
            g.side.push_back(src->side[static_cast<std::size_t>(j)]);
            g.source_index.push_back(src->source_index[static_cast<std::size_t>(j)]);
        }
    }
    return g;
}

// H = W (-i sigma_1 D_s + sigma_2 nu) W, W = f^{-1/2}, with the periodic Nyquist term.
inline Eigen::MatrixXcd conformal_mode_matrix(const ConformalGrid& g, double nu, int eps_t)
{
    const int n = g.size();
    require(n >= 8 && n % 2 == 0, "conformal grid size must be even and at least 8");
    const BoundaryPhase phase = boundary_phase(eps_t);
    Eigen::VectorXd w(n);
    Eigen::VectorXd inv_f(n);
    for (int j = 0; j < n; ++j) {
        w(j) = 1.0 / std::sqrt(g.f[static_cast<std::size_t>(j)]);
        inv_f(j) = 1.0 / g.f[static_cast<std::size_t>(j)];
    }
    return detail::assemble_mode_matrix(fourier_derivative(n, n * g.h, phase), w, inv_f, nu, phase, pi / g.h);
}

struct ConformalEigen {
    // Ascending eigenvalues of H and matching orthonormal eigenvectors.
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
    double max_residual = 0.0;
};

// Eigenpairs of H from K = H^{-1} = W^{-1} B^{-1} W^{-1}, where B is the
// constant-coefficient operator (f = 1). K stays well conditioned when f spans
// many decades, while H itself carries entries of size 1/f.
inline ConformalEigen conformal_eigen(const ConformalGrid& g, double nu, int eps_t, bool with_vectors)
{
    require(nu != 0.0 || eps_t == 1, "conformal solve needs nu != 0 or antiperiodic t");
    const int n = g.size();
    ConformalGrid flat = g;
    std::fill(flat.f.begin(), flat.f.end(), 1.0);
    const Eigen::MatrixXcd b = conformal_mode_matrix(flat, nu, eps_t);
    Eigen::MatrixXcd k = b.partialPivLu().inverse();
    Eigen::VectorXd winv(2 * n);
    for (int j = 0; j < n; ++j) {
        const double s = std::sqrt(g.f[static_cast<std::size_t>(j)]);
        winv(j) = s;
        winv(n + j) = s;
    }
    k = winv.asDiagonal() * k * winv.asDiagonal();
    const Eigen::MatrixXcd sym = 0.5 * (k + k.adjoint());
    const auto eig = eigensolve_hermitian(sym, with_vectors);

    std::vector<int> order(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < 2 * n; ++i) order[static_cast<std::size_t>(i)] = i;
    Eigen::VectorXd lam(2 * n);
    for (int i = 0; i < 2 * n; ++i) {
        if (eig.values(i) == 0.0) throw numerical_failure("inverse mode operator has a zero eigenvalue");
        lam(i) = 1.0 / eig.values(i);
    }
    std::sort(order.begin(), order.end(), [&](int x, int y) { return lam(x) < lam(y); });
    ConformalEigen out;
    out.values.resize(2 * n);
    if (with_vectors) out.vectors.resize(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i) {
        const int src = order[static_cast<std::size_t>(i)];
        out.values(i) = lam(src);
        if (with_vectors) out.vectors.col(i) = eig.vectors.col(src);
    }
    for (const double r : eig.residuals) out.max_residual = std::max(out.max_residual, r);
    return out;
}

// Shared conformal spacing and reference cut for a two-sided dumbbell.
struct NeckLadder {
    std::array<SideConformalMap, 2> maps;
    std::array<int, 2> reference_size{};
    double h = 0.0;
    double log_delta_ref = 0.0;
};

struct QuantizedNeck {
    int m = 0;
    double delta = 0.0;
};

// Chooses h so that both sides' reference grids are integer node counts with
// the same reference neck radius; side 1 gets n1 nodes.
inline NeckLadder make_neck_ladder(const WarpProfile& p, double delta_ref_target, int n1)
{
    require(p.kind() == WarpKind::dumbbell, "neck experiments need a dumbbell profile");
    require(p.dumbbell_params().neck_width == 0.0, "neck experiments need neck_width 0 (direct gluing)");
    require(n1 >= 16 && n1 % 2 == 0, "reference grid size must be even and at least 16");
    NeckLadder lad{{SideConformalMap(p.side(0)), SideConformalMap(p.side(1))}, {}, 0.0, 0.0};
    const double cone = std::min(lad.maps[0].cone_end(), lad.maps[1].cone_end());
    require(delta_ref_target > 0.0 && delta_ref_target < cone, "reference neck radius must lie in the conical region");
    const double p1 = lad.maps[0].pole_offset();
    const double p2 = lad.maps[1].pole_offset();
    double h = 2.0 * (p1 - std::log(delta_ref_target)) / n1;
    const double gap = std::abs(p1 - p2);
    if (gap > 1e-14 * std::abs(p1)) {
        const double steps = std::max(1.0, std::round(gap / h));
        h = gap / steps;
    }
    lad.h = h;
    lad.log_delta_ref = p1 - 0.5 * n1 * h;
    lad.reference_size[0] = n1;
    lad.reference_size[1] = n1 + static_cast<int>(std::lround(2.0 * (p2 - p1) / h));
    require(lad.reference_size[1] >= 16, "second side too short for the chosen spacing");
    return lad;
}

inline QuantizedNeck quantize_neck(const NeckLadder& lad, double delta)
{
    require(delta > 0.0 && std::isfinite(delta), "neck radius must be positive");
    QuantizedNeck q;
    q.m = static_cast<int>(std::lround((std::log(delta) - lad.log_delta_ref) / lad.h));
    require(q.m >= 1, "neck radius must exceed the reference radius");
    q.delta = std::exp(lad.log_delta_ref + q.m * lad.h);
    const double cone = std::min(lad.maps[0].cone_end(), lad.maps[1].cone_end());
    require(q.delta < cone, "neck radius must lie in the conical region (below plateau - smoothing)");
    require(2 * q.m + 8 <= std::min(lad.reference_size[0], lad.reference_size[1]), "neck cut leaves too few nodes");
    return q;
}

} // namespace spindirac
