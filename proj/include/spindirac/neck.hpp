#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "spindirac/conformal.hpp"
#include "spindirac/error.hpp"
#include "spindirac/lattice.hpp"
#include "spindirac/rayleigh.hpp"
#include "spindirac/warp_profile.hpp"

namespace spindirac {

// Eigenpair of one side's reference operator used as a plateau eigenvalue.
struct PlateauTarget {
    int side = 0;
    double nu = 0.0;
    double lambda = 0.0;
    Eigen::VectorXcd eigenvector;
};

struct NeckCertificate {
    Certificate cert;
    int side = 0;
    double nu = 0.0;
    double delta = 0.0;
    double annulus = 0.0;
    // max f/d over the annulus delta < d < sqrt(delta).
    double distortion = 1.0;
    // sup over the side of the pointwise spinor density |phi|^2 (unit L^2 norm).
    double sup_density = 0.0;
    std::array<double, 2> neck_energy{};
    double energy_bound = 0.0;
    double residual_bound = 0.0;
    double rate_constant = 0.0;
};

struct NeckPoint {
    double delta = 0.0;
    int cut = 0;
    int glued_nodes = 0;
    double area = 0.0;
    double lambda1_plus = 0.0;
    std::vector<NeckCertificate> certificates;
    SubspaceCertificate subspace;
    int spinor_rank = 0;
    double max_cross_inner = 0.0;
};

// Plateau operators A_i (each side closed through a reference neck) and the
// glued operators G_delta on the shared conformal ladder.
class NeckExperiment {
public:
    NeckExperiment(const WarpProfile& profile, SpinStructure2 spin, int reference_nodes, double delta_ref, int mode = 0,
                   std::optional<double> target = std::nullopt)
        : profile_(profile), spin_(spin), ladder_(make_neck_ladder(profile, delta_ref, reference_nodes))
    {
        require(spin.eps2 == 1, "neck experiments need eps_theta = 1 (the theta-circle bounds a disc on each side)");
        require(std::abs(mode) <= 64, "mode index must satisfy |k| <= 64");
        nu_ = mode + 0.5;
        for (int s = 0; s < 2; ++s) {
            references_[static_cast<std::size_t>(s)] =
                reference_grid(ladder_.maps[static_cast<std::size_t>(s)], s, ladder_.reference_size[static_cast<std::size_t>(s)], ladder_.h);
            const ConformalEigen e = conformal_eigen(references_[static_cast<std::size_t>(s)], nu_, spin.eps1, true);
            Eigen::Index pick = -1;
            for (Eigen::Index i = 0; i < e.values.size(); ++i) {
                if (target) {
                    if (pick < 0 || std::abs(e.values(i) - *target) < std::abs(e.values(pick) - *target)) pick = i;
                } else if (e.values(i) > 0.0) {
                    pick = i;
                    break;
                }
            }
            if (pick < 0) throw numerical_failure("reference operator has no positive eigenvalue");
            targets_.push_back({s, nu_, e.values(pick), e.vectors.col(pick)});
        }
    }

    const NeckLadder& ladder() const { return ladder_; }
    const std::array<ConformalGrid, 2>& references() const { return references_; }
    const std::vector<PlateauTarget>& targets() const { return targets_; }
    double nu() const { return nu_; }

    NeckPoint evaluate(double delta, int kmax) const
    {
        require(kmax >= 0 && kmax <= 64, "kmax must lie in [0, 64]");
        const QuantizedNeck q = quantize_neck(ladder_, delta);
        const ConformalGrid glued = glued_grid(references_[0], references_[1], q.m);
        NeckPoint pt;
        pt.delta = q.delta;
        pt.cut = q.m;
        pt.glued_nodes = glued.size();
        pt.area = with_neck_radius(profile_, q.delta).area();

        const Eigen::MatrixXcd h = conformal_mode_matrix(glued, nu_, spin_.eps1);
        const Eigen::VectorXd spectrum = conformal_eigen(glued, nu_, spin_.eps1, false).values;

        // Smallest |lambda| over the modes |nu| = 1/2 .. kmax + 1/2; nu and -nu are isospectral.
        double lam_min = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= kmax; ++k) {
            const double nu = k + 0.5;
            const Eigen::VectorXd vals = nu == nu_ ? spectrum : conformal_eigen(glued, nu, spin_.eps1, false).values;
            lam_min = std::min(lam_min, vals.cwiseAbs().minCoeff());
        }
        pt.lambda1_plus = lam_min * lam_min;

        const CutoffSpec cut(q.delta);
        const double annulus = annulus_energy(q.delta).closed_form;
        std::vector<SideTransplant> sides;
        const int n0 = references_[0].size() - 2 * q.m;
        for (const PlateauTarget& t : targets_) {
            const ConformalGrid& ref = references_[static_cast<std::size_t>(t.side)];
            SideTransplant tr;
            tr.eigenvectors = t.eigenvector;
            for (int j = 0; j < ref.size(); ++j) {
                const bool kept = j >= q.m && j < ref.size() - q.m;
                tr.glued_node.push_back(kept ? (t.side == 0 ? 0 : n0) + j - q.m : -1);
                tr.cutoff.push_back(log_cutoff(ref.pole_distance[static_cast<std::size_t>(j)], cut));
            }
            sides.push_back(std::move(tr));
        }
        const TestSpinorSet set = build_test_spinors(sides, glued.size());
        pt.spinor_rank = set.rank;
        pt.max_cross_inner = set.max_cross_inner;

        for (std::size_t c = 0; c < targets_.size(); ++c) {
            const PlateauTarget& t = targets_[c];
            NeckCertificate nc;
            nc.cert = certify(h, set.vectors.col(static_cast<Eigen::Index>(c)), t.lambda, spectrum);
            nc.side = t.side;
            nc.nu = t.nu;
            nc.delta = q.delta;
            nc.annulus = annulus;
            fill_energy(nc, references_[static_cast<std::size_t>(t.side)], t.eigenvector, cut);
            pt.certificates.push_back(std::move(nc));
        }
        double mean = 0.0;
        for (const PlateauTarget& t : targets_) mean += t.lambda / static_cast<double>(targets_.size());
        pt.subspace = certify_subspace(h, set.vectors, mean, spectrum);
        return pt;
    }

private:
    // Energies in the unit-L^2 normalization x = phi / sqrt(h), with dt-measure
    // integrals written as sums over the conformal nodes (dt = f ds).
    void fill_energy(NeckCertificate& nc, const ConformalGrid& ref, const Eigen::VectorXcd& phi, const CutoffSpec& cut) const
    {
        const int n = ref.size();
        const double hs = ref.h;
        const double root = std::sqrt(cut.delta);
        double sup = 0.0;
        double norm2 = 0.0;
        double distortion = 1.0;
        nc.neck_energy = {0.0, 0.0};
        for (int j = 0; j < n; ++j) {
            const double d = ref.pole_distance[static_cast<std::size_t>(j)];
            const double f = ref.f[static_cast<std::size_t>(j)];
            const double dens = (std::norm(phi(j)) + std::norm(phi(n + j))) / hs;
            sup = std::max(sup, dens / (f * f));
            const double chi = log_cutoff(d, cut);
            norm2 += hs * chi * chi * dens;
            const double slope = log_cutoff_slope(d, cut);
            nc.neck_energy[j < n / 2 ? 0 : 1] += hs * slope * slope * dens;
            if (d > cut.delta && d < root) distortion = std::max(distortion, f / d);
        }
        nc.sup_density = sup;
        nc.distortion = distortion;
        nc.energy_bound = 2.0 * distortion * sup * nc.annulus;
        nc.residual_bound = std::sqrt(nc.energy_bound / norm2);
        nc.rate_constant = nc.residual_bound * std::sqrt(-std::log(cut.delta));
    }

    WarpProfile profile_;
    SpinStructure2 spin_;
    NeckLadder ladder_;
    std::array<ConformalGrid, 2> references_;
    std::vector<PlateauTarget> targets_;
    double nu_ = 0.5;
};

} // namespace spindirac
