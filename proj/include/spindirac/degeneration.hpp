#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "spindirac/error.hpp"
#include "spindirac/exact_spectra.hpp"
#include "spindirac/lattice.hpp"
#include "spindirac/neck.hpp"
#include "spindirac/warp_profile.hpp"

namespace spindirac {

enum class Source { exact, discrete };

inline const char* to_string(Source s) { return s == Source::exact ? "exact" : "discrete"; }

struct FamilyPoint {
    double parameter = 0.0;
    double lambda1_plus = 0.0;
    double volume = 0.0;
    double product = 0.0;
    Source source = Source::exact;
    int dim = 2;
};

inline FamilyPoint make_point(double parameter, double lambda, double volume, Source source, int dim = 2)
{
    return {parameter, lambda, volume, lambda * std::pow(volume, 2.0 / dim), source, dim};
}

// Area-a torus from the rectangular family Z(1,0) + Z(0,a), in a basis where
// the given flags describe (0,0) or (0,1) there. (1,0) and (1,1) are the
// (0,1) torus rotated or re-based, so every non-trivial structure collapses.
inline Lattice2 collapsing_lattice(SpinStructure2 spin, double a)
{
    require(std::isfinite(a) && a > 0.0, "family parameter must be positive");
    if (spin.eps1 == 1 && spin.eps2 == 0) return Lattice2({a, 0.0}, {0.0, 1.0});
    if (spin.eps1 == 1 && spin.eps2 == 1) return Lattice2({1.0, -a}, {0.0, a});
    return Lattice2({1.0, 0.0}, {0.0, a});
}

// lambda_1^+ on the collapsing family: 4 pi^2 / a^2 for the trivial structure,
// pi^2 / a^2 for the three others.
inline double collapsing_lambda1_plus(SpinStructure2 spin, double a)
{
    return (spin.trivial() ? four_pi_sq : pi * pi) / (a * a);
}

inline std::vector<FamilyPoint> stretch_family(SpinStructure2 spin, const std::vector<double>& a_values)
{
    std::vector<FamilyPoint> out;
    for (const double a : a_values) {
        require(std::isfinite(a) && a > 1.0, "stretch parameter a must exceed 1");
        out.push_back(make_point(a, collapsing_lambda1_plus(spin, a), a, Source::exact));
    }
    return out;
}

struct Schedule {
    int p = 1;
    int dim = 2;
    SpinStructure2 spin;
    // n = 2 only: unit-area torus collapsing_lattice(spin, a_p) / sqrt(a_p).
    bool model_symbolic = false;
    double a_p = std::numeric_limits<double>::quiet_NaN();
    double L = 0.0;
    double epsilon = 0.0;
    double eta = std::numeric_limits<double>::quiet_NaN();
    // The background metric's spectrum is unknown here, so L + eta avoiding it is not checked.
    bool eta_background_verified = false;
    double interval_lo = 0.0;
    double interval_hi = 0.0;
    double base_volume = 0.0;
    double volume_excess = 0.0;
    double volume_bound = 0.0;

    std::optional<Lattice2> model_lattice() const
    {
        if (model_symbolic) return std::nullopt;
        return collapsing_lattice(spin, a_p).scaled(1.0 / std::sqrt(a_p));
    }
};

inline Schedule theorem1_schedule(int p, double base_volume, int n, SpinStructure2 spin = {})
{
    require(p >= 1, "p must be a positive integer");
    require(n >= 2, "dimension must be at least 2");
    require(std::isfinite(base_volume) && base_volume >= 0.0, "base volume must be nonnegative");
    Schedule s;
    s.p = p;
    s.dim = n;
    s.spin = spin;
    s.base_volume = base_volume;
    s.volume_excess = 1.0 + 1.0 / (2.0 * p);
    s.volume_bound = base_volume + s.volume_excess;
    if (n == 2) {
        // Unit area: lambda_1^+ = (4 pi^2 or pi^2) / a, so equality with 1/p fixes a_p.
        s.a_p = (spin.trivial() ? four_pi_sq : pi * pi) * p;
        const Lattice2 model = *s.model_lattice();
        s.L = torus_lambda1_plus(model, spin);
        for (double cutoff = 4.0 * s.L; std::isnan(s.eta); cutoff *= 4.0) {
            for (const auto& e : torus_spectrum(model, spin, cutoff).entries) {
                if (e.value > s.L * (1.0 + merge_rtol)) {
                    s.eta = 0.5 * (e.value - s.L);
                    break;
                }
            }
        }
    } else {
        // Existence-only model: lambda_1^+ <= 1/p, recorded at the bound.
        s.model_symbolic = true;
        s.L = 1.0 / p;
    }
    s.epsilon = s.L / 2.0;
    s.interval_lo = s.L / 2.0;
    s.interval_hi = 3.0 * s.L / 2.0;
    return s;
}

struct NeckSweepConfig {
    SpinStructure2 spin{0, 1};
    int reference_nodes = 512;
    int kmax = 1;
    int mode = 0;
    std::optional<double> target;
    // Reference cut radius; 0 picks a tenth of the smallest requested radius.
    double delta_ref = 0.0;
};

struct NeckSweep {
    std::vector<FamilyPoint> points;
    std::vector<NeckPoint> necks;
    std::vector<PlateauTarget> targets;
    // Largest |lambda~ - lambda| over the targets, per radius.
    std::vector<double> gaps;
    double spacing = 0.0;
};

inline NeckSweep neck_sweep(const WarpProfile& dumbbell, const std::vector<double>& radii, const NeckSweepConfig& cfg = {})
{
    require(!radii.empty(), "at least one neck radius is required");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        require(std::isfinite(radii[i]) && radii[i] > 0.0, "neck radii must be positive");
        require(i == 0 || radii[i] < radii[i - 1], "neck radii must be strictly decreasing");
    }
    const double ref = cfg.delta_ref > 0.0 ? cfg.delta_ref : 0.1 * radii.back();
    const NeckExperiment exp(dumbbell, cfg.spin, cfg.reference_nodes, ref, cfg.mode, cfg.target);
    NeckSweep out;
    out.targets = exp.targets();
    out.spacing = exp.ladder().h;
    for (const double r : radii) {
        NeckPoint pt = exp.evaluate(r, cfg.kmax);
        require(out.necks.empty() || pt.delta < out.necks.back().delta,
                "neck radii collapse to the same grid radius; use a finer grid or more separated radii");
        double gap = 0.0;
        for (const auto& c : pt.certificates) gap = std::max(gap, std::abs(c.cert.nearest_eigenvalue - c.cert.lambda));
        out.gaps.push_back(gap);
        out.points.push_back(make_point(pt.delta, pt.lambda1_plus, pt.area, Source::discrete));
        out.necks.push_back(std::move(pt));
    }
    return out;
}

} // namespace spindirac
