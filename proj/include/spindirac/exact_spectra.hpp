#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "spindirac/error.hpp"
#include "spindirac/format.hpp"
#include "spindirac/lattice.hpp"

namespace spindirac {

inline constexpr double pi = std::numbers::pi;
inline constexpr double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;

// Relative tolerance under which two D^2 eigenvalues are treated as equal.
inline constexpr double merge_rtol = 1e-12;

struct SpectrumEntry {
    double value = 0.0;
    long multiplicity = 0;
};

struct SpectrumSlice {
    std::vector<SpectrumEntry> entries;
    double cutoff = 0.0;
    std::string source;

    long total_multiplicity() const
    {
        long n = 0;
        for (const auto& e : entries) n += e.multiplicity;
        return n;
    }
};

// Half-dual-lattice shift chi with <chi, u> = eps1/2 and <chi, v> = eps2/2.
inline Vec2 dual_shift(const Lattice2& lat, SpinStructure2 spin)
{
    return 0.5 * (static_cast<double>(spin.eps1) * lat.dual_u() + static_cast<double>(spin.eps2) * lat.dual_v());
}

namespace detail {

// Calls visit(value, is_origin) for every shifted dual point gamma* + chi with
// 4 pi^2 |gamma* + chi|^2 <= bound. Writing the point as a u* + b v* with
// a in Z + eps1/2, b in Z + eps2/2, the ellipse |a u* + b v*|^2 <= R^2 has
// bounding box |a| <= R|u|, |b| <= R|v| (the dual Gram matrix is G^-1).
template <class Visit>
void for_each_shifted_point(const Lattice2& lat, SpinStructure2 spin, double bound, Visit&& visit)
{
    const double r = std::sqrt(std::max(bound, 0.0) / four_pi_sq);
    const double amax = r * std::sqrt(norm2(lat.u()));
    const double bmax = r * std::sqrt(norm2(lat.v()));
    const double ha = 0.5 * spin.eps1;
    const double hb = 0.5 * spin.eps2;
    const auto lo = [](double m, double h) { return static_cast<long>(std::floor(-m - h)) - 1; };
    const auto hi = [](double m, double h) { return static_cast<long>(std::ceil(m - h)) + 1; };
    const Vec2 us = lat.dual_u();
    const Vec2 vs = lat.dual_v();
    for (long i = lo(amax, ha); i <= hi(amax, ha); ++i) {
        const double a = static_cast<double>(i) + ha;
        for (long j = lo(bmax, hb); j <= hi(bmax, hb); ++j) {
            const double b = static_cast<double>(j) + hb;
            const double value = four_pi_sq * norm2(a * us + b * vs);
            if (value <= bound) visit(value, a == 0.0 && b == 0.0);
        }
    }
}

inline std::vector<SpectrumEntry> merge_values(std::vector<double> values, long per_value)
{
    std::sort(values.begin(), values.end());
    std::vector<SpectrumEntry> out;
    for (double v : values) {
        if (!out.empty() && std::abs(v - out.back().value) <= merge_rtol * std::max(std::abs(v), std::abs(out.back().value))) {
            out.back().multiplicity += per_value;
        } else {
            out.push_back({v, per_value});
        }
    }
    return out;
}

} // namespace detail

inline int torus_kernel_dim(const Lattice2& lat, SpinStructure2 spin)
{
    int origin_hits = 0;
    detail::for_each_shifted_point(lat, spin, 0.0, [&](double, bool origin) { origin_hits += origin ? 1 : 0; });
    return 2 * origin_hits;
}

// Smallest positive eigenvalue of D^2 on the flat torus R^2 / lat.
inline double torus_lambda1_plus(const Lattice2& lat, SpinStructure2 spin)
{
    // Any nonzero shifted point gives an upper bound on the minimum; the
    // ellipse of that radius then contains the true minimizer.
    double bound = std::numeric_limits<double>::infinity();
    const Vec2 us = lat.dual_u();
    const Vec2 vs = lat.dual_v();
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            const double a = i + 0.5 * spin.eps1;
            const double b = j + 0.5 * spin.eps2;
            if (a == 0.0 && b == 0.0) continue;
            bound = std::min(bound, four_pi_sq * norm2(a * us + b * vs));
        }
    }
    double best = std::numeric_limits<double>::infinity();
    detail::for_each_shifted_point(lat, spin, bound * (1.0 + merge_rtol), [&](double value, bool origin) {
        if (!origin) best = std::min(best, value);
    });
    return best;
}

inline SpectrumSlice torus_spectrum(const Lattice2& lat, SpinStructure2 spin, double cutoff)
{
    require(std::isfinite(cutoff) && cutoff >= 0.0, "cutoff must be a finite nonnegative number");
    std::vector<double> values;
    detail::for_each_shifted_point(lat, spin, cutoff * (1.0 + merge_rtol), [&](double value, bool origin) {
        values.push_back(origin ? 0.0 : value);
    });
    SpectrumSlice slice;
    slice.entries = detail::merge_values(std::move(values), 2);
    slice.cutoff = cutoff;
    slice.source = "torus u=(" + fmt17(lat.u().x) + "," + fmt17(lat.u().y) + ") v=(" + fmt17(lat.v().x) + "," +
                   fmt17(lat.v().y) + ") spin=" + spin.label();
    return slice;
}

struct SphereLevel {
    int k = 0;
    double d2_value = 0.0;
    // Multiplicity of each Dirac eigenvalue +(n/2+k) and -(n/2+k).
    std::uint64_t multiplicity = 0;
    // Multiplicity of the D^2 eigenvalue (n/2+k)^2.
    std::uint64_t d2_multiplicity = 0;
};

struct SphereSpec {
    int dim = 0;
    std::vector<SphereLevel> levels;
};

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // result * (n - k + i) / i is exact at every step.
        const std::uint64_t num = n - k + i;
        const std::uint64_t g = std::gcd(result, i);
        const std::uint64_t r = result / g;
        const std::uint64_t d = i / g;
        std::uint64_t next = 0;
        if (__builtin_mul_overflow(r, num / d, &next)) throw invalid_input("binomial coefficient overflows 64 bits");
        result = next;
    }
    return result;
}

inline SphereSpec sphere_spectrum(int n, int kmax)
{
    require(n >= 2, "sphere dimension must be at least 2");
    require(n <= 64, "sphere dimension must be at most 64");
    require(kmax >= 0, "kmax must be nonnegative");
    require(kmax <= 100000, "kmax must be at most 100000");
    SphereSpec spec;
    spec.dim = n;
    const std::uint64_t spinor_rank = std::uint64_t{1} << (n / 2);
    for (int k = 0; k <= kmax; ++k) {
        SphereLevel level;
        level.k = k;
        const double root = 0.5 * n + k;
        level.d2_value = root * root;
        std::uint64_t m = 0;
        if (__builtin_mul_overflow(spinor_rank, binomial(static_cast<std::uint64_t>(k + n - 1), static_cast<std::uint64_t>(k)), &m) ||
            m > std::numeric_limits<std::uint64_t>::max() / 2) {
            throw invalid_input("sphere multiplicity overflows 64 bits");
        }
        level.multiplicity = m;
        level.d2_multiplicity = 2 * m;
        spec.levels.push_back(level);
    }
    return spec;
}

inline double sphere_volume(int n)
{
    require(n >= 2, "sphere dimension must be at least 2");
    const double h = 0.5 * (n + 1);
    return 2.0 * std::pow(pi, h) / std::tgamma(h);
}

} // namespace spindirac
