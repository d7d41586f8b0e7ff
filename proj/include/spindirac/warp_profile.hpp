#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "spindirac/error.hpp"
#include "spindirac/exact_spectra.hpp"

namespace spindirac {

// Radial profile of one side of a dumbbell: a surface of revolution running
// pole to pole over [0, length] whose radius is d near each pole, blends C^1
// into the plateau over [plateau - smoothing, plateau], and is flat beyond.
struct SideProfile {
    double plateau = 1.0;
    double smoothing = 0.0;
    double length = 4.0;

    // Radius as a function of distance d >= 0 to the nearest pole.
    double radial(double d) const
    {
        if (d >= plateau) return plateau;
        const double start = plateau - smoothing;
        if (smoothing > 0.0 && d > start) {
            const double x = d - start;
            return start + x + x * x / smoothing - x * x * x / (smoothing * smoothing);
        }
        return d;
    }

    double operator()(double d) const { return radial(std::min(d, length - d)); }
};

struct DumbbellParams {
    double plateau1 = 1.0;
    double plateau2 = 1.0;
    double neck_width = 0.0;
    double neck_radius = 0.1;
    // Negative means "use the default", neck_width / 4.
    double smoothing = -1.0;
};

enum class WarpKind { constant, dumbbell, sampled };

inline const char* to_string(WarpKind k)
{
    switch (k) {
    case WarpKind::constant: return "constant";
    case WarpKind::dumbbell: return "dumbbell";
    case WarpKind::sampled: return "sampled";
    }
    return "unknown";
}

// Periodic warp function f(t) > 0 of the torus metric dt^2 + f(t)^2 dtheta^2.
//
// Dumbbell layout on [0, L): necks centred at t = 0 and t = L/2, side 1 on
// (0, L/2), side 2 on (L/2, L). Each neck is a tube of length w at radius
// r_neck joined to the sides' conical caps; both sides have pole-to-pole
// length L/2 - w + 2 r_neck.
class WarpProfile {
public:
    static WarpProfile constant(double radius, double period)
    {
        require(std::isfinite(radius) && radius > 0.0, "constant warp radius must be positive");
        WarpProfile p(WarpKind::constant, period);
        p.radius_ = radius;
        return p;
    }

    static WarpProfile dumbbell(DumbbellParams d, double period)
    {
        WarpProfile p(WarpKind::dumbbell, period);
        if (d.smoothing < 0.0) d.smoothing = 0.25 * d.neck_width;
        const auto finite = [](double x) { return std::isfinite(x); };
        require(finite(d.plateau1) && finite(d.plateau2) && d.plateau1 > 0.0 && d.plateau2 > 0.0,
                "dumbbell plateaus must be positive");
        require(finite(d.neck_radius) && d.neck_radius > 0.0, "neck radius must be positive");
        require(finite(d.neck_width) && d.neck_width >= 0.0, "neck width must be nonnegative");
        require(finite(d.smoothing) && d.smoothing <= std::min(d.plateau1, d.plateau2),
                "smoothing must not exceed the smaller plateau");
        require(d.neck_width < 0.5 * period, "neck width must be shorter than half the period");
        const double cmin = std::min(d.plateau1, d.plateau2);
        require(d.plateau1 == d.plateau2 || d.neck_radius <= cmin - d.smoothing,
                "unequal plateaus need the neck radius inside the conical region (r_neck <= min plateau - smoothing)");
        p.dumbbell_ = d;
        for (int i = 0; i < 2; ++i) {
            require(p.side(i).length >= 2.0 * p.side(i).plateau,
                    "period too short: each side must reach its plateau (L/2 - w + 2 r_neck >= 2 plateau)");
        }
        return p;
    }

    static WarpProfile sampled(std::vector<double> samples, double period)
    {
        require(samples.size() >= 8, "sampled profiles need at least 8 samples");
        for (const double s : samples) require(std::isfinite(s) && s > 0.0, "profile samples must be positive");
        WarpProfile p(WarpKind::sampled, period);
        p.samples_ = std::move(samples);
        p.build_fourier();
        return p;
    }

    WarpKind kind() const { return kind_; }
    double period() const { return period_; }
    double radius() const { return radius_; }
    const DumbbellParams& dumbbell_params() const { return dumbbell_; }
    const std::vector<double>& samples() const { return samples_; }

    SideProfile side(int i) const
    {
        const double c = i == 0 ? dumbbell_.plateau1 : dumbbell_.plateau2;
        return {c, dumbbell_.smoothing, 0.5 * period_ - dumbbell_.neck_width + 2.0 * dumbbell_.neck_radius};
    }

    double operator()(double t) const
    {
        switch (kind_) {
        case WarpKind::constant: return radius_;
        case WarpKind::dumbbell: return eval_dumbbell(t);
        case WarpKind::sampled: return eval_sampled(t);
        }
        return 0.0;
    }

    // f at t_j = j L / n, j = 0 .. n-1. Sampled profiles return their stored
    // samples unchanged when n matches, and the trigonometric interpolant otherwise.
    std::vector<double> sample(int n) const
    {
        require(n >= 1, "sample count must be positive");
        if (kind_ == WarpKind::sampled && static_cast<std::size_t>(n) == samples_.size()) return samples_;
        std::vector<double> out(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = (*this)(period_ * j / n);
        for (const double v : out) {
            if (!(v > 0.0)) throw invalid_input("profile interpolant is not positive on the requested grid");
        }
        return out;
    }

    // 2 pi times the integral of f over one period.
    double area() const
    {
        using boost::math::quadrature::gauss_kronrod;
        switch (kind_) {
        case WarpKind::constant: return 2.0 * pi * radius_ * period_;
        case WarpKind::sampled: {
            double s = 0.0;
            for (const double v : samples_) s += v;
            return 2.0 * pi * s * period_ / static_cast<double>(samples_.size());
        }
        case WarpKind::dumbbell: break;
        }
        // Each side contributes twice the integral over the distance u in
        // [0, L/4] from one of its neck centres. Pieces are split at every kink.
        double total = 0.0;
        const double quarter = 0.25 * period_;
        for (int i = 0; i < 2; ++i) {
            const SideProfile sp = side(i);
            std::vector<double> cuts{0.0, quarter};
            const double w2 = 0.5 * dumbbell_.neck_width;
            const double b = corner_width();
            for (const double x : {w2 - 0.5 * b, w2 + 0.5 * b}) cuts.push_back(x);
            for (const double rho : {sp.plateau - sp.smoothing, sp.plateau}) {
                cuts.push_back(rho - dumbbell_.neck_radius + w2);
            }
            std::sort(cuts.begin(), cuts.end());
            const auto f = [&](double u) { return sp(neck_distance(u)); };
            for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
                const double a = std::clamp(cuts[k], 0.0, quarter);
                const double c = std::clamp(cuts[k + 1], 0.0, quarter);
                if (c > a) total += 2.0 * gauss_kronrod<double, 61>::integrate(f, a, c, 15, 1e-14);
            }
        }
        return 2.0 * pi * total;
    }

    // f -> t f, L -> t L.
    WarpProfile scaled(double t) const
    {
        require(std::isfinite(t) && t > 0.0, "scale factor must be positive");
        switch (kind_) {
        case WarpKind::constant: return constant(t * radius_, t * period_);
        case WarpKind::dumbbell: {
            DumbbellParams d = dumbbell_;
            d.plateau1 *= t;
            d.plateau2 *= t;
            d.neck_width *= t;
            d.neck_radius *= t;
            d.smoothing *= t;
            return dumbbell(d, t * period_);
        }
        case WarpKind::sampled: {
            std::vector<double> s = samples_;
            for (double& v : s) v *= t;
            return sampled(std::move(s), t * period_);
        }
        }
        return *this;
    }

    // Arclength from a neck centre to the pole-distance coordinate of the side.
    double neck_distance(double u) const
    {
        const double x = u - 0.5 * dumbbell_.neck_width;
        const double b = corner_width();
        double m = std::max(0.0, x);
        if (b > 0.0 && std::abs(x) < 0.5 * b) m = (x + 0.5 * b) * (x + 0.5 * b) / (2.0 * b);
        return dumbbell_.neck_radius + m;
    }

private:
    WarpProfile(WarpKind k, double period) : kind_(k), period_(period)
    {
        require(std::isfinite(period) && period > 0.0, "period must be positive");
    }

    double corner_width() const { return std::min(dumbbell_.smoothing, dumbbell_.neck_width); }

    double eval_dumbbell(double t) const
    {
        double x = std::fmod(t, period_);
        if (x < 0.0) x += period_;
        const double half = 0.5 * period_;
        const int side_index = x < half ? 0 : 1;
        const double local = side_index == 0 ? x : x - half;
        const double u = std::min(local, half - local);
        return side(side_index).radial(neck_distance(u));
    }

    void build_fourier()
    {
        const std::size_t m = samples_.size();
        const std::size_t kmax = m / 2;
        cos_.assign(kmax + 1, 0.0);
        sin_.assign(kmax + 1, 0.0);
        for (std::size_t k = 0; k <= kmax; ++k) {
            double a = 0.0;
            double b = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                const double th = 2.0 * pi * static_cast<double>((k * j) % m) / static_cast<double>(m);
                a += samples_[j] * std::cos(th);
                b += samples_[j] * std::sin(th);
            }
            const bool edge = k == 0 || (m % 2 == 0 && k == kmax);
            cos_[k] = (edge ? 1.0 : 2.0) * a / static_cast<double>(m);
            sin_[k] = (edge ? 0.0 : 2.0) * b / static_cast<double>(m);
        }
    }

    double eval_sampled(double t) const
    {
        const double th = 2.0 * pi * t / period_;
        double s = 0.0;
        for (std::size_t k = 0; k < cos_.size(); ++k) {
            const double kt = static_cast<double>(k) * th;
            s += cos_[k] * std::cos(kt) + sin_[k] * std::sin(kt);
        }
        return s;
    }

    WarpKind kind_;
    double period_;
    double radius_ = 0.0;
    DumbbellParams dumbbell_{};
    std::vector<double> samples_;
    std::vector<double> cos_;
    std::vector<double> sin_;
};

// Same sides with a different neck radius. The period changes by 4 (r - r')
// so that each side keeps its pole-to-pole length.
inline WarpProfile with_neck_radius(const WarpProfile& p, double radius)
{
    require(p.kind() == WarpKind::dumbbell, "neck radius can only be changed on a dumbbell profile");
    require(std::isfinite(radius) && radius > 0.0, "neck radius must be positive");
    DumbbellParams d = p.dumbbell_params();
    const double period = p.period() + 4.0 * (d.neck_radius - radius);
    d.neck_radius = radius;
    return WarpProfile::dumbbell(d, period);
}

} // namespace spindirac
