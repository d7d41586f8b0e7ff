#pragma once

#include <array>
#include <cmath>
#include <string>

#include "spindirac/error.hpp"

namespace spindirac {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double norm2(Vec2 a) { return dot(a, a); }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

// Rank-2 lattice Z u + Z v with a positively oriented basis.
class Lattice2 {
public:
    Lattice2(Vec2 u, Vec2 v) : u_(u), v_(v)
    {
        require(std::isfinite(u.x) && std::isfinite(u.y) && std::isfinite(v.x) && std::isfinite(v.y),
                "lattice vectors must be finite");
        const double det = cross(u, v);
        const double scale = std::sqrt(norm2(u) * norm2(v));
        require(scale > 0.0 && std::abs(det) > 1e-14 * scale, "degenerate lattice");
        require(det > 0.0, "lattice basis must be positively oriented (det(u|v) > 0)");
    }

    static Lattice2 rectangular(double a) { return Lattice2({1.0, 0.0}, {0.0, a}); }

    Vec2 u() const { return u_; }
    Vec2 v() const { return v_; }
    double area() const { return cross(u_, v_); }

    // Dual basis: <u*, u> = <v*, v> = 1, <u*, v> = <v*, u> = 0.
    Vec2 dual_u() const { return (1.0 / area()) * Vec2{v_.y, -v_.x}; }
    Vec2 dual_v() const { return (1.0 / area()) * Vec2{-u_.y, u_.x}; }

    Lattice2 scaled(double t) const
    {
        require(t > 0.0 && std::isfinite(t), "lattice scale factor must be positive");
        return Lattice2(t * u_, t * v_);
    }

    friend bool operator==(const Lattice2&, const Lattice2&) = default;

private:
    Vec2 u_;
    Vec2 v_;
};

// One of the four spin structures on a 2-torus: flag 1 means the induced
// covering of that generating circle is non-trivial.
struct SpinStructure2 {
    int eps1 = 0;
    int eps2 = 0;

    SpinStructure2() = default;
    SpinStructure2(int e1, int e2) : eps1(e1), eps2(e2)
    {
        require((e1 == 0 || e1 == 1) && (e2 == 0 || e2 == 1), "spin flags must be 0 or 1");
    }

    bool trivial() const { return eps1 == 0 && eps2 == 0; }
    std::string label() const { return std::to_string(eps1) + "," + std::to_string(eps2); }

    static std::array<SpinStructure2, 4> all() { return {{{0, 0}, {0, 1}, {1, 0}, {1, 1}}}; }

    friend bool operator==(const SpinStructure2&, const SpinStructure2&) = default;
};

} // namespace spindirac
