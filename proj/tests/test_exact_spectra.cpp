#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles/oracles.hpp"
#include "spindirac/exact_spectra.hpp"

using namespace spindirac;

namespace {

constexpr double pi2 = pi * pi;

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Random well-conditioned oriented lattice.
Lattice2 random_lattice(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> len(0.4, 2.5), ang(0.35, pi - 0.35), rot(0.0, 2 * pi), ratio(1.0, 3.0);
    const double r0 = rot(rng), th = ang(rng), lu = len(rng), lv = lu * ratio(rng);
    return Lattice2({lu * std::cos(r0), lu * std::sin(r0)}, {lv * std::cos(r0 + th), lv * std::sin(r0 + th)});
}

} // namespace

TEST(Lattice, RejectsDegenerateBasis)
{
    EXPECT_THROW(Lattice2({1, 0}, {1, 0}), invalid_input);
    EXPECT_THROW(Lattice2({1, 2}, {2, 4}), invalid_input);
    EXPECT_THROW(Lattice2({0, 0}, {0, 1}), invalid_input);
}

TEST(Lattice, RejectsNegativeOrientation) { EXPECT_THROW(Lattice2({0, 1}, {1, 0}), invalid_input); }

TEST(Lattice, DualBasisPairing)
{
    std::mt19937_64 rng(11);
    for (int it = 0; it < 50; ++it) {
        const Lattice2 l = random_lattice(rng);
        EXPECT_NEAR(dot(l.dual_u(), l.u()), 1.0, 1e-13);
        EXPECT_NEAR(dot(l.dual_v(), l.v()), 1.0, 1e-13);
        EXPECT_NEAR(dot(l.dual_u(), l.v()), 0.0, 1e-13);
        EXPECT_NEAR(dot(l.dual_v(), l.u()), 0.0, 1e-13);
        EXPECT_GT(l.area(), 0.0);
    }
}

TEST(SpinStructure, FourDistinctValues)
{
    const auto all = SpinStructure2::all();
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = 0; j < all.size(); ++j) EXPECT_EQ(all[i] == all[j], i == j);
    EXPECT_THROW(SpinStructure2(2, 0), invalid_input);
}

TEST(DualShift, Examples)
{
    EXPECT_EQ(dual_shift(Lattice2::rectangular(3.7), {0, 0}), (Vec2{0.0, 0.0}));
    const Vec2 a = dual_shift(Lattice2::rectangular(2.0), {0, 1});
    EXPECT_DOUBLE_EQ(a.x, 0.0);
    EXPECT_DOUBLE_EQ(a.y, 0.25);
    const Vec2 b = dual_shift(Lattice2::rectangular(1.0), {1, 1});
    EXPECT_DOUBLE_EQ(b.x, 0.5);
    EXPECT_DOUBLE_EQ(b.y, 0.5);
}

TEST(DualShift, CongruencesAndHalfDualLattice)
{
    std::mt19937_64 rng(12);
    for (int it = 0; it < 100; ++it) {
        const Lattice2 l = random_lattice(rng);
        for (const auto s : SpinStructure2::all()) {
            const Vec2 chi = dual_shift(l, s);
            const auto frac = [](double x) { return x - std::floor(x + 1e-9); };
            EXPECT_NEAR(frac(dot(chi, l.u())), 0.5 * s.eps1, 1e-12);
            EXPECT_NEAR(frac(dot(chi, l.v())), 0.5 * s.eps2, 1e-12);
            // 2 chi pairs integrally with the lattice, so it lies in the dual lattice.
            const double pu = 2 * dot(chi, l.u()), pv = 2 * dot(chi, l.v());
            EXPECT_NEAR(pu, std::round(pu), 1e-12);
            EXPECT_NEAR(pv, std::round(pv), 1e-12);
        }
    }
}

TEST(TorusLambda1Plus, RectangularClosedForm)
{
    EXPECT_LT(rel(torus_lambda1_plus(Lattice2::rectangular(2.0), {0, 0}), pi2), 1e-14);
    EXPECT_NEAR(torus_lambda1_plus(Lattice2::rectangular(2.0), {0, 0}), 9.8696044011, 1e-9);
    EXPECT_NEAR(torus_lambda1_plus(Lattice2::rectangular(2.0), {0, 1}), 2.4674011003, 1e-9);
    for (const double a : {1.5, 2.0, 10.0, 100.0}) {
        EXPECT_LT(rel(torus_lambda1_plus(Lattice2::rectangular(a), {0, 0}), 4 * pi2 / (a * a)), 1e-12);
        EXPECT_LT(rel(torus_lambda1_plus(Lattice2::rectangular(a), {0, 1}), pi2 / (a * a)), 1e-12);
    }
}

TEST(TorusLambda1Plus, SquareLatticeBruteForce)
{
    const auto box = oracle::torus_values_box(1, 0, 0, 1, 1, 1, 3);
    EXPECT_LT(rel(torus_lambda1_plus(Lattice2::rectangular(1.0), {1, 1}), box.front()), 1e-14);
    EXPECT_NEAR(box.front(), 19.7392088, 1e-7);
}

TEST(TorusLambda1Plus, MatchesBruteForceOnRandomLattices)
{
    std::mt19937_64 rng(13);
    for (int it = 0; it < 60; ++it) {
        const Lattice2 l = random_lattice(rng);
        for (const auto s : SpinStructure2::all()) {
            const auto box = oracle::torus_values_box(l.u().x, l.u().y, l.v().x, l.v().y, s.eps1, s.eps2, 14);
            double best = 0;
            for (const double v : box) {
                if (v > 1e-9) {
                    best = v;
                    break;
                }
            }
            EXPECT_LT(rel(torus_lambda1_plus(l, s), best), 1e-12);
        }
    }
}

TEST(TorusKernel, OnlyTrivialStructure)
{
    std::mt19937_64 rng(14);
    for (int it = 0; it < 20; ++it) {
        const Lattice2 l = random_lattice(rng);
        EXPECT_EQ(torus_kernel_dim(l, {0, 0}), 2);
        EXPECT_EQ(torus_kernel_dim(l, {0, 1}), 0);
        EXPECT_EQ(torus_kernel_dim(l, {1, 0}), 0);
        EXPECT_EQ(torus_kernel_dim(l, {1, 1}), 0);
    }
}

TEST(TorusSpectrum, RectangleExample)
{
    const SpectrumSlice s = torus_spectrum(Lattice2::rectangular(2.0), {0, 0}, 50.0);
    ASSERT_EQ(s.entries.size(), 4u);
    const double want[] = {0.0, pi2, 4 * pi2, 5 * pi2};
    const long mult[] = {2, 4, 8, 8};
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(s.entries[static_cast<std::size_t>(i)].value, want[i], 1e-12 * std::max(1.0, want[i]));
        EXPECT_EQ(s.entries[static_cast<std::size_t>(i)].multiplicity, mult[i]);
    }
}

TEST(TorusSpectrum, SmallCutoffs)
{
    EXPECT_TRUE(torus_spectrum(Lattice2::rectangular(2.0), {0, 1}, 0.0).entries.empty());
    const SpectrumSlice s = torus_spectrum(Lattice2::rectangular(2.0), {0, 1}, 3.0);
    ASSERT_EQ(s.entries.size(), 1u);
    EXPECT_LT(rel(s.entries[0].value, pi2 / 4), 1e-14);
    EXPECT_EQ(s.entries[0].multiplicity, 4);
    EXPECT_THROW(torus_spectrum(Lattice2::rectangular(2.0), {0, 1}, -1.0), invalid_input);
}

TEST(TorusSpectrum, MatchesBruteForceAndInvariants)
{
    std::mt19937_64 rng(15);
    for (int it = 0; it < 30; ++it) {
        const Lattice2 l = random_lattice(rng);
        for (const auto s : SpinStructure2::all()) {
            const double cutoff = 400.0;
            const SpectrumSlice slice = torus_spectrum(l, s, cutoff);
            const auto ref = oracle::torus_slice_box(l.u().x, l.u().y, l.v().x, l.v().y, s.eps1, s.eps2, cutoff, 30);
            ASSERT_EQ(slice.entries.size(), ref.size());
            for (std::size_t i = 0; i < ref.size(); ++i) {
                EXPECT_NEAR(slice.entries[i].value, ref[i].first, 1e-10 * std::max(1.0, ref[i].first));
                EXPECT_EQ(slice.entries[i].multiplicity, ref[i].second);
            }
            for (std::size_t i = 0; i < slice.entries.size(); ++i) {
                EXPECT_GE(slice.entries[i].value, 0.0);
                EXPECT_LE(slice.entries[i].value, cutoff * (1 + 1e-12));
                EXPECT_EQ(slice.entries[i].multiplicity % 2, 0);
                if (i > 0) EXPECT_GT(slice.entries[i].value, slice.entries[i - 1].value);
            }
            const bool has_zero = !slice.entries.empty() && slice.entries[0].value == 0.0;
            EXPECT_EQ(has_zero, s.trivial());
            if (has_zero) EXPECT_EQ(slice.entries[0].multiplicity, 2);
        }
    }
}

TEST(TorusSpectrum, Lambda1PlusIsSmallestPositiveValue)
{
    std::mt19937_64 rng(16);
    for (int it = 0; it < 40; ++it) {
        const Lattice2 l = random_lattice(rng);
        for (const auto s : SpinStructure2::all()) {
            const double lam = torus_lambda1_plus(l, s);
            const SpectrumSlice slice = torus_spectrum(l, s, 3.0 * lam);
            const auto& e = slice.entries[s.trivial() ? 1 : 0];
            EXPECT_EQ(e.value, lam);
        }
    }
}

TEST(TorusSpectrum, ScalingCovariance)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> tdist(0.2, 5.0);
    for (int it = 0; it < 40; ++it) {
        const Lattice2 l = random_lattice(rng);
        const double t = tdist(rng);
        const Lattice2 lt = l.scaled(t);
        EXPECT_LT(rel(lt.area(), t * t * l.area()), 1e-13);
        for (const auto s : SpinStructure2::all()) {
            const double a = torus_lambda1_plus(l, s), b = torus_lambda1_plus(lt, s);
            EXPECT_LT(rel(b, a / (t * t)), 1e-12);
            EXPECT_LT(rel(b * lt.area(), a * l.area()), 1e-12);
            const SpectrumSlice s1 = torus_spectrum(l, s, 300.0);
            const SpectrumSlice s2 = torus_spectrum(lt, s, 300.0 / (t * t));
            ASSERT_EQ(s1.entries.size(), s2.entries.size());
            for (std::size_t i = 0; i < s1.entries.size(); ++i) {
                EXPECT_NEAR(s2.entries[i].value * t * t, s1.entries[i].value, 1e-12 * std::max(1.0, s1.entries[i].value));
                EXPECT_EQ(s2.entries[i].multiplicity, s1.entries[i].multiplicity);
            }
        }
    }
}

TEST(TorusSpectrum, NontrivialStructuresAgreeOnSquareLattice)
{
    const Lattice2 sq = Lattice2::rectangular(1.0);
    const double a = torus_lambda1_plus(sq, {0, 1});
    EXPECT_LT(rel(torus_lambda1_plus(sq, {1, 0}), a), 1e-12);
    // (1,1) on the square lattice corresponds to (0,1) on the basis (1,1),(0,1) of the same lattice.
    const Lattice2 rebased({1.0, 1.0}, {0.0, 1.0});
    EXPECT_LT(rel(torus_lambda1_plus(rebased, {0, 1}), torus_lambda1_plus(sq, {1, 1})), 1e-12);
    EXPECT_LT(rel(torus_lambda1_plus(rebased, {1, 0}), a), 1e-12);
}

TEST(TorusSpectrum, WeylCount)
{
    const Lattice2 sq = Lattice2::rectangular(1.0);
    for (const double cutoff : {400.0, 2000.0, 10000.0}) {
        for (const auto s : SpinStructure2::all()) {
            const double count = static_cast<double>(torus_spectrum(sq, s, cutoff).total_multiplicity());
            const double weyl = sq.area() / (4 * pi) * cutoff * 2;
            EXPECT_LT(std::abs(count - weyl) / weyl, 0.2);
        }
    }
}

TEST(SphereSpectrum, Examples)
{
    const SphereSpec s2 = sphere_spectrum(2, 1);
    EXPECT_EQ(s2.levels[0].d2_value, 1.0);
    EXPECT_EQ(s2.levels[0].multiplicity, 2u);
    EXPECT_EQ(s2.levels[1].d2_value, 4.0);
    EXPECT_EQ(s2.levels[1].multiplicity, 4u);
    const SphereSpec s3 = sphere_spectrum(3, 0);
    EXPECT_EQ(s3.levels[0].d2_value, 2.25);
    EXPECT_EQ(s3.levels[0].multiplicity, 2u);
    EXPECT_EQ(s3.levels[0].d2_multiplicity, 4u);
    EXPECT_THROW(sphere_spectrum(1, 0), invalid_input);
    EXPECT_THROW(sphere_spectrum(3, -1), invalid_input);
}

TEST(SphereSpectrum, MultiplicityMatchesPascalRecursion)
{
    for (int n = 2; n <= 9; ++n) {
        const SphereSpec s = sphere_spectrum(n, 12);
        for (const auto& l : s.levels) {
            EXPECT_EQ(l.multiplicity, (std::uint64_t{1} << (n / 2)) * oracle::pascal(l.k + n - 1, l.k));
            EXPECT_EQ(l.d2_multiplicity, 2 * l.multiplicity);
            EXPECT_EQ(l.d2_value, (0.5 * n + l.k) * (0.5 * n + l.k));
        }
        EXPECT_GT(s.levels[0].d2_value, 0.0);
        for (std::size_t i = 1; i < s.levels.size(); ++i) EXPECT_GT(s.levels[i].d2_value, s.levels[i - 1].d2_value);
    }
}

TEST(SphereSpectrum, TwoSphereWeylCount)
{
    // Dirac eigenvalues +-(k+1) on S^2 with multiplicity 2(k+1) each.
    const SphereSpec s = sphere_spectrum(2, 200);
    for (const auto& l : s.levels) EXPECT_EQ(l.d2_multiplicity, static_cast<std::uint64_t>(4 * (l.k + 1)));
}

TEST(SphereVolume, Values)
{
    EXPECT_LT(rel(sphere_volume(2), 4 * pi), 1e-15);
    EXPECT_LT(rel(sphere_volume(3), 2 * pi2), 1e-15);
    EXPECT_LT(rel(sphere_volume(4), 8 * pi2 / 3), 1e-14);
    EXPECT_NEAR(sphere_volume(4), 26.3189450, 1e-7);
    // Recursion Vol(S^n) = 2 pi Vol(S^{n-2}) / (n - 1).
    for (int n = 4; n <= 20; ++n) EXPECT_LT(rel(sphere_volume(n), 2 * pi * sphere_volume(n - 2) / (n - 1)), 1e-13);
}

TEST(Binomial, OverflowIsReported)
{
    EXPECT_EQ(binomial(10, 3), 120u);
    EXPECT_EQ(binomial(62, 31), oracle::pascal(62, 31));
    EXPECT_THROW(binomial(200, 100), invalid_input);
}
