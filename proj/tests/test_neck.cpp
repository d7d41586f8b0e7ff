#include <cmath>

#include <gtest/gtest.h>

#include "oracles/oracles.hpp"
#include "spindirac/degeneration.hpp"
#include "spindirac/neck.hpp"

using namespace spindirac;

namespace {

WarpProfile symmetric_dumbbell(double r = 0.1)
{
    DumbbellParams d;
    d.neck_radius = r;
    d.smoothing = 0.25;
    return WarpProfile::dumbbell(d, 7.6 - 4.0 * (r - 0.1));
}

// s(d) = ln(cone_end) - P + int_{cone_end}^{d} dx / F(x), by Simpson.
double conformal_coordinate(const SideConformalMap& map, double d)
{
    const SideProfile& sp = map.profile();
    const double c0 = map.cone_end();
    const double base = std::log(c0) - map.pole_offset();
    if (d <= c0) return std::log(d) - map.pole_offset();
    const double top = std::min(d, sp.plateau);
    double s = base + oracle::simpson([&](double x) { return 1.0 / sp.radial(x); }, c0, top, 20000);
    if (d > sp.plateau) s += (d - sp.plateau) / sp.plateau;
    return s;
}

} // namespace

TEST(SideConformalMap, InvertsTheConformalCoordinate)
{
    const SideConformalMap map(SideProfile{1.0, 0.25, 4.0});
    EXPECT_NEAR(map.cone_end(), 0.75, 0.0);
    EXPECT_NEAR(map.pole_distance(0.0), 2.0, 1e-12);
    for (const double d : {1e-9, 1e-3, 0.5, 0.75, 0.8, 0.9, 0.99, 1.0, 1.3, 1.9}) {
        const double s = conformal_coordinate(map, d);
        EXPECT_NEAR(map.pole_distance(s), d, 1e-10 * std::max(d, 1e-3)) << d;
        EXPECT_NEAR(map.pole_distance(-s), d, 1e-10 * std::max(d, 1e-3)) << d;
    }
    EXPECT_NEAR(conformal_coordinate(map, 2.0), 0.0, 1e-10);
    double prev = 0.0;
    for (double s = -30.0; s <= 0.0; s += 0.05) {
        const double d = map.pole_distance(s);
        EXPECT_GT(d, prev);
        prev = d;
    }
}

TEST(SideConformalMap, ConeIsExact)
{
    const SideConformalMap map(SideProfile{1.0, 0.25, 4.0});
    const ConformalGrid g = reference_grid(map, 0, 64, 0.5);
    for (int j = 0; j < g.size(); ++j) {
        if (g.pole_distance[static_cast<std::size_t>(j)] <= 0.75) EXPECT_EQ(g.f[static_cast<std::size_t>(j)], g.pole_distance[static_cast<std::size_t>(j)]);
    }
    EXPECT_NEAR(g.pole_distance.front(), g.pole_distance.back(), 1e-12 * g.pole_distance.front());
    EXPECT_NEAR(g.pole_distance.front(), std::exp(map.pole_offset() - 32 * 0.5 + 0.25), 1e-12 * g.pole_distance.front());
}

TEST(NeckLadder, Validation)
{
    EXPECT_THROW(make_neck_ladder(WarpProfile::constant(1.0, 2.0), 1e-3, 64), invalid_input);
    DumbbellParams tube;
    tube.neck_width = 0.2;
    EXPECT_THROW(make_neck_ladder(WarpProfile::dumbbell(tube, 8.0), 1e-3, 64), invalid_input);
    const WarpProfile p = symmetric_dumbbell();
    EXPECT_THROW(make_neck_ladder(p, 0.9, 64), invalid_input);
    EXPECT_THROW(make_neck_ladder(p, 1e-3, 63), invalid_input);
    EXPECT_THROW(NeckExperiment(p, {0, 0}, 64, 1e-3), invalid_input);
    const NeckLadder lad = make_neck_ladder(p, 1e-3, 64);
    EXPECT_THROW(quantize_neck(lad, 1e-4), invalid_input);
    EXPECT_THROW(quantize_neck(lad, 0.8), invalid_input);
}

TEST(NeckLadder, QuantizationIsExactIndexMap)
{
    DumbbellParams d;
    d.plateau2 = 1.3;
    d.neck_radius = 0.1;
    d.smoothing = 0.25;
    const WarpProfile p = WarpProfile::dumbbell(d, 9.0);
    const NeckLadder lad = make_neck_ladder(p, 1e-4, 96);
    EXPECT_EQ(lad.reference_size[0], 96);
    EXPECT_NE(lad.reference_size[1], 96);
    EXPECT_EQ(lad.reference_size[1] % 2, 0);
    // Both reference grids close at the same reference radius.
    for (int s = 0; s < 2; ++s) {
        const double closing = lad.maps[static_cast<std::size_t>(s)].pole_offset() - 0.5 * lad.reference_size[static_cast<std::size_t>(s)] * lad.h;
        EXPECT_NEAR(closing, lad.log_delta_ref, 1e-9);
    }
    for (const double r : {1e-1, 3e-2, 1e-3}) {
        const QuantizedNeck q = quantize_neck(lad, r);
        EXPECT_GE(q.m, 1);
        EXPECT_NEAR(std::log(q.delta), lad.log_delta_ref + q.m * lad.h, 1e-12);
        EXPECT_LE(std::abs(std::log(q.delta / r)), 0.5 * lad.h + 1e-12);
        for (int s = 0; s < 2; ++s) {
            const ConformalGrid ref = reference_grid(lad.maps[static_cast<std::size_t>(s)], s, lad.reference_size[static_cast<std::size_t>(s)], lad.h);
            // The glued grid starts half a step inside the neck on both sides.
            const double first = ref.pole_distance[static_cast<std::size_t>(q.m)];
            EXPECT_NEAR(std::log(first), std::log(q.delta) + 0.5 * lad.h, 1e-9);
        }
    }
}

TEST(ConformalEigen, MatchesDirectSolveAtModerateNeck)
{
    const NeckLadder lad = make_neck_ladder(symmetric_dumbbell(), 1e-2, 64);
    const ConformalGrid g = reference_grid(lad.maps[0], 0, 64, lad.h);
    for (const int eps_t : {0, 1}) {
        const Eigen::MatrixXcd h = conformal_mode_matrix(g, 0.5, eps_t);
        EXPECT_LE(hermitian_defect(h), 1e-12 * h.cwiseAbs().maxCoeff());
        const Eigen::VectorXd direct = eigensolve_hermitian(h, false).values;
        const ConformalEigen inv = conformal_eigen(g, 0.5, eps_t, true);
        for (Eigen::Index i = 0; i < direct.size(); ++i) EXPECT_NEAR(inv.values(i), direct(i), 1e-9 * std::max(1.0, std::abs(direct(i))));
        for (Eigen::Index i = 0; i < inv.values.size(); ++i) {
            EXPECT_LE(residual_norm(h, inv.vectors.col(i), inv.values(i)), 1e-8 * std::max(1.0, std::abs(inv.values(i))));
        }
    }
    EXPECT_THROW(conformal_eigen(g, 0.0, 0, false), invalid_input);
}

TEST(ConformalEigen, AgreesWithUniformGridOnFatNeck)
{
    // Both discretizations of the same glued surface at neck radius ~0.3.
    const WarpProfile p = symmetric_dumbbell();
    const NeckExperiment exp(p, {1, 1}, 160, 1e-2);
    const NeckPoint pt = exp.evaluate(0.3, 1);
    const double uniform = lambda1_plus(warped_spectrum(with_neck_radius(p, pt.delta), {1, 1}, 512, 1));
    EXPECT_NEAR(pt.lambda1_plus, uniform, 1e-3 * uniform);
}

TEST(NeckExperiment, CertificatesOnShrinkingNecks)
{
    const NeckExperiment exp(symmetric_dumbbell(), {0, 1}, 192, 1e-7);
    ASSERT_EQ(exp.targets().size(), 2u);
    EXPECT_NEAR(exp.targets()[0].lambda, exp.targets()[1].lambda, 1e-9);
    double prev_res = 1e300;
    for (const double r : {1e-2, 1e-3, 1e-4, 1e-5}) {
        const NeckPoint pt = exp.evaluate(r, 1);
        EXPECT_EQ(pt.spinor_rank, 2);
        EXPECT_EQ(pt.max_cross_inner, 0.0);
        EXPECT_TRUE(pt.subspace.sound);
        for (const NeckCertificate& c : pt.certificates) {
            EXPECT_TRUE(c.cert.sound);
            EXPECT_LE(c.cert.residual, c.residual_bound);
            EXPECT_NEAR(c.distortion, 1.0, 1e-12);
            EXPECT_NEAR(c.annulus, -2.0 / std::log(pt.delta), 1e-14);
            // Measured cut-off energy per neck against sup|phi|^2 times the exact annulus integral.
            for (const double e : c.neck_energy) EXPECT_LE(e, c.distortion * c.sup_density * c.annulus * 1.05);
            EXPECT_NEAR(c.rate_constant, c.residual_bound * std::sqrt(-std::log(pt.delta)), 1e-12 * c.rate_constant);
        }
        const double res = pt.certificates[0].cert.residual;
        EXPECT_LT(res, prev_res);
        prev_res = res;
    }
}

TEST(NeckSweep, PointsAndValidation)
{
    const WarpProfile p = symmetric_dumbbell();
    NeckSweepConfig cfg;
    cfg.reference_nodes = 128;
    const NeckSweep s = neck_sweep(p, {1e-2, 1e-3}, cfg);
    ASSERT_EQ(s.points.size(), 2u);
    for (const FamilyPoint& fp : s.points) {
        EXPECT_EQ(fp.source, Source::discrete);
        EXPECT_NEAR(fp.product, fp.lambda1_plus * fp.volume, 1e-12 * fp.product);
    }
    EXPECT_LT(s.points[0].volume, s.points[1].volume);
    EXPECT_THROW(neck_sweep(p, {1e-3, 1e-2}, cfg), invalid_input);
    EXPECT_THROW(neck_sweep(p, {}, cfg), invalid_input);
    EXPECT_THROW(neck_sweep(p, {1e-2, -1.0}, cfg), invalid_input);
}
