// Prints lambda_1^+ Area along the stretched tori and a shrinking-neck dumbbell.
#include <cstdio>

#include "spindirac/spindirac.hpp"

int main()
{
    using namespace spindirac;
    std::printf("stretched tori, spin (0,1)\n");
    for (const FamilyPoint& p : stretch_family({0, 1}, {2.0, 10.0, 100.0, 1000.0})) {
        std::printf("  a = %-8g lambda1+ = %-12.6g product = %.6g\n", p.parameter, p.lambda1_plus, p.product);
    }

    DumbbellParams d;
    d.neck_radius = 0.1;
    d.smoothing = 0.25;
    const WarpProfile dumbbell = WarpProfile::dumbbell(d, 7.6);
    NeckSweepConfig cfg;
    cfg.reference_nodes = 256;
    const NeckSweep s = neck_sweep(dumbbell, {1e-2, 1e-4, 1e-6}, cfg);
    std::printf("dumbbell necks, spin (0,1), plateau eigenvalue %.10g\n", s.targets.front().lambda);
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        const NeckCertificate& c = s.necks[i].certificates.front();
        std::printf("  delta = %-9.3g lambda1+ = %-10.6g residual = %-10.3g bound = %.3g\n", s.points[i].parameter,
                    s.points[i].lambda1_plus, c.cert.residual, c.residual_bound);
    }
}
