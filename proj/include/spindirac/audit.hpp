#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "spindirac/degeneration.hpp"
#include "spindirac/error.hpp"
#include "spindirac/exact_spectra.hpp"

namespace spindirac {

enum class Verdict { holds, violated, informational };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::informational: return "informational";
    }
    return "unknown";
}

struct AuditReport {
    std::string check;
    double lhs = 0.0;
    double rhs = 0.0;
    // ">=" or "<=" for checked inequalities, empty for informational reports.
    std::string direction;
    Verdict verdict = Verdict::informational;
    std::vector<std::pair<std::string, double>> inputs;
    std::string note;
    bool warning = false;
};

inline constexpr double audit_rtol = 1e-12;

inline Verdict judge(double lhs, double rhs, const std::string& direction)
{
    const double slack = audit_rtol * std::max(std::abs(lhs), std::abs(rhs));
    const bool ok = direction == ">=" ? lhs >= rhs - slack : lhs <= rhs + slack;
    return ok ? Verdict::holds : Verdict::violated;
}

// lambda_1(D^2) Area >= 4 pi, which holds for every metric on S^2.
inline AuditReport baer_check(double lambda1_d2, double area)
{
    require(std::isfinite(lambda1_d2) && lambda1_d2 >= 0.0, "lambda must be a finite nonnegative number");
    require(std::isfinite(area) && area > 0.0, "area must be positive");
    AuditReport r;
    r.check = "baer";
    r.lhs = lambda1_d2 * area;
    r.rhs = 4.0 * pi;
    r.direction = ">=";
    r.verdict = judge(r.lhs, r.rhs, r.direction);
    r.inputs = {{"lambda", lambda1_d2}, {"area", area}};
    if (r.verdict == Verdict::violated) r.note = "below 4 pi: not a metric on S^2 or inconsistent input";
    return r;
}

// Lower bound Vol(S^n) for the conformal volume.
inline double liyau_floor(int n) { return sphere_volume(n); }

// (n^2 / 4) Vol(S^n)^{2/n}: upper bound for the conformal infimum of lambda_1^+(D^2) Vol^{2/n}.
inline double ammann_bound(int n)
{
    require(n >= 2, "dimension must be at least 2");
    return 0.25 * n * n * std::pow(sphere_volume(n), 2.0 / n);
}

inline AuditReport ammann_report(int n)
{
    AuditReport r;
    r.check = "ammann";
    r.lhs = ammann_bound(n);
    r.rhs = liyau_floor(n);
    r.inputs = {{"dim", static_cast<double>(n)}};
    r.note = "lhs = (n^2/4) Vol(S^n)^(2/n), rhs = Vol(S^n)";
    return r;
}

struct LiYauRhs {
    double value = 0.0;
    bool below_floor = false;
};

// n V_c^{2/n} for a user supplied conformal volume V_c.
inline LiYauRhs liyau_laplace_rhs(int n, double vc)
{
    require(n >= 2, "dimension must be at least 2");
    require(std::isfinite(vc) && vc > 0.0, "conformal volume must be positive");
    return {n * std::pow(vc, 2.0 / n), vc < liyau_floor(n) * (1.0 - audit_rtol)};
}

inline AuditReport liyau_report(int n, double vc)
{
    const LiYauRhs v = liyau_laplace_rhs(n, vc);
    AuditReport r;
    r.check = "liyau";
    r.lhs = v.value;
    r.rhs = liyau_floor(n);
    r.inputs = {{"dim", static_cast<double>(n)}, {"vc", vc}};
    r.warning = v.below_floor;
    r.note = v.below_floor ? "vc is below Vol(S^n), which no conformal volume can be" : "lhs = n vc^(2/n), rhs = Vol(S^n)";
    return r;
}

// For each candidate c, the first a in the sweep whose product falls below c Vol(S^2).
inline std::vector<AuditReport> corollary1_demo(SpinStructure2 spin, const std::vector<double>& a_values,
                                                const std::vector<double>& c_candidates)
{
    require(!a_values.empty(), "a sweep must be nonempty");
    for (std::size_t i = 1; i < a_values.size(); ++i) require(a_values[i] > a_values[i - 1], "a values must be increasing");
    const std::vector<FamilyPoint> family = stretch_family(spin, a_values);
    std::vector<AuditReport> out;
    for (const double c : c_candidates) {
        require(std::isfinite(c) && c > 0.0, "candidate constants must be positive");
        AuditReport r;
        r.check = "corollary1";
        r.rhs = c * liyau_floor(2);
        r.direction = ">=";
        r.inputs = {{"c", c}, {"spin_eps1", static_cast<double>(spin.eps1)}, {"spin_eps2", static_cast<double>(spin.eps2)}};
        const FamilyPoint* witness = nullptr;
        for (const FamilyPoint& p : family) {
            if (p.product < r.rhs) {
                witness = &p;
                break;
            }
        }
        if (witness != nullptr) {
            r.lhs = witness->product;
            r.verdict = Verdict::violated;
            r.inputs.emplace_back("a", witness->parameter);
            r.note = "candidate bound fails at a";
        } else {
            r.lhs = family.back().product;
            r.verdict = Verdict::informational;
            r.inputs.emplace_back("a", family.back().parameter);
            r.note = "no witness in range";
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace spindirac
