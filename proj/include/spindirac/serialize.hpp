#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spindirac/audit.hpp"
#include "spindirac/degeneration.hpp"
#include "spindirac/exact_spectra.hpp"
#include "spindirac/format.hpp"
#include "spindirac/neck.hpp"
#include "spindirac/profile_io.hpp"
#include "spindirac/rayleigh.hpp"
#include "spindirac/warped_dirac.hpp"

namespace spindirac {

using nlohmann::json;

inline json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline json document(const std::string& kind)
{
    return json{{"schema_version", schema_version}, {"kind", kind}};
}

inline json to_json(const SpectrumSlice& s)
{
    json j = document("torus_spectrum");
    j["cutoff"] = s.cutoff;
    j["source"] = s.source;
    j["entries"] = json::array();
    for (const auto& e : s.entries) j["entries"].push_back({{"value", e.value}, {"multiplicity", e.multiplicity}});
    return j;
}

inline json to_json(const SphereSpec& s)
{
    json j = document("sphere_spectrum");
    j["dim"] = s.dim;
    j["levels"] = json::array();
    for (const auto& l : s.levels) {
        j["levels"].push_back(
            {{"k", l.k}, {"d2_value", l.d2_value}, {"multiplicity", l.multiplicity}, {"d2_multiplicity", l.d2_multiplicity}});
    }
    return j;
}

inline json to_json(const EigenResult& r)
{
    json j = document("warped_spectrum");
    j["grid"] = r.grid_size;
    j["kmax"] = r.kmax;
    j["entries"] = json::array();
    for (const auto& e : r.entries) j["entries"].push_back({{"d2", e.d2}, {"nu", e.nu}, {"k", e.k}, {"index", e.index}});
    j["mode_residuals"] = r.mode_residuals;
    j["mode_spectral_radius"] = r.mode_spectral_radius;
    return j;
}

// "strictly_decreasing", "nonincreasing", "strictly_increasing", "nondecreasing" or "not_monotone".
inline std::string monotonicity(const std::vector<double>& v)
{
    bool sdec = true, ninc = true, sinc = true, ndec = true;
    for (std::size_t i = 1; i < v.size(); ++i) {
        sdec = sdec && v[i] < v[i - 1];
        ninc = ninc && v[i] <= v[i - 1];
        sinc = sinc && v[i] > v[i - 1];
        ndec = ndec && v[i] >= v[i - 1];
    }
    if (sdec) return "strictly_decreasing";
    if (sinc) return "strictly_increasing";
    if (ninc) return "nonincreasing";
    if (ndec) return "nondecreasing";
    return "not_monotone";
}

inline std::vector<double> products(const std::vector<FamilyPoint>& pts)
{
    std::vector<double> v;
    for (const auto& p : pts) v.push_back(p.product);
    return v;
}

inline json to_json(const FamilyPoint& p)
{
    return {{"parameter", p.parameter}, {"lambda1_plus", p.lambda1_plus}, {"volume", p.volume},
            {"product", p.product},     {"source", to_string(p.source)},   {"dim", p.dim}};
}

inline json family_json(const std::string& kind, const std::vector<FamilyPoint>& pts)
{
    json j = document(kind);
    j["points"] = json::array();
    for (const auto& p : pts) j["points"].push_back(to_json(p));
    j["summary"] = {{"products", monotonicity(products(pts))}};
    return j;
}

inline std::string family_csv(const std::vector<FamilyPoint>& pts)
{
    std::ostringstream out;
    out << "parameter,lambda1_plus,volume,product,source\n";
    for (const auto& p : pts) {
        out << fmt17(p.parameter) << ',' << fmt17(p.lambda1_plus) << ',' << fmt17(p.volume) << ',' << fmt17(p.product) << ','
            << to_string(p.source) << '\n';
    }
    out << "# products " << monotonicity(products(pts)) << '\n';
    return out.str();
}

inline json to_json(const Schedule& s)
{
    json j = document("schedule");
    j["p"] = s.p;
    j["dim"] = s.dim;
    if (s.model_symbolic) {
        j["model"] = {{"symbolic", true}, {"note", "existence-only model with lambda1_plus <= 1/p"}};
    } else {
        j["model"] = {{"symbolic", false}, {"a_p", s.a_p}, {"spin", {s.spin.eps1, s.spin.eps2}}, {"unit_area", true}};
    }
    j["L"] = s.L;
    j["epsilon"] = s.epsilon;
    j["eta"] = num(s.eta);
    j["eta_background_verified"] = s.eta_background_verified;
    j["interval"] = {s.interval_lo, s.interval_hi};
    j["base_volume"] = s.base_volume;
    j["volume_excess"] = s.volume_excess;
    j["volume_bound"] = s.volume_bound;
    return j;
}

inline json to_json(const NeckCertificate& c)
{
    return {{"lambda", c.cert.lambda},
            {"residual", c.cert.residual},
            {"delta", c.delta},
            {"energy_bound", c.energy_bound},
            {"nearest_eigenvalue", num(c.cert.nearest_eigenvalue)},
            {"sound", c.cert.sound},
            {"side", c.side + 1},
            {"nu", c.nu},
            {"test_vector_norm", c.cert.test_vector_norm},
            {"neck_energy", {c.neck_energy[0], c.neck_energy[1]}},
            {"distortion", c.distortion},
            {"sup_density", c.sup_density},
            {"annulus_energy", c.annulus},
            {"residual_bound", c.residual_bound},
            {"rate_constant", c.rate_constant}};
}

inline json to_json(const SubspaceCertificate& s)
{
    return {{"lambda", s.lambda},
            {"residual", s.residual},
            {"dimension", s.dimension},
            {"eigenvalues_in_interval", s.eigenvalues_in_interval},
            {"sound", s.sound}};
}

inline json to_json(const NeckPoint& p)
{
    json j{{"delta", p.delta},
           {"glued_nodes", p.glued_nodes},
           {"area", p.area},
           {"lambda1_plus", p.lambda1_plus},
           {"spinor_rank", p.spinor_rank},
           {"max_cross_inner", p.max_cross_inner},
           {"subspace", to_json(p.subspace)}};
    j["certificates"] = json::array();
    for (const auto& c : p.certificates) j["certificates"].push_back(to_json(c));
    return j;
}

inline json to_json(const NeckSweep& s)
{
    json j = family_json("neck_sweep", s.points);
    j["spacing"] = s.spacing;
    j["targets"] = json::array();
    for (const auto& t : s.targets) j["targets"].push_back({{"side", t.side + 1}, {"nu", t.nu}, {"lambda", t.lambda}});
    j["necks"] = json::array();
    for (const auto& n : s.necks) j["necks"].push_back(to_json(n));
    j["gaps"] = s.gaps;
    j["summary"]["gaps"] = monotonicity(s.gaps);
    return j;
}

inline json to_json(const AuditReport& r)
{
    json inputs = json::object();
    for (const auto& [k, v] : r.inputs) inputs[k] = num(v);
    return {{"check", r.check},
            {"lhs", num(r.lhs)},
            {"rhs", num(r.rhs)},
            {"direction", r.direction},
            {"verdict", to_string(r.verdict)},
            {"inputs", inputs},
            {"note", r.note},
            {"warning", r.warning}};
}

inline json audit_json(const std::vector<AuditReport>& reports)
{
    json j = document("audit");
    j["reports"] = json::array();
    for (const auto& r : reports) j["reports"].push_back(to_json(r));
    return j;
}

} // namespace spindirac
