#pragma once

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spindirac/spindirac.hpp"
#include "spindirac/serialize.hpp"

namespace spindirac::cli {

struct RunConfig {
    std::string subcommand;
    std::string format = "json";
    std::string output;
};

// Real number, optionally with a pi factor: "2.5", "pi", "4pi^2", "pi^2/4", "0.5*pi", "3pi/2".
inline double parse_real(const std::string& token)
{
    static const std::regex re(
        R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(\*?\s*pi(?:\^(\d+))?)?\s*(?:/\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?))?\s*$)");
    std::smatch m;
    if (!std::regex_match(token, m, re) || (!m[1].matched && !m[2].matched)) {
        throw invalid_input("cannot parse number '" + token + "'");
    }
    double value = m[1].matched ? std::strtod(m[1].str().c_str(), nullptr) : 1.0;
    if (m[2].matched) {
        const int power = m[3].matched ? std::stoi(m[3].str()) : 1;
        require(power >= 1 && power <= 8, "pi exponent must lie in 1..8");
        for (int i = 0; i < power; ++i) value *= pi;
    }
    if (m[4].matched) {
        const double den = std::strtod(m[4].str().c_str(), nullptr);
        require(den != 0.0, "division by zero in '" + token + "'");
        value /= den;
    }
    require(std::isfinite(value), "number out of range: '" + token + "'");
    return value;
}

inline std::vector<double> parse_list(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(item));
    require(!out.empty(), "empty list");
    return out;
}

inline SpinStructure2 parse_spin(const std::string& text)
{
    static const std::regex re(R"(^\s*([01])\s*,\s*([01])\s*$)");
    std::smatch m;
    require(std::regex_match(text, m, re), "spin must be two flags in {0,1}, e.g. 0,1");
    return {m[1].str()[0] - '0', m[2].str()[0] - '0'};
}

namespace detail {

inline std::string csv_torus(const SpectrumSlice& s)
{
    std::ostringstream o;
    o << "value,multiplicity\n";
    for (const auto& e : s.entries) o << fmt17(e.value) << ',' << e.multiplicity << '\n';
    return o.str();
}

inline std::string csv_sphere(const SphereSpec& s)
{
    std::ostringstream o;
    o << "k,d2_value,multiplicity,d2_multiplicity\n";
    for (const auto& l : s.levels) o << l.k << ',' << fmt17(l.d2_value) << ',' << l.multiplicity << ',' << l.d2_multiplicity << '\n';
    return o.str();
}

inline std::string csv_warped(const EigenResult& r)
{
    std::ostringstream o;
    o << "d2,nu,k,index\n";
    for (const auto& e : r.entries) o << fmt17(e.d2) << ',' << fmt17(e.nu) << ',' << e.k << ',' << e.index << '\n';
    return o.str();
}

inline std::string csv_schedule(const Schedule& s)
{
    std::ostringstream o;
    o << "p,dim,a_p,L,epsilon,eta,interval_lo,interval_hi,volume_excess,volume_bound\n";
    o << s.p << ',' << s.dim << ',' << fmt17(s.a_p) << ',' << fmt17(s.L) << ',' << fmt17(s.epsilon) << ',' << fmt17(s.eta) << ','
      << fmt17(s.interval_lo) << ',' << fmt17(s.interval_hi) << ',' << fmt17(s.volume_excess) << ',' << fmt17(s.volume_bound)
      << '\n';
    return o.str();
}

inline std::string csv_certificates(const std::vector<NeckCertificate>& cs)
{
    std::ostringstream o;
    o << "lambda,residual,delta,energy_bound,nearest_eigenvalue,sound\n";
    for (const auto& c : cs) {
        o << fmt17(c.cert.lambda) << ',' << fmt17(c.cert.residual) << ',' << fmt17(c.delta) << ',' << fmt17(c.energy_bound) << ','
          << fmt17(c.cert.nearest_eigenvalue) << ',' << (c.cert.sound ? "true" : "false") << '\n';
    }
    return o.str();
}

inline std::string csv_audit(const std::vector<AuditReport>& rs)
{
    std::ostringstream o;
    o << "check,lhs,rhs,direction,verdict,warning\n";
    for (const auto& r : rs) {
        o << r.check << ',' << fmt17(r.lhs) << ',' << fmt17(r.rhs) << ',' << r.direction << ',' << to_string(r.verdict) << ','
          << (r.warning ? "true" : "false") << '\n';
    }
    return o.str();
}

inline std::vector<double> sweep(double start, double end, int steps, const std::string& spacing)
{
    require(steps >= 1, "steps must be at least 1");
    require(end >= start, "a-end must not be below a-start");
    std::vector<double> v;
    for (int i = 0; i < steps; ++i) {
        const double t = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
        double x = spacing == "log" ? start * std::pow(end / start, t) : start + (end - start) * t;
        if (i == 0) x = start;
        if (i == steps - 1 && steps > 1) x = end;
        v.push_back(x);
    }
    return v;
}

inline void emit(const RunConfig& cfg, const std::string& name, const json& j, const std::string& csv, std::ostream& out)
{
    std::string text;
    if (cfg.format == "csv") {
        require(!csv.empty(), "csv output is not available for this command");
        text = csv;
    } else {
        text = j.dump(2) + "\n";
    }
    std::string path = cfg.output;
    if (path.empty()) {
        if (const char* dir = std::getenv("SPINDIRAC_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
            path = (std::filesystem::path(dir) / (name + "." + cfg.format)).string();
        }
    }
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    require(static_cast<bool>(f), "cannot write output file '" + path + "'");
    f << text;
    require(static_cast<bool>(f), "failed writing output file '" + path + "'");
}

} // namespace detail

// Parses and runs one command line. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Dirac spectra on tori and spheres, collapsing metric families, and eigenvalue certificates", "spindirac"};
    app.require_subcommand(1);
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output", cfg.output, "Output file (default: stdout, or $SPINDIRAC_OUTPUT_DIR/<command>.<format>)");

    std::string lattice, spin = "0,0", cutoff, profile, radii, delta, target, lambda, area, clist, amax, amin = "1.5";
    std::string astart, aend, spacing = "log", vc, window, delta_ref;
    int dim = 2, kmax = -1, grid = 256, steps = 10, p = 1, mode = 0;
    std::string base_volume = "0";

    auto* spectrum = app.add_subcommand("spectrum", "Dirac spectra")->require_subcommand(1)->fallthrough();
    auto* torus = spectrum->add_subcommand("torus", "Flat torus D^2 spectrum below a cutoff")->fallthrough();
    torus->add_option("--lattice", lattice, "ux,uy,vx,vy")->required();
    torus->add_option("--spin", spin, "e1,e2");
    torus->add_option("--cutoff", cutoff, "Largest D^2 value")->required();
    auto* sphere = spectrum->add_subcommand("sphere", "Round sphere D^2 levels")->fallthrough();
    sphere->add_option("--dim", dim)->required();
    sphere->add_option("--kmax", kmax)->required();
    auto* warped = spectrum->add_subcommand("warped", "Warped-product torus spectrum")->fallthrough();
    warped->add_option("--profile", profile)->required();
    warped->add_option("--spin", spin);
    warped->add_option("--grid", grid);
    warped->add_option("--kmax", kmax, "Mode cutoff (default: chosen from --window)");
    warped->add_option("--window", window, "Largest D^2 value of interest when kmax is not given");

    auto* degenerate = app.add_subcommand("degenerate", "Collapsing families")->require_subcommand(1)->fallthrough();
    auto* stretch = degenerate->add_subcommand("stretch", "Stretched flat tori")->fallthrough();
    stretch->add_option("--spin", spin);
    stretch->add_option("--a-start", astart)->required();
    stretch->add_option("--a-end", aend)->required();
    stretch->add_option("--steps", steps);
    stretch->add_option("--spacing", spacing)->check(CLI::IsMember({"log", "linear"}));
    auto* neck = degenerate->add_subcommand("neck", "Shrinking-neck dumbbell sweep")->fallthrough();
    std::string neck_spin = "0,1";
    int neck_grid = 512, neck_kmax = 1;
    neck->add_option("--profile", profile)->required();
    neck->add_option("--radii", radii, "Decreasing neck radii")->required();
    neck->add_option("--spin", neck_spin);
    neck->add_option("--grid", neck_grid, "Reference nodes of side 1 on the conformal grid");
    neck->add_option("--kmax", neck_kmax);
    neck->add_option("--mode", mode);
    auto* schedule = degenerate->add_subcommand("schedule", "Collapse schedule bookkeeping")->fallthrough();
    schedule->add_option("--p", p)->required();
    schedule->add_option("--dim", dim);
    schedule->add_option("--spin", spin);
    schedule->add_option("--base-volume", base_volume);

    auto* certify_cmd = app.add_subcommand("certify", "Certify a plateau eigenvalue on a pinched dumbbell")->fallthrough();
    certify_cmd->add_option("--profile", profile)->required();
    certify_cmd->add_option("--delta", delta)->required();
    certify_cmd->add_option("--target", target)->required();
    certify_cmd->add_option("--spin", neck_spin);
    certify_cmd->add_option("--mode", mode);
    certify_cmd->add_option("--grid", neck_grid);
    certify_cmd->add_option("--delta-ref", delta_ref, "Reference cut radius (default delta/10)");

    auto* audit = app.add_subcommand("audit", "Inequality audits")->require_subcommand(1)->fallthrough();
    auto* baer = audit->add_subcommand("baer", "lambda_1(D^2) Area >= 4 pi")->fallthrough();
    baer->add_option("--lambda", lambda)->required();
    baer->add_option("--area", area)->required();
    auto* ammann = audit->add_subcommand("ammann", "(n^2/4) Vol(S^n)^(2/n)")->fallthrough();
    ammann->add_option("--dim", dim)->required();
    auto* cor = audit->add_subcommand("corollary1", "Witnesses against a conformal lower bound")->fallthrough();
    cor->add_option("--spin", spin);
    cor->add_option("--c-list", clist)->required();
    cor->add_option("--a-max", amax)->required();
    cor->add_option("--a-min", amin);
    int cor_steps = 200;
    cor->add_option("--steps", cor_steps);
    auto* liyau = audit->add_subcommand("liyau", "n V_c^(2/n) for a given conformal volume")->fallthrough();
    liyau->add_option("--dim", dim)->required();
    liyau->add_option("--vc", vc)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (torus->parsed()) {
            cfg.subcommand = "spectrum torus";
            const std::vector<double> v = parse_list(lattice);
            require(v.size() == 4, "--lattice needs four numbers ux,uy,vx,vy");
            const Lattice2 lat({v[0], v[1]}, {v[2], v[3]});
            const SpectrumSlice s = torus_spectrum(lat, parse_spin(spin), parse_real(cutoff));
            detail::emit(cfg, "spectrum-torus", to_json(s), detail::csv_torus(s), out);
        } else if (sphere->parsed()) {
            cfg.subcommand = "spectrum sphere";
            const SphereSpec s = sphere_spectrum(dim, kmax);
            detail::emit(cfg, "spectrum-sphere", to_json(s), detail::csv_sphere(s), out);
        } else if (warped->parsed()) {
            cfg.subcommand = "spectrum warped";
            const SpinStructure2 sp = parse_spin(spin);
            const WarpProfile prof = load_profile(profile);
            spindirac::detail::require_grid(grid);
            double win = 0.0;
            if (kmax < 0) {
                if (!window.empty()) {
                    win = parse_real(window);
                } else {
                    // Four times the lowest positive value of the two lightest modes.
                    const EigenResult probe = warped_spectrum(prof, sp, grid, 1);
                    win = 4.0 * lambda1_plus(probe);
                }
                kmax = default_kmax(prof.sample(grid), sp.eps2, win);
            }
            const EigenResult r = warped_spectrum(prof, sp, grid, kmax);
            json j = to_json(r);
            j["spin"] = {sp.eps1, sp.eps2};
            j["window"] = num(win > 0.0 ? win : std::nan(""));
            j["lambda1_plus"] = lambda1_plus(r);
            detail::emit(cfg, "spectrum-warped", j, detail::csv_warped(r), out);
        } else if (stretch->parsed()) {
            cfg.subcommand = "degenerate stretch";
            const SpinStructure2 sp = parse_spin(spin);
            const double a0 = parse_real(astart);
            const double a1 = parse_real(aend);
            require(a0 > 1.0, "a-start must exceed 1");
            const auto pts = stretch_family(sp, detail::sweep(a0, a1, steps, spacing));
            json j = family_json("stretch_family", pts);
            j["spin"] = {sp.eps1, sp.eps2};
            detail::emit(cfg, "degenerate-stretch", j, family_csv(pts), out);
        } else if (neck->parsed()) {
            cfg.subcommand = "degenerate neck";
            NeckSweepConfig nc;
            nc.spin = parse_spin(neck_spin);
            nc.reference_nodes = neck_grid;
            nc.kmax = neck_kmax;
            nc.mode = mode;
            const std::vector<double> rs = parse_list(radii);
            const NeckSweep s = neck_sweep(load_profile(profile), rs, nc);
            detail::emit(cfg, "degenerate-neck", to_json(s), family_csv(s.points), out);
        } else if (schedule->parsed()) {
            cfg.subcommand = "degenerate schedule";
            const Schedule s = theorem1_schedule(p, parse_real(base_volume), dim, parse_spin(spin));
            detail::emit(cfg, "degenerate-schedule", to_json(s), detail::csv_schedule(s), out);
        } else if (certify_cmd->parsed()) {
            cfg.subcommand = "certify";
            const double d = parse_real(delta);
            const CutoffSpec checked(d);
            const double lam = parse_real(target);
            const double ref = delta_ref.empty() ? 0.1 * d : parse_real(delta_ref);
            const NeckExperiment exp(load_profile(profile), parse_spin(neck_spin), neck_grid, ref, mode, lam);
            const NeckPoint pt = exp.evaluate(checked.delta, 0);
            json j = document("certificates");
            j["target"] = lam;
            j["certificates"] = json::array();
            for (const auto& c : pt.certificates) j["certificates"].push_back(to_json(c));
            j["subspace"] = to_json(pt.subspace);
            j["spinor_rank"] = pt.spinor_rank;
            if (pt.spinor_rank < static_cast<int>(pt.certificates.size())) j["warning"] = "test spinors are rank deficient";
            detail::emit(cfg, "certify", j, detail::csv_certificates(pt.certificates), out);
        } else if (baer->parsed()) {
            cfg.subcommand = "audit baer";
            const std::vector<AuditReport> rs{baer_check(parse_real(lambda), parse_real(area))};
            detail::emit(cfg, "audit-baer", audit_json(rs), detail::csv_audit(rs), out);
        } else if (ammann->parsed()) {
            cfg.subcommand = "audit ammann";
            const std::vector<AuditReport> rs{ammann_report(dim)};
            detail::emit(cfg, "audit-ammann", audit_json(rs), detail::csv_audit(rs), out);
        } else if (cor->parsed()) {
            cfg.subcommand = "audit corollary1";
            const double a0 = parse_real(amin);
            const double a1 = parse_real(amax);
            require(a0 > 1.0, "a-min must exceed 1");
            const auto rs = corollary1_demo(parse_spin(spin), detail::sweep(a0, a1, cor_steps, "log"), parse_list(clist));
            detail::emit(cfg, "audit-corollary1", audit_json(rs), detail::csv_audit(rs), out);
        } else if (liyau->parsed()) {
            cfg.subcommand = "audit liyau";
            const std::vector<AuditReport> rs{liyau_report(dim, parse_real(vc))};
            detail::emit(cfg, "audit-liyau", audit_json(rs), detail::csv_audit(rs), out);
        }
    } catch (const invalid_input& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const numerical_failure& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace spindirac::cli
