#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "spindirac/error.hpp"
#include "spindirac/warp_profile.hpp"

namespace spindirac {

inline constexpr int schema_version = 1;

inline nlohmann::json profile_to_json(const WarpProfile& p)
{
    nlohmann::json j;
    j["schema_version"] = schema_version;
    j["type"] = to_string(p.kind());
    j["period"] = p.period();
    switch (p.kind()) {
    case WarpKind::constant: j["parameters"] = {{"radius", p.radius()}}; break;
    case WarpKind::dumbbell: {
        const DumbbellParams& d = p.dumbbell_params();
        j["parameters"] = {{"plateau1", d.plateau1}, {"plateau2", d.plateau2}, {"neck_width", d.neck_width},
                           {"neck_radius", d.neck_radius}, {"smoothing", d.smoothing}};
        break;
    }
    case WarpKind::sampled: j["samples"] = p.samples(); break;
    }
    return j;
}

namespace detail {

inline double number_field(const nlohmann::json& obj, const char* key)
{
    if (!obj.is_object() || !obj.contains(key)) throw invalid_input(std::string("profile is missing '") + key + "'");
    const nlohmann::json& v = obj.at(key);
    if (!v.is_number()) throw invalid_input(std::string("profile field '") + key + "' must be a number");
    return v.get<double>();
}

} // namespace detail

inline WarpProfile profile_from_json(const nlohmann::json& j)
{
    require(j.is_object(), "profile must be a JSON object");
    if (j.contains("schema_version")) {
        require(j.at("schema_version").is_number_integer() && j.at("schema_version").get<int>() == schema_version,
                "unsupported profile schema_version");
    }
    require(j.contains("type") && j.at("type").is_string(), "profile is missing 'type'");
    const std::string type = j.at("type").get<std::string>();
    const double period = detail::number_field(j, "period");
    if (type == "constant") {
        require(j.contains("parameters"), "profile is missing 'parameters'");
        return WarpProfile::constant(detail::number_field(j.at("parameters"), "radius"), period);
    }
    if (type == "dumbbell") {
        require(j.contains("parameters"), "profile is missing 'parameters'");
        const nlohmann::json& q = j.at("parameters");
        DumbbellParams d;
        d.plateau1 = detail::number_field(q, "plateau1");
        d.plateau2 = detail::number_field(q, "plateau2");
        d.neck_width = detail::number_field(q, "neck_width");
        d.neck_radius = detail::number_field(q, "neck_radius");
        d.smoothing = q.contains("smoothing") ? detail::number_field(q, "smoothing") : -1.0;
        return WarpProfile::dumbbell(d, period);
    }
    if (type == "sampled") {
        require(j.contains("samples") && j.at("samples").is_array(), "profile is missing 'samples'");
        std::vector<double> s;
        for (const auto& v : j.at("samples")) {
            require(v.is_number(), "profile samples must be numbers");
            s.push_back(v.get<double>());
        }
        return WarpProfile::sampled(std::move(s), period);
    }
    throw invalid_input("unknown profile type '" + type + "'");
}

inline WarpProfile load_profile(const std::string& path)
{
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot open profile file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception&) {
        throw invalid_input("profile file '" + path + "' is not valid JSON");
    }
    return profile_from_json(j);
}

inline void save_profile(const WarpProfile& p, const std::string& path)
{
    std::ofstream out(path);
    require(static_cast<bool>(out), "cannot write profile file '" + path + "'");
    out << profile_to_json(p).dump(2) << '\n';
}

} // namespace spindirac
