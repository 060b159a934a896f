#pragma once

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "slag/dsl/printer.hpp"
#include "slag/report/run.hpp"

namespace slag::report {

inline constexpr int schema_version = 1;

namespace detail {

inline nlohmann::json number_or_null(double v)
{
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

inline nlohmann::json scenario_json(const Scenario& sc)
{
    using nlohmann::json;
    json j;
    j["source"] = std::filesystem::path(sc.source).filename().string();
    j["kind"] = name(sc.kind);
    j["mode"] = name(sc.mode);
    j["order"] = sc.order;
    j["grid"] = sc.grid;
    j["t_samples"] = sc.t_samples;
    j["tolerance"] = sc.tolerance;
    if (!sc.expect.empty())
        j["expect"] = sc.expect;
    json base = json::array();
    for (const auto& b : sc.base_x)
        base.push_back(slag::ScalarTraits<slag::Rational>::to_string(b));
    j["base"] = base;
    if (sc.kind == Kind::embed) {
        json m = json::object();
        for (const auto& e : sc.metric)
            m[e.key] = dsl::to_string(e.expr);
        j["metric"] = m;
    } else {
        json f;
        f["dim"] = sc.fam.dim;
        f["label"] = sc.fam.kind;
        f["constructor"] = sc.constructor;
        json entries = json::object();
        for (const auto& e : sc.family)
            entries[e.key] = dsl::to_string(e.expr);
        f["entries"] = entries;
        f["t_lo"] = sc.fam.t_lo;
        f["t_hi"] = sc.fam.t_hi;
        f["t_open"] = sc.fam.t_hi_open;
        json domains = json::array();
        for (int k = 0; k < sc.fam.dim; ++k) {
            const auto& d = sc.fam.domains[static_cast<std::size_t>(k)];
            domains.push_back({{"periodic", d.periodic}, {"lo", d.lo}, {"hi", d.hi}});
        }
        f["domains"] = domains;
        f["base_t"] = slag::ScalarTraits<slag::Rational>::to_string(sc.base_t);
        j["family"] = f;
    }
    return j;
}

inline nlohmann::json phi_json(const hodge::PhiCurve& c, const std::string& classification)
{
    using nlohmann::json;
    json j;
    json g11 = json::array(), g22 = json::array(), g33 = json::array(), closed = json::array(),
         vol = json::array(), grams = json::array(), dphi = json::array();
    for (std::size_t k = 0; k < c.t.size(); ++k) {
        g11.push_back(c.g_int[k][0]);
        g22.push_back(c.g_int[k][1]);
        g33.push_back(number_or_null(c.g_int[k][2]));
        closed.push_back(number_or_null(c.closed_form[k]));
        vol.push_back(c.volume_scale[k]);
        json G = json::array();
        for (int a = 0; a < c.dim; ++a) {
            json row = json::array();
            for (int b = 0; b < c.dim; ++b)
                row.push_back(c.grams[k](a, b));
            G.push_back(row);
        }
        grams.push_back(G);
    }
    for (double d : c.derivative())
        dphi.push_back(d);
    j["dim"] = c.dim;
    j["t"] = c.t;
    j["phi"] = c.phi;
    j["g11_int"] = g11;
    j["g22_int"] = g22;
    j["g33_int"] = g33;
    j["closed_form"] = closed;
    j["volume_scale"] = vol;
    j["gram"] = grams;
    j["dphi_dt"] = dphi;
    j["spread"] = c.spread();
    j["classification"] = classification;
    return j;
}

} // namespace detail

/// Report as JSON. Timings are included only on request so that reports of
/// identical runs compare equal byte for byte.
inline nlohmann::json to_json(const RunReport& r, bool timings = false)
{
    using nlohmann::json;
    json j;
    j["schema_version"] = schema_version;
    j["scenario"] = detail::scenario_json(r.scenario);
    if (r.residuals) {
        json entries = json::array();
        for (const auto& e : r.residuals->entries)
            entries.push_back({{"name", e.name}, {"value", e.value}, {"exact_zero", e.exact_zero}, {"order", e.order}});
        j["residuals"] = {{"max", r.residuals->max()},
                          {"all_exact_zero", r.residuals->all_exact_zero()},
                          {"det_positive", r.residuals->det_positive},
                          {"entries", entries}};
    }
    if (r.structure) {
        const auto& s = *r.structure;
        j["structure"] = {{"terms", s.terms},
                          {"gamma_re_constant", s.gamma_re_constant},
                          {"gamma_im_constant", s.gamma_im_constant},
                          {"gamma_constant", s.gamma_constant},
                          {"b_zero", s.b_zero},
                          {"a_y_independent", s.a_y_independent}};
    }
    if (r.family_check) {
        const auto& f = *r.family_check;
        j["family_check"] = {{"det_t", f.det_t},     {"det_x1", f.det_x1},
                             {"closure", f.closure}, {"tolerance", f.tolerance},
                             {"grid_points", f.grid_points}, {"t_samples", f.t_samples},
                             {"pass", f.pass()}};
    }
    if (r.slice) {
        j["slice"] = {{"b_max", r.slice->b_max},
                      {"b_exact_zero", r.slice->b_exact_zero},
                      {"im_gamma_max", r.slice->im_gamma_max},
                      {"im_gamma_exact_zero", r.slice->im_gamma_exact_zero},
                      {"coefficient_scale", r.coefficient_scale}};
    }
    if (r.phi)
        j["phi"] = detail::phi_json(*r.phi, r.phi_classification);
    json verdicts = json::array();
    for (const auto& v : r.verdicts)
        verdicts.push_back({{"name", v.name},
                            {"pass", v.pass},
                            {"value", v.value},
                            {"tolerance", v.tolerance},
                            {"detail", v.detail}});
    j["verdicts"] = verdicts;
    j["pass"] = r.pass();
    j["exit_code"] = r.exit_code();
    if (timings)
        j["timings_ms"] = r.timings_ms;
    return j;
}

inline std::string dump_json(const RunReport& r, bool timings = false)
{
    return to_json(r, timings).dump(2) + "\n";
}

/// Verdicts read back from a report.
inline std::vector<Verdict> verdicts_from_json(const nlohmann::json& j)
{
    std::vector<Verdict> out;
    for (const auto& v : j.at("verdicts"))
        out.push_back({v.at("name").get<std::string>(), v.at("pass").get<bool>(), v.at("value").get<double>(),
                       v.at("tolerance").get<double>(), v.at("detail").get<std::string>()});
    return out;
}

/// Phi table in the CSV layout of hodge::to_csv; header only without a curve.
inline std::string phi_csv(const RunReport& r)
{
    return r.phi ? hodge::to_csv(*r.phi) : std::string("t,phi,g11_int,g22_int,g33_int\n");
}

} // namespace slag::report
