#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slag/ck.hpp"
#include "slag/families.hpp"
#include "slag/hodge.hpp"
#include "slag/report/scenario.hpp"

namespace slag::report {

struct Verdict {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct StructureSummary {
    std::size_t terms = 0;
    std::string gamma_re_constant;
    std::string gamma_im_constant;
    bool gamma_constant = false; // Gamma has no non-constant term
    bool b_zero = false;
    bool a_y_independent = false;
};

struct RunReport {
    Scenario scenario;
    std::optional<ck::ResidualReport> residuals;
    std::optional<StructureSummary> structure;
    std::optional<families::FamilyCheckReport> family_check;
    std::optional<families::SliceCheck> slice;
    double coefficient_scale = 1.0; // verify: largest metric coefficient, scales float tolerances
    std::optional<hodge::PhiCurve> phi;
    std::string phi_classification;
    std::vector<Verdict> verdicts;
    std::map<std::string, double> timings_ms;
    std::string dump; // text dump of the solved structure (embed, verify)

    bool pass() const
    {
        for (const auto& v : verdicts)
            if (!v.pass)
                return false;
        return true;
    }

    int exit_code() const { return pass() ? 0 : 1; }
};

namespace detail {

class Stopwatch {
public:
    explicit Stopwatch(std::map<std::string, double>& sink, std::string key)
        : sink_(sink), key_(std::move(key)), start_(std::chrono::steady_clock::now())
    {
    }
    Stopwatch(const Stopwatch&) = delete;
    Stopwatch& operator=(const Stopwatch&) = delete;
    ~Stopwatch()
    {
        const auto d = std::chrono::steady_clock::now() - start_;
        sink_[key_] += std::chrono::duration<double, std::milli>(d).count();
    }

private:
    std::map<std::string, double>& sink_;
    std::string key_;
    std::chrono::steady_clock::time_point start_;
};

template <class S>
StructureSummary summarize(const ck::CYStructureJet<S>& s)
{
    using Traits = slag::ScalarTraits<S>;
    StructureSummary out;
    out.b_zero = true;
    out.a_y_independent = true;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const auto& a = s.h.A[i][j];
            const auto& b = s.h.B[i][j];
            out.terms += a.size() + b.size();
            out.b_zero = out.b_zero && b.is_zero();
            for (auto v : {jets::Var::y1, jets::Var::y2, jets::Var::y3})
                out.a_y_independent = out.a_y_independent && !a.depends_on(v);
        }
    out.terms += s.gamma.re.size() + s.gamma.im.size();
    out.gamma_re_constant = Traits::to_string(s.gamma.re.constant_term());
    out.gamma_im_constant = Traits::to_string(s.gamma.im.constant_term());
    const auto non_constant = [](const jets::Jet<S>& j) {
        return j.size() > (Traits::is_zero(j.constant_term()) ? 0u : 1u);
    };
    out.gamma_constant = !non_constant(s.gamma.re) && !non_constant(s.gamma.im);
    return out;
}

template <class S>
std::array<S, 3> base_as(const std::array<slag::Rational, 3>& b)
{
    return {slag::ScalarTraits<S>::from_rational(b[0]), slag::ScalarTraits<S>::from_rational(b[1]),
            slag::ScalarTraits<S>::from_rational(b[2])};
}

inline Verdict residual_verdict(const ck::ResidualReport& r, Mode mode, double tol, double scale = 1.0)
{
    Verdict v{"residuals", false, r.max(), tol * scale, ""};
    if (mode == Mode::exact) {
        v.pass = r.det_positive && r.all_exact_zero();
        v.tolerance = 0.0;
        v.detail = "every residual coefficient exactly zero";
    } else {
        v.pass = r.det_positive && r.max() <= tol * scale;
        v.detail = scale == 1.0 ? "max residual coefficient" : "max residual coefficient, tolerance scaled by metric";
    }
    if (!r.det_positive)
        v.detail += "; det(A) not positive at the base point";
    return v;
}

template <class S>
void run_embed(const Scenario& sc, RunReport& rep)
{
    ck::CYStructureJet<S> s;
    {
        Stopwatch w(rep.timings_ms, "solve");
        ck::JetMatrix<S> g;
        static constexpr int idx[6][2] = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}};
        const auto base = base_as<S>(sc.base_x);
        for (int m = 0; m < 6; ++m) {
            const auto [i, j] = idx[m];
            g[i][j] = dsl::eval_jet<S>(sc.metric[static_cast<std::size_t>(m)].expr, base, sc.order, S(0), false);
            g[j][i] = g[i][j];
        }
        s = ck::solve_calabi_yau(g);
    }
    {
        Stopwatch w(rep.timings_ms, "residuals");
        rep.residuals = ck::check_structure(s);
    }
    rep.structure = summarize(s);
    if (!sc.dump_path.empty())
        rep.dump = ck::to_text(s);
    rep.verdicts.push_back(residual_verdict(*rep.residuals, sc.mode, sc.tolerance));
}

inline Verdict admissibility_verdict(const families::FamilyCheckReport& r)
{
    return {"admissible", r.pass(), r.max(), r.tolerance, "max of det_t, det_x1, closure"};
}

template <class S>
void run_verify(const Scenario& sc, RunReport& rep)
{
    families::CheckOptions opt{sc.grid, sc.t_samples, default_tolerance(Kind::family_check, Mode::floating)};
    {
        Stopwatch w(rep.timings_ms, "family_check");
        rep.family_check = families::check_slag_family(sc.fam, opt.n, opt.nt, opt.tol);
    }
    rep.verdicts.push_back(admissibility_verdict(*rep.family_check));
    if (!rep.family_check->pass())
        return;
    ck::CYStructureJet<S> s;
    {
        Stopwatch w(rep.timings_ms, "solve");
        const auto fp = families::family_to_policy<S>(sc.fam, slag::ScalarTraits<S>::from_rational(sc.base_t),
                                                      base_as<S>(sc.base_x), sc.order, opt);
        for (const auto& row : fp.g)
            for (const auto& e : row)
                rep.coefficient_scale = std::max(rep.coefficient_scale, e.max_abs_coeff());
        s = ck::solve_calabi_yau(fp.g, fp.policy);
    }
    {
        Stopwatch w(rep.timings_ms, "residuals");
        rep.residuals = ck::check_structure(s);
        rep.slice = families::horizontal_slice_check(s);
    }
    rep.structure = summarize(s);
    if (!sc.dump_path.empty())
        rep.dump = ck::to_text(s);
    const double scale = sc.mode == Mode::exact ? 1.0 : rep.coefficient_scale;
    rep.verdicts.push_back(residual_verdict(*rep.residuals, sc.mode, sc.tolerance, scale));
    Verdict slice{"horizontal_slice", false, rep.slice->max(), sc.tolerance * scale,
                  "B and Im Gamma on the slice y2 = y3 = 0"};
    if (sc.mode == Mode::exact) {
        slice.pass = rep.slice->b_exact_zero && rep.slice->im_gamma_exact_zero;
        slice.tolerance = 0.0;
    } else {
        slice.pass = rep.slice->max() <= sc.tolerance * scale;
    }
    rep.verdicts.push_back(slice);
}

inline void run_family_check(const Scenario& sc, RunReport& rep)
{
    Stopwatch w(rep.timings_ms, "family_check");
    rep.family_check = families::check_slag_family(sc.fam, sc.grid, sc.t_samples, sc.tolerance);
    rep.verdicts.push_back(admissibility_verdict(*rep.family_check));
}

inline void run_phi(const Scenario& sc, RunReport& rep)
{
    const double check_tol = default_tolerance(Kind::family_check, Mode::floating);
    {
        Stopwatch w(rep.timings_ms, "family_check");
        rep.family_check = families::check_slag_family(sc.fam, sc.grid, 11, check_tol);
    }
    rep.verdicts.push_back(admissibility_verdict(*rep.family_check));
    if (!rep.family_check->pass())
        return;

    hodge::PhiOptions opt;
    opt.n = sc.grid;
    opt.tol = sc.tolerance;
    opt.check_nt = 11;
    const auto ts = sc.fam.t_samples(sc.t_samples);
    {
        Stopwatch w(rep.timings_ms, "phi");
        rep.phi = sc.kind == Kind::phi ? hodge::phi_curve(sc.fam, ts, opt) : hodge::phi_2d(sc.fam, ts, opt);
    }
    const auto& c = *rep.phi;
    double min_phi = c.phi.empty() ? 0.0 : c.phi.front();
    for (double v : c.phi)
        min_phi = std::min(min_phi, v);
    rep.verdicts.push_back({"phi_positive", min_phi > 0.0, min_phi, 0.0, "smallest sampled phi"});

    rep.phi_classification = c.non_constant() ? "non-constant" : "constant";
    if (sc.kind == Kind::phi2d) {
        double dev = 0.0;
        for (double v : c.phi)
            dev = std::max(dev, std::abs(v - 1.0));
        rep.verdicts.push_back({"phi_equals_one", dev <= sc.tolerance, dev, sc.tolerance, "max |phi - 1|"});
    }
    if (!sc.expect.empty())
        rep.verdicts.push_back({"classification", rep.phi_classification == sc.expect, c.spread(),
                                100.0 * sc.tolerance,
                                "spread of phi; non-constant above the tolerance, expected " + sc.expect});
}

} // namespace detail

/// Executes the pipeline for the scenario's kind. Library errors propagate.
inline RunReport run_scenario(const Scenario& sc)
{
    RunReport rep;
    rep.scenario = sc;
    const auto start = std::chrono::steady_clock::now();
    switch (sc.kind) {
    case Kind::embed:
        if (sc.mode == Mode::exact)
            detail::run_embed<slag::Rational>(sc, rep);
        else
            detail::run_embed<double>(sc, rep);
        break;
    case Kind::verify:
        if (sc.mode == Mode::exact)
            detail::run_verify<slag::Rational>(sc, rep);
        else
            detail::run_verify<double>(sc, rep);
        break;
    case Kind::family_check: detail::run_family_check(sc, rep); break;
    case Kind::phi:
    case Kind::phi2d: detail::run_phi(sc, rep); break;
    }
    rep.timings_ms["total"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

} // namespace slag::report
