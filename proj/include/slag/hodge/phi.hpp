#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "slag/families/check.hpp"
#include "slag/hodge/gram.hpp"

namespace slag::hodge {

struct PhiOptions {
    std::size_t n = 64;
    double tol = 1e-8;        // end-to-end tolerance on phi
    double basis_tol = 1e-10; // periods and harmonicity of the basis
    double closed_form_tol = 1e-10;
    int check_nt = 11;
};

/// Phi(t) = det Gram(t) along a family.
struct PhiCurve {
    int dim = 3;
    std::vector<double> t;
    std::vector<double> phi;
    std::vector<GramMatrix> grams;
    std::vector<std::array<double, 3>> g_int; // integrals of g11, g22, g33 over the torus
    std::vector<double> closed_form;          // diagonal ratio formula, NaN when not applicable
    std::vector<double> volume_scale;         // integral of sqrt(C) over x2 (2D), 1 otherwise
    double tolerance = 1e-8;

    double spread() const
    {
        if (phi.empty())
            return 0.0;
        const auto [lo, hi] = std::minmax_element(phi.begin(), phi.end());
        return *hi - *lo;
    }

    /// dPhi/dt: centered in the interior, one-sided at the ends.
    std::vector<double> derivative() const
    {
        const std::size_t n = t.size();
        std::vector<double> d(n, 0.0);
        if (n < 2)
            return d;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t a = k == 0 ? 0 : k - 1;
            const std::size_t b = k + 1 == n ? k : k + 1;
            d[k] = (phi[b] - phi[a]) / (t[b] - t[a]);
        }
        return d;
    }

    bool non_constant() const { return spread() > 100.0 * tolerance; }
};

namespace detail {

inline void require_admissible(const MetricFamily& fam, const PhiOptions& opt)
{
    const auto r = families::check_slag_family(fam, opt.n, opt.check_nt);
    if (!r.pass())
        throw FamilyError("family is not admissible (det_t=" + std::to_string(r.det_t) +
                          ", det_x1=" + std::to_string(r.det_x1) + ", closure=" + std::to_string(r.closure) +
                          ")");
}

inline std::array<double, 3> diagonal_integrals(const MetricField& m)
{
    return {grid_integral(m.g[0][0], m.grid), grid_integral(m.g[1][1], m.grid),
            m.dim == 3 ? grid_integral(m.g[2][2], m.grid) : std::numeric_limits<double>::quiet_NaN()};
}

} // namespace detail

/// Phi along a diagonal three-dimensional family in (t, x1); each sample is
/// checked against the closed-form ratio.
inline PhiCurve phi_curve(const MetricFamily& fam, const std::vector<double>& ts, const PhiOptions& opt = {})
{
    detail::require_admissible(fam, opt);
    PhiCurve c;
    c.dim = 3;
    c.tolerance = opt.tol;
    for (double t : ts) {
        const MetricField m = metric_field(fam, t, opt.n);
        const HarmonicBasis b = harmonic_basis_diag3(fam, t, opt.n, opt.basis_tol);
        const GramMatrix G = gram_L2(b, m);
        const double phi = G.det();
        const double ref = diag3_closed_form(m);
        if (std::abs(phi - ref) > opt.closed_form_tol * std::max(1.0, std::abs(ref)))
            throw FamilyError("Gram determinant " + std::to_string(phi) + " disagrees with the closed form " +
                              std::to_string(ref) + " at t=" + std::to_string(t));
        c.t.push_back(t);
        c.phi.push_back(phi);
        c.grams.push_back(G);
        c.g_int.push_back(detail::diagonal_integrals(m));
        c.closed_form.push_back(ref);
        c.volume_scale.push_back(1.0);
    }
    return c;
}

/// Phi along a two-dimensional family with det = C(x2).
inline PhiCurve phi_2d(const MetricFamily& fam, const std::vector<double>& ts, const PhiOptions& opt = {})
{
    if (fam.dim != 2)
        throw FamilyError("phi_2d needs a 2-dimensional family");
    detail::require_admissible(fam, opt);
    PhiCurve c;
    c.dim = 2;
    c.tolerance = opt.tol;
    for (double t : ts) {
        const MetricField m = metric_field(fam, t, opt.n);
        const HarmonicBasis b = harmonic_basis_2d(fam, t, opt.n, opt.basis_tol);
        const GramMatrix G = gram_L2(b, m);
        c.t.push_back(t);
        c.phi.push_back(G.det());
        c.grams.push_back(G);
        c.g_int.push_back(detail::diagonal_integrals(m));
        c.closed_form.push_back(std::numeric_limits<double>::quiet_NaN());
        c.volume_scale.push_back(G.volume);
    }
    return c;
}

/// CSV with header t,phi,g11_int,g22_int,g33_int; g33_int is empty in 2D.
inline std::string to_csv(const PhiCurve& c)
{
    std::string out = "t,phi,g11_int,g22_int,g33_int\n";
    char buf[64];
    const auto num = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    for (std::size_t k = 0; k < c.t.size(); ++k) {
        out += num(c.t[k]) + "," + num(c.phi[k]) + "," + num(c.g_int[k][0]) + "," + num(c.g_int[k][1]) + ",";
        if (c.dim == 3)
            out += num(c.g_int[k][2]);
        out += "\n";
    }
    return out;
}

} // namespace slag::hodge
