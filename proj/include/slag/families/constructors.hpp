#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "slag/dsl/eval.hpp"
#include "slag/dsl/parser.hpp"
#include "slag/families/family.hpp"

namespace slag::families {

inline constexpr int default_mean_points = 128;

/// Block family diag(e^u, Q) with det Q = e^{-u} q. The block law is checked
/// on an n-point grid at nt times.
inline MetricFamily make_block_family(const Expr& u, const Expr& q11, const Expr& q22, const Expr& q12,
                                      const Expr& q, double t_lo = 0.0, double t_hi = 1.0,
                                      bool t_hi_open = false, std::size_t n = 32, int nt = 5,
                                      double tol = 1e-10)
{
    MetricFamily f;
    f.kind = "block";
    f.t_lo = t_lo;
    f.t_hi = t_hi;
    f.t_hi_open = t_hi_open;
    f.set(0, 0, dsl::exp(u));
    f.set(0, 1, Expr::literal(0));
    f.set(0, 2, Expr::literal(0));
    f.set(1, 1, q11);
    f.set(2, 2, q22);
    f.set(1, 2, q12);

    const Expr law = q11 * q22 - q12 * q12 - dsl::exp(-u) * q;
    const Expr scale = dsl::exp(-u) * q;
    const dsl::Grid grid = f.grid(n);
    for (double t : f.t_samples(nt)) {
        const auto gap = dsl::eval_grid(law, grid, t);
        const auto ref = dsl::eval_grid(scale, grid, t);
        for (std::size_t p = 0; p < gap.size(); ++p)
            if (std::abs(gap[p]) > tol * std::max(1.0, std::abs(ref[p])))
                throw FamilyError("block law det Q = e^{-u} q violated at t=" + std::to_string(t) +
                                  ", grid index " + std::to_string(p) + " (gap " + std::to_string(gap[p]) + ")");
    }
    return f;
}

/// u = w - 2 log(mean over x1 of e^{w/2}), so the mean of e^{u/2} over x1 is 1.
inline Expr normalize_x1(const Expr& w, int points = default_mean_points)
{
    return w - Expr::literal(2) *
                   dsl::log(Expr::mean(Variable::x1, dsl::exp(w / Expr::literal(2)), points));
}

/// Same normalization in x2, per value of the remaining variables.
inline Expr normalize_x2(const Expr& v, int points = default_mean_points)
{
    return v - Expr::literal(2) *
                   dsl::log(Expr::mean(Variable::x2, dsl::exp(v / Expr::literal(2)), points));
}

/// Q_t = diag(1, e^{-u}) over the normalized u, for t in [t_lo, t1).
inline MetricFamily make_collapsing_22(const Expr& w_raw, double t1, double t_lo = 0.0,
                                       int points = default_mean_points)
{
    const Expr u = normalize_x1(w_raw, points);
    MetricFamily f = make_block_family(u, Expr::literal(1), dsl::exp(-u), Expr::literal(0), Expr::literal(1),
                                       t_lo, t1, true);
    f.kind = "collapse22";
    return f;
}

/// Q_t = diag(e^v, e^{-(u+v)}) with u normalized in x1 and v normalized in x2.
inline MetricFamily make_collapsing_21(const Expr& w_raw, const Expr& v_raw, double t1, double t_lo = 0.0,
                                       int points = default_mean_points)
{
    const Expr u = normalize_x1(w_raw, points);
    const Expr v = normalize_x2(v_raw, points);
    MetricFamily f = make_block_family(u, dsl::exp(v), dsl::exp(-(u + v)), Expr::literal(0), Expr::literal(1),
                                       t_lo, t1, true);
    f.kind = "collapse21";
    return f;
}

/// gamma_t(x1) = (x1 + i t)^{1/3}, principal branch.
inline std::complex<double> cone_gamma(double x1, double t)
{
    return std::pow(std::complex<double>(x1, t), 1.0 / 3.0);
}

/// d gamma_t / dx1 = (1/3) (x1 + i t)^{-2/3}.
inline std::complex<double> cone_gamma_dot(double x1, double t)
{
    return std::pow(std::complex<double>(x1, t), -2.0 / 3.0) / 3.0;
}

/// diag(|gamma'|^2, |gamma|^2 f, |gamma|^2 f) for x1 in [x1_lo, x1_hi], x1_lo > 0.
/// f depends on x2, x3 only and must be positive.
inline MetricFamily make_cone_family(const Expr& f, double t_lo, double t_hi, double x1_lo = 0.5,
                                     double x1_hi = 2.0, std::size_t n = 32)
{
    if (!(x1_lo > 0.0) || !(x1_hi > x1_lo))
        throw FamilyError("cone family needs 0 < x1_lo < x1_hi (branch point at x1 = 0)");
    if (dsl::depends_on(f, Variable::t) || dsl::depends_on(f, Variable::x1))
        throw FamilyError("conformal factor f may depend on x2, x3 only");
    MetricFamily fam;
    fam.kind = "cone";
    fam.t_lo = t_lo;
    fam.t_hi = t_hi;
    fam.domains[0] = AxisDomain::interval(x1_lo, x1_hi);
    const Expr r2 = dsl::parse("x1^2 + t^2");
    const Expr g1 = Expr::power(r2, Rational(-2, 3)) / Expr::literal(9);
    const Expr g2 = Expr::power(r2, Rational(1, 3)) * f;
    fam.set(0, 0, g1);
    fam.set(1, 1, g2);
    fam.set(2, 2, g2);
    fam.set(0, 1, Expr::literal(0));
    fam.set(0, 2, Expr::literal(0));
    fam.set(1, 2, Expr::literal(0));

    const auto fs = dsl::eval_grid(f, fam.grid(n), 0.0);
    for (std::size_t p = 0; p < fs.size(); ++p)
        if (!(fs[p] > 0.0))
            throw FamilyError("conformal factor f is not positive at grid index " + std::to_string(p));
    return fam;
}

} // namespace slag::families
