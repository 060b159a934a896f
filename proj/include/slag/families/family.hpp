#pragma once

#include <array>
#include <string>
#include <vector>

#include "slag/dsl/eval.hpp"
#include "slag/dsl/expr.hpp"
#include "slag/dsl/grid.hpp"
#include "slag/error.hpp"

namespace slag::families {

using dsl::Expr;
using dsl::Variable;

/// Domain of one x-coordinate: the periodic unit circle or a closed interval.
struct AxisDomain {
    bool periodic = true;
    double lo = 0.0;
    double hi = 1.0;

    static AxisDomain circle() { return {}; }
    static AxisDomain interval(double lo, double hi) { return {false, lo, hi}; }
};

/// One-parameter family A_t of metrics given by expressions in t, x1, x2, x3.
struct MetricFamily {
    int dim = 3;
    std::array<std::array<Expr, 3>, 3> entries;
    double t_lo = 0.0;
    double t_hi = 1.0;
    bool t_hi_open = false; // the family is singular at t_hi
    std::array<AxisDomain, 3> domains;
    std::string kind = "explicit";

    /// Upper-triangle entries in the order 11, 22, 33, 12, 13, 23 (dim 3) or
    /// 11, 22, 12 (dim 2).
    static MetricFamily from_upper(int dim, const std::vector<Expr>& upper)
    {
        MetricFamily f;
        f.dim = dim;
        if (dim == 3 && upper.size() == 6) {
            static constexpr int idx[6][2] = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}};
            for (int m = 0; m < 6; ++m)
                f.set(idx[m][0], idx[m][1], upper[static_cast<std::size_t>(m)]);
        } else if (dim == 2 && upper.size() == 3) {
            f.set(0, 0, upper[0]);
            f.set(1, 1, upper[1]);
            f.set(0, 1, upper[2]);
            f.set(2, 2, Expr::literal(1));
        } else {
            throw FamilyError("a dimension-" + std::to_string(dim) + " family needs " +
                              (dim == 2 ? "3" : "6") + " upper-triangle entries");
        }
        return f;
    }

    void set(int i, int j, const Expr& e)
    {
        entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = e;
        entries[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = e;
    }

    const Expr& entry(int i, int j) const
    {
        return entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

    bool depends_on(Variable v) const
    {
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j)
                if (dsl::depends_on(entry(i, j), v))
                    return true;
        return false;
    }

    /// Sampling grid: n points on every axis some entry depends on, one point otherwise.
    dsl::Grid grid(std::size_t n) const
    {
        dsl::Grid g;
        for (int k = 0; k < 3; ++k) {
            const auto& d = domains[static_cast<std::size_t>(k)];
            const bool used = k < dim && depends_on(dsl::x_variable(k + 1));
            const std::size_t m = used ? n : 1;
            g.axes[static_cast<std::size_t>(k)] = d.periodic ? dsl::Axis{m, true, d.lo, d.hi}
                                                             : dsl::Axis{m, false, d.lo, d.hi};
            if (!used && !d.periodic)
                g.axes[static_cast<std::size_t>(k)].hi = d.lo + 1.0;
        }
        return g;
    }

    /// nt sample times: endpoints included, except an open upper end.
    std::vector<double> t_samples(int nt) const
    {
        if (nt < 1)
            throw FamilyError("need at least one t sample");
        std::vector<double> t(static_cast<std::size_t>(nt));
        const double span = t_hi - t_lo;
        const double denom = t_hi_open ? nt : std::max(1, nt - 1);
        for (int j = 0; j < nt; ++j)
            t[static_cast<std::size_t>(j)] = t_lo + span * j / denom;
        return t;
    }
};

/// Samples of the upper-triangle entries at one time, indexed [i][j] (i <= j).
struct FamilySamples {
    std::array<std::array<std::vector<double>, 3>, 3> a;

    const std::vector<double>& operator()(int i, int j) const
    {
        return i <= j ? a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                      : a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    }
};

inline FamilySamples sample(const MetricFamily& fam, const dsl::Grid& grid, double t)
{
    FamilySamples s;
    for (int i = 0; i < fam.dim; ++i)
        for (int j = i; j < fam.dim; ++j)
            s.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = dsl::eval_grid(fam.entry(i, j), grid, t);
    return s;
}

/// Pointwise determinant of the sampled metric.
inline std::vector<double> determinant(const MetricFamily& fam, const FamilySamples& s)
{
    const std::size_t n = s(0, 0).size();
    std::vector<double> d(n);
    for (std::size_t p = 0; p < n; ++p) {
        if (fam.dim == 2) {
            d[p] = s(0, 0)[p] * s(1, 1)[p] - s(0, 1)[p] * s(0, 1)[p];
        } else {
            const double a11 = s(0, 0)[p], a22 = s(1, 1)[p], a33 = s(2, 2)[p];
            const double a12 = s(0, 1)[p], a13 = s(0, 2)[p], a23 = s(1, 2)[p];
            d[p] = a11 * (a22 * a33 - a23 * a23) - a12 * (a12 * a33 - a23 * a13) + a13 * (a12 * a23 - a22 * a13);
        }
    }
    return d;
}

/// Throws FamilyError unless every sample is positive definite (leading minors).
inline void require_positive_definite(const MetricFamily& fam, const FamilySamples& s,
                                      const std::vector<double>& det, const dsl::Grid& grid, double t)
{
    for (std::size_t p = 0; p < det.size(); ++p) {
        const double m1 = s(0, 0)[p];
        const double m2 = s(0, 0)[p] * s(1, 1)[p] - s(0, 1)[p] * s(0, 1)[p];
        if (m1 > 0 && m2 > 0 && (fam.dim == 2 || det[p] > 0))
            continue;
        const auto x = grid.coords(p);
        throw FamilyError("metric is not positive definite at t=" + std::to_string(t) + ", x=(" +
                          std::to_string(x[0]) + "," + std::to_string(x[1]) + "," + std::to_string(x[2]) +
                          "), grid index " + std::to_string(p));
    }
}

} // namespace slag::families
