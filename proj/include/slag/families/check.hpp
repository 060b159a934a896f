#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "slag/dsl/differentiate.hpp"
#include "slag/families/family.hpp"
#include "slag/numerics/spectral.hpp"

namespace slag::families {

struct FamilyCheckReport {
    double det_t = 0.0;   // max |d det / dt|, centered differences over t samples
    double det_x1 = 0.0;  // max |d sqrt(det) / dx1|
    double closure = 0.0; // max |d alpha_1j / dx_i - d alpha_1i / dx_j|, i < j
    double tolerance = 0.0;
    std::size_t grid_points = 0;
    int t_samples = 0;

    bool pass() const { return det_t <= tolerance && det_x1 <= tolerance && closure <= tolerance; }
    double max() const { return std::max({det_t, det_x1, closure}); }
};

namespace detail {

inline double max_abs(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::abs(x));
    return m;
}

// d/dx_{axis+1} of entry (i, j) at time t: spectral on periodic axes,
// symbolic on intervals, zero on collapsed axes.
inline std::vector<double> entry_derivative(const MetricFamily& fam, const dsl::Grid& grid,
                                            const FamilySamples& s, int i, int j, int axis, double t)
{
    const auto& ax = grid.axes[static_cast<std::size_t>(axis)];
    if (ax.n < 2)
        return std::vector<double>(grid.size(), 0.0);
    if (ax.periodic)
        return numerics::grid_derivative(s(i, j), grid, axis);
    return dsl::eval_grid(dsl::differentiate(fam.entry(i, j), dsl::x_variable(axis + 1)), grid, t);
}

// d sqrt(det) / dx1 = tr(adj(A) dA) / (2 sqrt(det)).
inline std::vector<double> sqrt_det_x1(const MetricFamily& fam, const dsl::Grid& grid, const FamilySamples& s,
                                       const std::vector<double>& det, double t)
{
    const auto& ax = grid.axes[0];
    if (ax.n < 2)
        return std::vector<double>(det.size(), 0.0);
    if (ax.periodic) {
        std::vector<double> root(det.size());
        std::transform(det.begin(), det.end(), root.begin(), [](double d) { return std::sqrt(d); });
        return numerics::grid_derivative(root, grid, 0);
    }
    std::array<std::array<std::vector<double>, 3>, 3> d;
    for (int i = 0; i < fam.dim; ++i)
        for (int j = i; j < fam.dim; ++j)
            d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = entry_derivative(fam, grid, s, i, j, 0, t);
    const auto D = [&d](int i, int j) -> const std::vector<double>& {
        return i <= j ? d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                      : d[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    };
    std::vector<double> out(det.size());
    for (std::size_t p = 0; p < det.size(); ++p) {
        const auto a = [&s, p](int i, int j) { return s(i, j)[p]; };
        const auto da = [&D, p](int i, int j) { return D(i, j)[p]; };
        double ddet = 0.0;
        if (fam.dim == 2) {
            ddet = da(0, 0) * a(1, 1) + a(0, 0) * da(1, 1) - 2.0 * a(0, 1) * da(0, 1);
        } else {
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    const int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
                    const double cof = a(r0, c0) * a(r1, c1) - a(r0, c1) * a(r1, c0);
                    ddet += cof * da(i, j);
                }
        }
        out[p] = ddet / (2.0 * std::sqrt(det[p]));
    }
    return out;
}

} // namespace detail

/// Samples the admissibility conditions of a family: det A_t independent of
/// t, sqrt(det) independent of x1, and the one-form dual to d/dx1 closed.
/// `n` points per used axis, `nt` >= 3 time samples.
inline FamilyCheckReport check_slag_family(const MetricFamily& fam, std::size_t n = 64, int nt = 11,
                                           double tol = 1e-10)
{
    if (fam.dim != 2 && fam.dim != 3)
        throw FamilyError("family dimension must be 2 or 3");
    if (nt < 3)
        throw FamilyError("need at least 3 t samples for centered differences");
    const dsl::Grid grid = fam.grid(n);
    const auto ts = fam.t_samples(nt);

    FamilyCheckReport r;
    r.tolerance = tol;
    r.grid_points = grid.size();
    r.t_samples = nt;

    std::vector<std::vector<double>> dets;
    for (double t : ts) {
        const FamilySamples s = sample(fam, grid, t);
        std::vector<double> det = determinant(fam, s);
        require_positive_definite(fam, s, det, grid, t);

        r.det_x1 = std::max(r.det_x1, detail::max_abs(detail::sqrt_det_x1(fam, grid, s, det, t)));
        for (int i = 0; i < fam.dim; ++i)
            for (int j = i + 1; j < fam.dim; ++j) {
                const auto a = detail::entry_derivative(fam, grid, s, 0, j, i, t);
                const auto b = detail::entry_derivative(fam, grid, s, 0, i, j, t);
                for (std::size_t p = 0; p < a.size(); ++p)
                    r.closure = std::max(r.closure, std::abs(a[p] - b[p]));
            }
        dets.push_back(std::move(det));
    }
    for (std::size_t j = 1; j + 1 < ts.size(); ++j) {
        const double h = ts[j + 1] - ts[j - 1];
        for (std::size_t p = 0; p < dets[j].size(); ++p)
            r.det_t = std::max(r.det_t, std::abs(dets[j + 1][p] - dets[j - 1][p]) / h);
    }
    return r;
}

} // namespace slag::families
