#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

#include "slag/dsl/grid.hpp"
#include "slag/error.hpp"

namespace slag::hodge {

/// Trapezoid rule on n uniform samples of a function of period 1.
inline double periodic_quad(const std::vector<double>& f, std::size_t n)
{
    if (n < 2)
        throw DomainError("periodic quadrature needs n >= 2");
    if (f.size() != n)
        throw DomainError("periodic quadrature: expected " + std::to_string(n) + " samples, got " +
                          std::to_string(f.size()));
    return std::accumulate(f.begin(), f.end(), 0.0) / static_cast<double>(n);
}

/// Integral over a grid of periodic axes. Axes with one sample are taken as
/// directions the integrand does not depend on.
inline double grid_integral(const std::vector<double>& f, const dsl::Grid& grid)
{
    double vol = 1.0;
    for (const auto& ax : grid.axes) {
        if (!ax.periodic)
            throw DomainError("grid integral needs periodic axes");
        vol *= ax.hi - ax.lo;
    }
    if (f.size() != grid.size())
        throw DomainError("grid integral: sample count does not match the grid");
    return vol * std::accumulate(f.begin(), f.end(), 0.0) / static_cast<double>(f.size());
}

/// Integral along the coordinate circle of `axis` through every line of the
/// grid; the result is indexed like the grid and constant along `axis`.
inline std::vector<double> line_integrals(const std::vector<double>& f, const dsl::Grid& grid, int axis)
{
    const auto& ax = grid.axes[static_cast<std::size_t>(axis)];
    if (!ax.periodic)
        throw DomainError("line integral needs a periodic axis");
    const std::size_t n1 = grid.axes[0].n, n2 = grid.axes[1].n;
    const std::size_t stride = axis == 0 ? 1 : (axis == 1 ? n1 : n1 * n2);
    std::vector<double> out(f.size());
    for (std::size_t p = 0; p < f.size(); ++p) {
        const auto m = grid.multi_index(p);
        if (m[static_cast<std::size_t>(axis)] != 0)
            continue;
        double s = 0.0;
        for (std::size_t q = 0; q < ax.n; ++q)
            s += f[p + q * stride];
        s *= (ax.hi - ax.lo) / static_cast<double>(ax.n);
        for (std::size_t q = 0; q < ax.n; ++q)
            out[p + q * stride] = s;
    }
    return out;
}

} // namespace slag::hodge
