#pragma once

#include <array>
#include <cstddef>

#include "slag/error.hpp"

namespace slag::dsl {

/// One coordinate axis. Periodic axes sample [lo, hi) with n points; closed
/// intervals sample [lo, hi] with both endpoints.
struct Axis {
    std::size_t n = 1;
    bool periodic = true;
    double lo = 0.0;
    double hi = 1.0;

    static Axis periodic_unit(std::size_t n) { return {n, true, 0.0, 1.0}; }
    static Axis interval(std::size_t n, double lo, double hi) { return {n, false, lo, hi}; }

    double step() const
    {
        if (periodic)
            return (hi - lo) / static_cast<double>(n);
        return n > 1 ? (hi - lo) / static_cast<double>(n - 1) : 0.0;
    }

    double point(std::size_t i) const { return lo + step() * static_cast<double>(i); }
};

/// Tensor grid over (x1, x2, x3); x1 varies fastest in the flat index.
struct Grid {
    std::array<Axis, 3> axes{Axis::periodic_unit(1), Axis::periodic_unit(1), Axis::periodic_unit(1)};

    static Grid periodic(std::size_t n1, std::size_t n2 = 1, std::size_t n3 = 1)
    {
        return Grid{{Axis::periodic_unit(n1), Axis::periodic_unit(n2), Axis::periodic_unit(n3)}};
    }

    std::size_t size() const { return axes[0].n * axes[1].n * axes[2].n; }

    std::size_t index(std::size_t i, std::size_t j, std::size_t k) const
    {
        return i + axes[0].n * (j + axes[1].n * k);
    }

    std::array<std::size_t, 3> multi_index(std::size_t flat) const
    {
        const std::size_t i = flat % axes[0].n;
        flat /= axes[0].n;
        return {i, flat % axes[1].n, flat / axes[1].n};
    }

    std::array<double, 3> coords(std::size_t flat) const
    {
        const auto m = multi_index(flat);
        return {axes[0].point(m[0]), axes[1].point(m[1]), axes[2].point(m[2])};
    }

    void validate() const
    {
        for (const auto& a : axes)
            if (a.n == 0 || !(a.hi > a.lo))
                throw DomainError("grid axis needs n >= 1 and hi > lo");
    }
};

} // namespace slag::dsl
