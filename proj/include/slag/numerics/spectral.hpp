#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "slag/dsl/grid.hpp"
#include "slag/error.hpp"

namespace slag::numerics {

namespace detail {

// RAII wrapper around one pair of 1D r2c/c2r plans of length n.
class SpectralLine {
public:
    explicit SpectralLine(std::size_t n)
        : n_(n),
          real_(static_cast<double*>(fftw_malloc(sizeof(double) * n))),
          freq_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1))))
    {
        if (!real_ || !freq_)
            throw Error("fftw allocation failed");
        const int len = static_cast<int>(n);
        forward_ = fftw_plan_dft_r2c_1d(len, real_, freq_, FFTW_ESTIMATE);
        backward_ = fftw_plan_dft_c2r_1d(len, freq_, real_, FFTW_ESTIMATE);
    }

    SpectralLine(const SpectralLine&) = delete;
    SpectralLine& operator=(const SpectralLine&) = delete;

    ~SpectralLine()
    {
        fftw_destroy_plan(forward_);
        fftw_destroy_plan(backward_);
        fftw_free(real_);
        fftw_free(freq_);
    }

    double* data() { return real_; }

    // d/dx in place on data(), for a period of `length`.
    void differentiate(double length)
    {
        fftw_execute(forward_);
        const std::size_t half = n_ / 2;
        const double scale = 2.0 * std::numbers::pi / length / static_cast<double>(n_);
        for (std::size_t k = 0; k <= half; ++k) {
            double re = freq_[k][0], im = freq_[k][1];
            // Nyquist mode of an even-length transform has no well-defined derivative.
            const double w = (n_ % 2 == 0 && k == half) ? 0.0 : scale * static_cast<double>(k);
            freq_[k][0] = -w * im;
            freq_[k][1] = w * re;
        }
        fftw_execute(backward_);
    }

private:
    std::size_t n_;
    double* real_;
    fftw_complex* freq_;
    fftw_plan forward_;
    fftw_plan backward_;
};

} // namespace detail

/// Spectral derivative of samples on a periodic axis.
inline std::vector<double> periodic_derivative(const std::vector<double>& f, double length = 1.0)
{
    if (f.size() < 2)
        return std::vector<double>(f.size(), 0.0);
    detail::SpectralLine line(f.size());
    std::copy(f.begin(), f.end(), line.data());
    line.differentiate(length);
    return {line.data(), line.data() + f.size()};
}

/// Spectral derivative along `axis` (0, 1, 2) of samples on a grid whose
/// axis is periodic. An axis with a single sample yields zero.
inline std::vector<double> grid_derivative(const std::vector<double>& f, const dsl::Grid& grid, int axis)
{
    const auto& ax = grid.axes[static_cast<std::size_t>(axis)];
    if (!ax.periodic)
        throw DomainError("spectral derivative needs a periodic axis");
    std::vector<double> out(f.size(), 0.0);
    if (ax.n < 2)
        return out;
    detail::SpectralLine line(ax.n);
    const std::size_t n1 = grid.axes[0].n, n2 = grid.axes[1].n, n3 = grid.axes[2].n;
    const std::size_t stride = axis == 0 ? 1 : (axis == 1 ? n1 : n1 * n2);
    for (std::size_t k = 0; k < (axis == 2 ? 1 : n3); ++k)
        for (std::size_t j = 0; j < (axis == 1 ? 1 : n2); ++j)
            for (std::size_t i = 0; i < (axis == 0 ? 1 : n1); ++i) {
                const std::size_t start = grid.index(i, j, k);
                for (std::size_t m = 0; m < ax.n; ++m)
                    line.data()[m] = f[start + m * stride];
                line.differentiate(ax.hi - ax.lo);
                for (std::size_t m = 0; m < ax.n; ++m)
                    out[start + m * stride] = line.data()[m];
            }
    return out;
}

} // namespace slag::numerics
