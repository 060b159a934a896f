#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "slag/families/family.hpp"
#include "slag/hodge/quadrature.hpp"
#include "slag/numerics/spectral.hpp"

namespace slag::hodge {

using families::MetricFamily;
using Field = std::vector<double>;

/// Sampled metric at one time: entries, inverse entries and sqrt(det).
struct MetricField {
    int dim = 3;
    dsl::Grid grid;
    double t = 0.0;
    std::array<std::array<Field, 3>, 3> g;
    std::array<std::array<Field, 3>, 3> inv;
    Field det;
    Field sqrt_det;

    std::size_t size() const { return grid.size(); }
};

inline void require_unit_torus(const MetricFamily& fam)
{
    if (fam.dim != 2 && fam.dim != 3)
        throw FamilyError("harmonic bases need a 2- or 3-dimensional family");
    for (int k = 0; k < fam.dim; ++k) {
        const auto& d = fam.domains[static_cast<std::size_t>(k)];
        if (!d.periodic || d.lo != 0.0 || d.hi != 1.0)
            throw FamilyError("harmonic bases are built on the unit torus; axis x" + std::to_string(k + 1) +
                              " is not the unit circle");
    }
}

inline MetricField metric_field(const MetricFamily& fam, double t, std::size_t n)
{
    require_unit_torus(fam);
    MetricField m;
    m.dim = fam.dim;
    m.grid = fam.grid(n);
    m.t = t;
    const auto s = families::sample(fam, m.grid, t);
    const std::size_t N = m.grid.size();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            m.g[i][j] = i < fam.dim && j < fam.dim ? s(i, j) : Field(N, i == j ? 1.0 : 0.0);
            m.inv[i][j].assign(N, 0.0);
        }
    m.det = families::determinant(fam, s);
    families::require_positive_definite(fam, s, m.det, m.grid, t);
    m.sqrt_det.resize(N);
    for (std::size_t p = 0; p < N; ++p) {
        const double d = m.det[p];
        m.sqrt_det[p] = std::sqrt(d);
        const auto a = [&m, p](int i, int j) { return m.g[i][j][p]; };
        if (fam.dim == 2) {
            m.inv[0][0][p] = a(1, 1) / d;
            m.inv[1][1][p] = a(0, 0) / d;
            m.inv[0][1][p] = m.inv[1][0][p] = -a(0, 1) / d;
            m.inv[2][2][p] = 1.0;
        } else {
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    // inverse = adj / det; adj(i, j) is the (j, i) cofactor.
                    const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
                    m.inv[i][j][p] = (a(r0, c0) * a(r1, c1) - a(r0, c1) * a(r1, c0)) / d;
                }
        }
    }
    return m;
}

/// Harmonic 1-forms dual to the coordinate circles. theta[j][k] is the
/// coefficient of dx_{k+1} in theta_{j+1}.
struct HarmonicBasis {
    int dim = 3;
    dsl::Grid grid;
    double t = 0.0;
    std::array<std::array<Field, 3>, 3> theta;
    std::array<std::array<double, 3>, 3> periods{}; // periods[i][j]: integral of theta_j over circle i
    double period_error = 0.0;
    double closed_residual = 0.0;
    double coclosed_residual = 0.0;
    double volume = 1.0; // total volume of the torus
};

namespace detail {

inline double max_abs(const Field& v)
{
    double r = 0.0;
    for (double x : v)
        r = std::max(r, std::abs(x));
    return r;
}

inline Field derivative(const Field& f, const dsl::Grid& grid, int axis)
{
    return numerics::grid_derivative(f, grid, axis);
}

} // namespace detail

/// Fills periods and the closed / co-closed residuals of b against m.
/// Residuals are relative to the largest coefficient of the basis.
inline void measure_basis(HarmonicBasis& b, const MetricField& m)
{
    const std::size_t N = m.size();
    const int d = b.dim;
    b.period_error = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const Field li = line_integrals(b.theta[j][i], m.grid, i);
            const double target = i == j ? 1.0 : 0.0;
            double worst = 0.0;
            for (double v : li)
                worst = std::max(worst, std::abs(v - target));
            b.periods[i][j] = li.front();
            b.period_error = std::max(b.period_error, worst);
        }

    double scale = 1.0;
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
            scale = std::max(scale, detail::max_abs(b.theta[j][k]));

    b.closed_residual = 0.0;
    b.coclosed_residual = 0.0;
    for (int j = 0; j < d; ++j) {
        const auto& th = b.theta[j];
        for (int k = 0; k < d; ++k)
            for (int l = k + 1; l < d; ++l) {
                const Field a = detail::derivative(th[l], m.grid, k);
                const Field c = detail::derivative(th[k], m.grid, l);
                for (std::size_t p = 0; p < N; ++p)
                    b.closed_residual = std::max(b.closed_residual, std::abs(a[p] - c[p]) / scale);
            }
        Field div(N, 0.0);
        for (int k = 0; k < d; ++k) {
            Field flux(N, 0.0);
            for (int l = 0; l < d; ++l)
                for (std::size_t p = 0; p < N; ++p)
                    flux[p] += m.sqrt_det[p] * m.inv[k][l][p] * th[l][p];
            const Field dk = detail::derivative(flux, m.grid, k);
            for (std::size_t p = 0; p < N; ++p)
                div[p] += dk[p];
        }
        b.coclosed_residual = std::max(b.coclosed_residual, detail::max_abs(div) / scale);
    }
    b.volume = grid_integral(m.sqrt_det, m.grid);
}

inline void require_harmonic(const HarmonicBasis& b, double tol)
{
    if (b.period_error > tol)
        throw FamilyError("basis periods deviate from the identity by " + std::to_string(b.period_error));
    if (b.closed_residual > tol || b.coclosed_residual > tol)
        throw FamilyError("basis is not harmonic: closed residual " + std::to_string(b.closed_residual) +
                          ", co-closed residual " + std::to_string(b.coclosed_residual));
}

/// theta_1 = g11 / (integral of g11 over x1) dx1, theta_2 = dx2, theta_3 = dx3
/// for a diagonal family depending on (t, x1) only with det = 1.
inline HarmonicBasis harmonic_basis_diag3(const MetricFamily& fam, double t, std::size_t n = 64,
                                          double tol = 1e-10)
{
    if (fam.dim != 3)
        throw FamilyError("diagonal basis needs a 3-dimensional family");
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (!fam.entry(i, j).is_literal(0))
                throw FamilyError("diagonal basis needs zero off-diagonal entries");
    if (fam.depends_on(dsl::Variable::x2) || fam.depends_on(dsl::Variable::x3))
        throw FamilyError("diagonal basis needs entries depending on t and x1 only");
    const MetricField m = metric_field(fam, t, n);
    for (std::size_t p = 0; p < m.size(); ++p)
        if (std::abs(m.det[p] - 1.0) > tol)
            throw FamilyError("diagonal basis needs det = 1; det = " + std::to_string(m.det[p]) +
                              " at grid index " + std::to_string(p));

    HarmonicBasis b;
    b.dim = 3;
    b.grid = m.grid;
    b.t = t;
    const std::size_t N = m.size();
    const Field G = line_integrals(m.g[0][0], m.grid, 0);
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            b.theta[j][k].assign(N, j == k ? 1.0 : 0.0);
    for (std::size_t p = 0; p < N; ++p)
        b.theta[0][0][p] = m.g[0][0][p] / G[p];
    measure_basis(b, m);
    require_harmonic(b, tol);
    return b;
}

/// Two-dimensional basis for det = C(x2) and a closed dual of d/dx1:
/// theta_1 = [g11 S dx1 + (g12 S - sqrt(C) m) dx2] / (S G), theta_2 = sqrt(C) / S dx2,
/// S = integral of sqrt(C) over x2, G = integral of g11 over x1, m = integral of g12 over x2.
inline HarmonicBasis harmonic_basis_2d(const MetricFamily& fam, double t, std::size_t n = 64,
                                       double tol = 1e-10)
{
    if (fam.dim != 2)
        throw FamilyError("the two-dimensional basis needs a 2-dimensional family");
    const MetricField m = metric_field(fam, t, n);
    const std::size_t N = m.size();

    double det_scale = 1.0;
    for (double v : m.det)
        det_scale = std::max(det_scale, std::abs(v));
    if (detail::max_abs(detail::derivative(m.det, m.grid, 0)) > tol * det_scale)
        throw FamilyError("det depends on x1; the two-dimensional basis needs det = C(x2)");
    const Field closure_a = detail::derivative(m.g[0][0], m.grid, 1);
    const Field closure_b = detail::derivative(m.g[0][1], m.grid, 0);
    for (std::size_t p = 0; p < N; ++p)
        if (std::abs(closure_a[p] - closure_b[p]) > tol * det_scale)
            throw FamilyError("the dual of d/dx1 is not closed at grid index " + std::to_string(p));

    const Field S = line_integrals(m.sqrt_det, m.grid, 1);
    const Field G = line_integrals(m.g[0][0], m.grid, 0);
    const Field M = line_integrals(m.g[0][1], m.grid, 1);

    HarmonicBasis b;
    b.dim = 2;
    b.grid = m.grid;
    b.t = t;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            b.theta[j][k].assign(N, j == k && j == 2 ? 1.0 : 0.0);
    for (std::size_t p = 0; p < N; ++p) {
        const double c = m.sqrt_det[p];
        b.theta[0][0][p] = m.g[0][0][p] / G[p];
        b.theta[0][1][p] = (m.g[0][1][p] * S[p] - c * M[p]) / (S[p] * G[p]);
        b.theta[1][1][p] = c / S[p];
    }
    measure_basis(b, m);
    require_harmonic(b, tol);
    return b;
}

} // namespace slag::hodge
