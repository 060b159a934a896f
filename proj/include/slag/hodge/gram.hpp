#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "slag/hodge/basis.hpp"

namespace slag::hodge {

using Matrix3 = std::array<std::array<double, 3>, 3>;
using IntMatrix3 = std::array<std::array<long, 3>, 3>;

/// L2 inner products of a harmonic basis; only the leading dim x dim block is used.
struct GramMatrix {
    int dim = 3;
    Matrix3 entries{};
    double volume = 1.0;

    double operator()(int i, int j) const { return entries[i][j]; }

    double det() const
    {
        using L = long double;
        const auto a = [this](int i, int j) { return static_cast<L>(entries[i][j]); };
        if (dim == 2)
            return static_cast<double>(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0));
        return static_cast<double>(a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                                   a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                                   a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0)));
    }

    double asymmetry() const
    {
        double r = 0.0;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                r = std::max(r, std::abs(entries[i][j] - entries[j][i]));
        return r;
    }

    /// Leading principal minors all positive.
    bool positive_definite() const
    {
        const auto& a = entries;
        const double m1 = a[0][0];
        const double m2 = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        return m1 > 0 && m2 > 0 && (dim == 2 || det() > 0);
    }
};

inline GramMatrix gram_L2(const HarmonicBasis& b, const MetricField& m)
{
    if (b.dim != m.dim || b.grid.size() != m.grid.size())
        throw FamilyError("basis and metric samples do not match");
    GramMatrix G;
    G.dim = b.dim;
    const std::size_t N = m.size();
    Field w(N);
    for (int i = 0; i < b.dim; ++i)
        for (int j = i; j < b.dim; ++j) {
            for (std::size_t p = 0; p < N; ++p) {
                double s = 0.0;
                for (int k = 0; k < b.dim; ++k)
                    for (int l = 0; l < b.dim; ++l)
                        s += m.inv[k][l][p] * b.theta[i][k][p] * b.theta[j][l][p];
                w[p] = s * m.sqrt_det[p];
            }
            G.entries[i][j] = G.entries[j][i] = grid_integral(w, m.grid);
        }
    G.volume = grid_integral(m.sqrt_det, m.grid);
    return G;
}

/// Gram matrix for the cycles P Sigma with P integer and unimodular:
/// (P^-1)^T G P^-1.
inline GramMatrix change_cycle_basis(const GramMatrix& G, const IntMatrix3& P)
{
    const int d = G.dim;
    const auto p = [&P](int i, int j) { return static_cast<double>(P[i][j]); };
    double det = 0.0;
    Matrix3 inv{};
    if (d == 2) {
        det = p(0, 0) * p(1, 1) - p(0, 1) * p(1, 0);
        inv[0][0] = p(1, 1) / det;
        inv[1][1] = p(0, 0) / det;
        inv[0][1] = -p(0, 1) / det;
        inv[1][0] = -p(1, 0) / det;
    } else {
        for (int j = 0; j < 3; ++j)
            det += p(0, j) * (p(1, (j + 1) % 3) * p(2, (j + 2) % 3) - p(1, (j + 2) % 3) * p(2, (j + 1) % 3));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
                inv[i][j] = (p(r0, c0) * p(r1, c1) - p(r0, c1) * p(r1, c0)) / det;
            }
    }
    if (std::abs(std::abs(det) - 1.0) > 0.5)
        throw FamilyError("cycle change must be unimodular, det = " + std::to_string(det));
    GramMatrix out = G;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            long double s = 0.0L;
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l)
                    s += static_cast<long double>(inv[k][i]) * G.entries[k][l] * inv[l][j];
            out.entries[i][j] = static_cast<double>(s);
        }
    return out;
}

/// Ratio of integrals of g^22, g^33 and g^22 g^33 over the torus; equals
/// det Gram for diagonal families in x1 with det = 1.
inline double diag3_closed_form(const MetricField& m)
{
    Field prod(m.size());
    for (std::size_t p = 0; p < m.size(); ++p)
        prod[p] = m.inv[1][1][p] * m.inv[2][2][p];
    return grid_integral(m.inv[1][1], m.grid) * grid_integral(m.inv[2][2], m.grid) / grid_integral(prod, m.grid);
}

} // namespace slag::hodge
