#pragma once

#include "slag/ck/structure.hpp"

namespace slag::ck::eq {

// All indices are 0-based. alpha_ij = A[i][j], beta_ij = B[i][j].

/// Right side of d/dy_k beta_ij:  d/dx_i alpha_kj - d/dx_j alpha_ki.
template <class S>
Jet<S> beta_rhs(const JetMatrix<S>& A, int k, int i, int j)
{
    return jets::partial(A[k][j], jets::x_var(i)) - jets::partial(A[k][i], jets::x_var(j));
}

/// Right side of d/dy_j alpha_ik:  d/dy_i alpha_jk + d/dx_k beta_ij.
template <class S>
Jet<S> alpha_rhs(const HermitianJet<S>& h, int i, int j, int k)
{
    return jets::partial(h.A[j][k], jets::y_var(i)) + jets::partial(h.B[i][j], jets::x_var(k));
}

/// Cyclic x-divergence of beta: d1 beta23 - d2 beta13 + d3 beta12 (var = x or y family).
template <class S>
Jet<S> beta_cyclic(const JetMatrix<S>& B, Var (*var)(int))
{
    return jets::partial(B[1][2], var(0)) - jets::partial(B[0][2], var(1)) + jets::partial(B[0][1], var(2));
}

/// det A - b^T A b with b = (beta23, -beta13, beta12), read off the upper
/// triangle of A. Equals det(A + iB) when A is symmetric.
template <class S>
Jet<S> det_functional(const HermitianJet<S>& h)
{
    const auto& A = h.A;
    const Jet<S>& a11 = A[0][0];
    const Jet<S>& a22 = A[1][1];
    const Jet<S>& a33 = A[2][2];
    const Jet<S>& a12 = A[0][1];
    const Jet<S>& a13 = A[0][2];
    const Jet<S>& a23 = A[1][2];
    const Jet<S>& b23 = h.B[1][2];
    const Jet<S>& b13 = h.B[0][2];
    const Jet<S>& b12 = h.B[0][1];
    const Jet<S> det = a11 * (a22 * a33 - a23 * a23) - a12 * (a12 * a33 - a23 * a13) +
                       a13 * (a12 * a23 - a22 * a13);
    const S two(2);
    const Jet<S> quad = a11 * (b23 * b23) + a22 * (b13 * b13) + a33 * (b12 * b12) -
                        two * (a12 * (b23 * b13)) + two * (a13 * (b23 * b12)) - two * (a23 * (b13 * b12));
    return det - quad;
}

/// Coefficient of alpha_ee in det_functional, which is affine in each diagonal entry.
template <class S>
Jet<S> det_linear_coefficient(const HermitianJet<S>& h, int e)
{
    const auto& A = h.A;
    const auto& B = h.B;
    switch (e) {
    case 0: return A[1][1] * A[2][2] - A[1][2] * A[1][2] - B[1][2] * B[1][2];
    case 1: return A[0][0] * A[2][2] - A[0][2] * A[0][2] - B[0][2] * B[0][2];
    default: return A[0][0] * A[1][1] - A[0][1] * A[0][1] - B[0][1] * B[0][1];
    }
}

inline const char* det_linear_coefficient_name(int e)
{
    switch (e) {
    case 0: return "a22*a33 - a23^2 - b23^2";
    case 1: return "a11*a33 - a13^2 - b13^2";
    default: return "a11*a22 - a12^2 - b12^2";
    }
}

} // namespace slag::ck::eq
