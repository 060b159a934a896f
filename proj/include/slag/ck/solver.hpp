#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "slag/ck/equations.hpp"
#include "slag/ck/structure.hpp"
#include "slag/jets/elementary.hpp"

namespace slag::ck {

/// Gamma_g = holomorphic extension of sqrt(det g).
template <class S>
ComplexJet<S> build_gamma(const JetMatrix<S>& g)
{
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k)
                if (g[i][j].depends_on(jets::y_var(k)))
                    throw SolverError("metric entries must not depend on y");
            if (g[i][j] != g[j][i])
                throw SolverError("metric is not symmetric");
        }
    const Jet<S> det = jets::det3_jet(g);
    const S d0 = det.constant_term();
    if (!(d0 > S(0)))
        throw SolverError("det g has non-positive constant term " + ScalarTraits<S>::to_string(d0));
    return jets::holomorphic_extend(jets::sqrt(det));
}

namespace detail {

// Entries evolved by a step: (row, col) of A or B, 0-based.
struct Slot {
    bool beta;
    int i, j;
};

// Evolved entries of step e (0-based) and the right side of their y_e equation.
template <class S>
Jet<S> step_rhs(const HermitianJet<S>& h, int e, const Slot& s)
{
    if (s.beta)
        return eq::beta_rhs(h.A, e, s.i, s.j);
    // d/dy_e alpha_{i k} = d/dy_i alpha_{e k} + d/dx_k beta_{i e}, with i < e.
    return eq::alpha_rhs(h, s.i, e, s.j);
}

inline std::vector<Slot> evolved_slots(int e)
{
    std::vector<Slot> out{{true, 0, 1}, {true, 0, 2}, {true, 1, 2}};
    for (int i = 0; i < e; ++i)
        for (int k = 0; k < 3; ++k)
            out.push_back({false, i, k});
    return out;
}

template <class S>
void mirror(HermitianJet<S>& h, int e)
{
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            h.B[j][i] = -h.B[i][j];
            // Once row i is evolved on its own (i < e), alpha_ji for j < e is
            // evolved too; only the remaining lower entries are mirrors.
            if (j >= e)
                h.A[j][i] = h.A[i][j];
        }
}

template <class S>
bool nearly_equal(const Jet<S>& a, const Jet<S>& b)
{
    if constexpr (ScalarTraits<S>::mode == ScalarMode::exact_rational) {
        return a == b;
    } else {
        const double scale = std::max(1.0, std::max(a.max_abs_coeff(), b.max_abs_coeff()));
        return (a - b).max_abs_coeff() <= 1e-10 * scale;
    }
}

} // namespace detail

/// One Cauchy-Kowalevsky step in the evolution variable y_step (step = 1, 2, 3).
///
/// Evolved entries gain their y_step coefficients by integrating the step's
/// closure equations; the remaining diagonal entry is solved from the
/// determinant equation order by order; free entries follow the policy.
template <class S>
HermitianJet<S> ck_step(int step, HermitianJet<S> h, const ComplexJet<S>& gamma,
                        const ExtensionPolicy<S>& policy)
{
    if (step < 1 || step > 3)
        throw SolverError("step must be 1, 2 or 3");
    const int e = step - 1;
    const int n = h.order();
    const Var Y = jets::y_var(e);

    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = e; k < 3; ++k)
                if (h.A[i][j].depends_on(jets::y_var(k)) || h.B[i][j].depends_on(jets::y_var(k)))
                    throw SolverError("state for step " + std::to_string(step) + " already depends on " +
                                      jets::name(jets::y_var(k)));

    // |Gamma|^2 on the slice reached by this step.
    Jet<S> target = gamma.norm_squared();
    if (e == 0)
        target = jets::restrict_zero(target, {Var::y2, Var::y3});
    else if (e == 1)
        target = jets::restrict_zero(target, {Var::y3});

    // Free entries take the y_e-dependent part of their rule.
    const auto* rules = e == 0 ? &policy.step1 : (e == 1 ? &policy.step2 : nullptr);
    if (rules) {
        for (const auto& [ij, rule] : *rules) {
            const int i = ij.first - 1, j = ij.second - 1;
            if (rule.order() != n || rule.base_point() != h.base_point())
                throw SolverError("policy jet for (" + std::to_string(ij.first) + "," +
                                  std::to_string(ij.second) + ") has wrong order or base point");
            for (int k = e + 1; k < 3; ++k)
                if (rule.depends_on(jets::y_var(k)))
                    throw SolverError("policy jet for step " + std::to_string(step) + " depends on " +
                                      jets::name(jets::y_var(k)));
            const Jet<S> at_slice = jets::restrict_zero(rule, {Y});
            if (!detail::nearly_equal(at_slice, h.A[i][j]))
                throw SolverError("policy inconsistent with initial conditions at (" +
                                  std::to_string(ij.first) + "," + std::to_string(ij.second) + ")");
            h.A[i][j] += rule - at_slice;
            h.A[j][i] = h.A[i][j];
        }
    }

    const auto slots = detail::evolved_slots(e);

    const Jet<S> lin0 = jets::restrict_zero(eq::det_linear_coefficient(h, e), {Y});
    if (ScalarTraits<S>::is_zero(lin0.constant_term()))
        throw SolverError(std::string("degenerate metric: ") + eq::det_linear_coefficient_name(e) +
                          " vanishes at the base point");
    const Jet<S> inv_lin0 = jets::reciprocal(lin0);

    for (int k = 0; k < n; ++k) {
        std::vector<Jet<S>> increments;
        increments.reserve(slots.size());
        for (const auto& s : slots) {
            Jet<S> piece = jets::slice(detail::step_rhs(h, e, s), Y, k);
            piece /= S(k + 1);
            increments.push_back(jets::shift(piece, Y, k + 1, n));
        }
        for (std::size_t m = 0; m < slots.size(); ++m) {
            const auto& s = slots[m];
            (s.beta ? h.B : h.A)[s.i][s.j] += increments[m];
        }
        detail::mirror(h, e);

        const Jet<S> residual = eq::det_functional(h) - target;
        Jet<S> c = jets::slice(residual, Y, k + 1) * jets::truncate(inv_lin0, n - k - 1);
        h.A[e][e] -= jets::shift(c, Y, k + 1, n);
    }
    return h;
}

/// Runs the three steps from the initial data A = g, B = 0.
template <class S>
CYStructureJet<S> solve_calabi_yau(const JetMatrix<S>& g, const ExtensionPolicy<S>& policy = {})
{
    const int n = g[0][0].order();
    if (n < 2)
        throw SolverError("order must be at least 2");
    for (const auto& row : g)
        for (const auto& x : row)
            x.check_compatible(g[0][0]);
    for (int k = 0; k < 3; ++k)
        if (!ScalarTraits<S>::is_zero(g[0][0].base_point()[static_cast<std::size_t>(3 + k)]))
            throw SolverError("base point must lie on y = 0");

    CYStructureJet<S> out;
    out.g = g;
    out.policy = policy;
    out.gamma = build_gamma(g);
    out.h.A = g;
    for (auto& row : out.h.B)
        for (auto& x : row)
            x = Jet<S>(n, g[0][0].base_point());
    for (int step = 1; step <= 3; ++step)
        out.h = ck_step(step, std::move(out.h), out.gamma, policy);
    return out;
}

/// Metric jets from a matrix of scalar functions' jets, checked for symmetry.
template <class S>
JetMatrix<S> identity_metric(int order, typename Jet<S>::Point base = {})
{
    JetMatrix<S> g;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            g[i][j] = i == j ? Jet<S>::constant(S(1), order, base) : Jet<S>(order, base);
    return g;
}

} // namespace slag::ck
