#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "slag/ck/equations.hpp"
#include "slag/ck/structure.hpp"

namespace slag::ck {

struct ResidualEntry {
    std::string name;
    double value = 0.0;     // max |coefficient| of the residual jet
    bool exact_zero = true; // residual jet has no stored coefficient
    int order = 0;          // order at which the residual was evaluated
};

struct ResidualReport {
    std::vector<ResidualEntry> entries;
    bool det_positive = false;

    double max() const
    {
        double m = 0.0;
        for (const auto& e : entries)
            m = std::max(m, e.value);
        return m;
    }

    bool all_exact_zero() const
    {
        return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.exact_zero; });
    }

    /// Largest value among entries whose name starts with `prefix`.
    double value(const std::string& prefix) const
    {
        double m = 0.0;
        bool found = false;
        for (const auto& e : entries)
            if (e.name.rfind(prefix, 0) == 0) {
                m = std::max(m, e.value);
                found = true;
            }
        if (!found)
            throw Error("no residual named " + prefix);
        return m;
    }

    bool exact_zero(const std::string& prefix) const
    {
        for (const auto& e : entries)
            if (e.name.rfind(prefix, 0) == 0 && !e.exact_zero)
                return false;
        return true;
    }

    bool passes(double tolerance) const { return det_positive && max() <= tolerance; }
};

namespace detail {

template <class S>
void record(ResidualReport& r, std::string name, const Jet<S>& j)
{
    r.entries.push_back({std::move(name), j.max_abs_coeff(), j.is_zero(), j.order()});
}

inline std::string idx(int i, int j)
{
    return std::to_string(i + 1) + std::to_string(j + 1);
}

} // namespace detail

/// Evaluates every defining condition on a structure. Derivative-based
/// residuals are reported one order lower than the structure.
template <class S>
ResidualReport check_structure(const CYStructureJet<S>& s)
{
    using detail::idx;
    using detail::record;
    const auto& h = s.h;
    const auto& A = h.A;
    const auto& B = h.B;
    ResidualReport r;

    record(r, "det", eq::det_functional(h) - s.gamma.norm_squared());

    // d omega = 0, twenty scalar equations.
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                record(r, "closure.dy" + std::to_string(k + 1) + "_b" + idx(i, j),
                       jets::partial(B[i][j], jets::y_var(k)) - eq::beta_rhs(A, k, i, j));
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                record(r, "closure.dy" + std::to_string(j + 1) + "_a" + idx(i, k),
                       jets::partial(A[i][k], jets::y_var(j)) - eq::alpha_rhs(h, i, j, k));
    record(r, "closure.dx_cyclic_b", eq::beta_cyclic(B, jets::x_var));
    record(r, "closure.dy_cyclic_b", eq::beta_cyclic(B, jets::y_var));

    const auto at_slice = [](const Jet<S>& j) { return jets::restrict_zero(j, {Var::y1, Var::y2, Var::y3}); };
    Jet<S> init_a(h.order(), h.base_point()), init_b(h.order(), h.base_point());
    double init_a_max = 0, init_b_max = 0;
    bool init_a_zero = true, init_b_zero = true;
    double sym_max = 0, anti_max = 0;
    bool sym_zero = true, anti_zero = true;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Jet<S> da = at_slice(A[i][j]) - s.g[i][j];
            const Jet<S> db = at_slice(B[i][j]);
            init_a_max = std::max(init_a_max, da.max_abs_coeff());
            init_b_max = std::max(init_b_max, db.max_abs_coeff());
            init_a_zero = init_a_zero && da.is_zero();
            init_b_zero = init_b_zero && db.is_zero();
            if (i < j) {
                const Jet<S> sa = A[i][j] - A[j][i];
                const Jet<S> sb = B[i][j] + B[j][i];
                sym_max = std::max(sym_max, sa.max_abs_coeff());
                anti_max = std::max(anti_max, sb.max_abs_coeff());
                sym_zero = sym_zero && sa.is_zero();
                anti_zero = anti_zero && sb.is_zero();
            }
        }
    for (int i = 0; i < 3; ++i) {
        const Jet<S> db = B[i][i];
        anti_max = std::max(anti_max, db.max_abs_coeff());
        anti_zero = anti_zero && db.is_zero();
    }
    const int n = h.order();
    r.entries.push_back({"initial_A", init_a_max, init_a_zero, n});
    r.entries.push_back({"initial_B", init_b_max, init_b_zero, n});
    r.entries.push_back({"symmetry_A", sym_max, sym_zero, n});
    r.entries.push_back({"antisymmetry_B", anti_max, anti_zero, n});
    record(r, "slice_im_gamma", at_slice(s.gamma.im));

    double omega_max = 0;
    bool omega_zero = true;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const Jet<S> w = at_slice(B[i][j]);
            omega_max = std::max(omega_max, w.max_abs_coeff());
            omega_zero = omega_zero && w.is_zero();
        }
    r.entries.push_back({"slice_omega", omega_max, omega_zero, n});

    r.det_positive = jets::det3_jet(A).constant_term() > S(0);
    return r;
}

} // namespace slag::ck
