#pragma once

#include <algorithm>
#include <array>
#include <string>

#include "slag/ck/solver.hpp"
#include "slag/families/check.hpp"
#include "slag/families/family.hpp"

namespace slag::families {

template <class S>
struct FamilyPolicy {
    ck::JetMatrix<S> g;
    ck::ExtensionPolicy<S> policy;
    FamilyCheckReport check;
};

struct CheckOptions {
    std::size_t n = 64;
    int nt = 11;
    double tol = 1e-10;
};

/// Initial metric A_{base_t} as jets at base_x, and the step-1 policy that
/// extends the free entries by A_{base_t + y1}. Refuses inadmissible families.
template <class S>
FamilyPolicy<S> family_to_policy(const MetricFamily& fam, const S& base_t, const std::array<S, 3>& base_x,
                                 int order, const CheckOptions& opt = {})
{
    if (fam.dim != 3)
        throw FamilyError("only three-dimensional families feed the embedding");
    FamilyPolicy<S> out;
    out.check = check_slag_family(fam, opt.n, opt.nt, opt.tol);
    if (!out.check.pass())
        throw FamilyError("family is not admissible (det_t=" + std::to_string(out.check.det_t) +
                          ", det_x1=" + std::to_string(out.check.det_x1) +
                          ", closure=" + std::to_string(out.check.closure) + ")");
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            out.g[i][j] = dsl::eval_jet<S>(fam.entry(i, j), base_x, order, base_t, false);
            out.g[j][i] = out.g[i][j];
            if (ck::ExtensionPolicy<S>::free_in_step1(i + 1, j + 1))
                out.policy.set(1, i + 1, j + 1, dsl::eval_jet<S>(fam.entry(i, j), base_x, order, base_t, true));
        }
    out.policy.name = "family:" + fam.kind;
    return out;
}

/// Jet form of the horizontal-slice conditions: B and Im Gamma on (x, y1, 0, 0).
struct SliceCheck {
    double b_max = 0.0;
    bool b_exact_zero = true;
    double im_gamma_max = 0.0;
    bool im_gamma_exact_zero = true;

    double max() const { return std::max(b_max, im_gamma_max); }
};

template <class S>
SliceCheck horizontal_slice_check(const ck::CYStructureJet<S>& s)
{
    SliceCheck r;
    for (const auto& row : s.h.B)
        for (const auto& b : row) {
            const auto cut = jets::restrict_zero(b, {jets::Var::y2, jets::Var::y3});
            r.b_max = std::max(r.b_max, cut.max_abs_coeff());
            r.b_exact_zero = r.b_exact_zero && cut.is_zero();
        }
    const auto im = jets::restrict_zero(s.gamma.im, {jets::Var::y2, jets::Var::y3});
    r.im_gamma_max = im.max_abs_coeff();
    r.im_gamma_exact_zero = im.is_zero();
    return r;
}

} // namespace slag::families
