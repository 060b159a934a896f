#pragma once

#include <vector>

#include "slag/jets/jet.hpp"

namespace slag::jets {

/// re + i im with both parts sharing base point and order.
template <class S>
struct ComplexJet {
    Jet<S> re;
    Jet<S> im;

    int order() const { return re.order(); }

    /// |f|^2 = re^2 + im^2
    Jet<S> norm_squared() const { return re * re + im * im; }

    ComplexJet restrict_zero(std::initializer_list<Var> vars) const
    {
        return {jets::restrict_zero(re, vars), jets::restrict_zero(im, vars)};
    }

    bool operator==(const ComplexJet&) const = default;
};

namespace detail {

template <class S>
std::vector<std::vector<S>> binomial_table(int n)
{
    std::vector<std::vector<S>> c(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        c[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i) + 1, S(1));
        for (int j = 1; j < i; ++j)
            c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                c[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j) - 1] +
                c[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j)];
    }
    return c;
}

} // namespace detail

/// Holomorphic extension f(x) -> f(x + iy) of a germ in x1, x2, x3.
///
/// Each monomial X^a (X = x - base) becomes prod_k (X_k + i Y_k)^(a_k),
/// expanded binomially. Degrees are preserved, so no truncation is lost.
/// The base point must lie on the real slice (y-components zero).
template <class S>
ComplexJet<S> holomorphic_extend(const Jet<S>& f)
{
    for (int k = 0; k < 3; ++k) {
        if (f.depends_on(y_var(k)))
            throw JetError("holomorphic_extend: input depends on y");
        if (!ScalarTraits<S>::is_zero(f.base_point()[static_cast<std::size_t>(3 + k)]))
            throw JetError("holomorphic_extend: base point must have y = 0");
    }
    const auto binom = detail::binomial_table<S>(f.order());
    ComplexJet<S> out{Jet<S>(f.order(), f.base_point()), Jet<S>(f.order(), f.base_point())};

    for (const auto& [m, c] : f.terms()) {
        // Expand the three factors one at a time: list of (index, power of i, coefficient).
        struct Partial {
            MultiIndex idx;
            int ipow;
            S coeff;
        };
        std::vector<Partial> parts{{MultiIndex{}, 0, c}};
        for (int k = 0; k < 3; ++k) {
            const int a = m.exps[static_cast<std::size_t>(k)];
            if (a == 0)
                continue;
            std::vector<Partial> next;
            next.reserve(parts.size() * static_cast<std::size_t>(a + 1));
            for (const auto& p : parts) {
                for (int j = 0; j <= a; ++j) {
                    Partial q = p;
                    q.idx.exps[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(a - j);
                    q.idx.exps[static_cast<std::size_t>(3 + k)] = static_cast<std::uint8_t>(j);
                    q.ipow += j;
                    q.coeff *= binom[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)];
                    next.push_back(std::move(q));
                }
            }
            parts = std::move(next);
        }
        for (const auto& p : parts) {
            switch (p.ipow % 4) {
            case 0: out.re.add_to(p.idx, p.coeff); break;
            case 1: out.im.add_to(p.idx, p.coeff); break;
            case 2: out.re.add_to(p.idx, -p.coeff); break;
            case 3: out.im.add_to(p.idx, -p.coeff); break;
            }
        }
    }
    return out;
}

} // namespace slag::jets
