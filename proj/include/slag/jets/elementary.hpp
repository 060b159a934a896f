#pragma once

// Elementary functions of jets.
//
// a = c + t with c the constant term and t nilpotent (t^(order+1) = 0), so
// f(a) = sum_k f^(k)(c)/k! t^k is a finite sum. Only the scalar Taylor
// coefficients of f at c are needed.

#include <vector>

#include "slag/jets/jet.hpp"

namespace slag::jets {

enum class Elementary { exp, log, sin, cos, sqrt, pow_rational };

namespace detail {

template <class S>
Jet<S> compose(const Jet<S>& a, const std::vector<S>& taylor)
{
    const Jet<S> t = a - a.constant_term();
    Jet<S> acc = Jet<S>::constant(taylor.back(), a.order(), a.base_point());
    for (int k = static_cast<int>(taylor.size()) - 2; k >= 0; --k)
        acc = acc * t + taylor[static_cast<std::size_t>(k)];
    return acc;
}

template <class S>
std::vector<S> inverse_factorials(int n)
{
    std::vector<S> f(static_cast<std::size_t>(n) + 1);
    f[0] = S(1);
    for (int k = 1; k <= n; ++k)
        f[static_cast<std::size_t>(k)] = f[static_cast<std::size_t>(k) - 1] / S(k);
    return f;
}

} // namespace detail

template <class S>
Jet<S> exp(const Jet<S>& a)
{
    const int n = a.order();
    const S ec = ScalarTraits<S>::exp(a.constant_term());
    auto taylor = detail::inverse_factorials<S>(n);
    for (auto& c : taylor)
        c *= ec;
    return detail::compose(a, taylor);
}

template <class S>
Jet<S> log(const Jet<S>& a)
{
    const S c = a.constant_term();
    if (!(c > S(0)))
        throw DomainError("log of a jet with non-positive constant term");
    const int n = a.order();
    std::vector<S> taylor(static_cast<std::size_t>(n) + 1);
    taylor[0] = ScalarTraits<S>::log(c);
    S cpow = c;
    for (int k = 1; k <= n; ++k) {
        const S sign = (k % 2 == 1) ? S(1) : S(-1);
        taylor[static_cast<std::size_t>(k)] = sign / (S(k) * cpow);
        cpow *= c;
    }
    return detail::compose(a, taylor);
}

namespace detail {

// Derivative cycle of sin starting at phase 0 (sin) or 1 (cos).
template <class S>
Jet<S> trig(const Jet<S>& a, int phase)
{
    const S c = a.constant_term();
    const S s = ScalarTraits<S>::sin(c);
    const S co = ScalarTraits<S>::cos(c);
    const S cycle[4] = {s, co, -s, -co};
    auto taylor = inverse_factorials<S>(a.order());
    for (std::size_t k = 0; k < taylor.size(); ++k)
        taylor[k] *= cycle[(k + static_cast<std::size_t>(phase)) % 4];
    return compose(a, taylor);
}

} // namespace detail

template <class S>
Jet<S> sin(const Jet<S>& a)
{
    return detail::trig(a, 0);
}

template <class S>
Jet<S> cos(const Jet<S>& a)
{
    return detail::trig(a, 1);
}

/// a^p for rational p. Non-integer or negative p needs a positive constant
/// term; non-negative integer powers go through plain multiplication.
template <class S>
Jet<S> pow_rational(const Jet<S>& a, const Rational& p)
{
    if (denominator(p) == 1 && p >= 0)
        return ipow(a, numerator(p).convert_to<unsigned>());
    const S c = a.constant_term();
    if (denominator(p) == 1) {
        if (ScalarTraits<S>::is_zero(c))
            throw DomainError("negative power of a jet with zero constant term");
        return reciprocal(ipow(a, (-numerator(p)).convert_to<unsigned>()));
    }
    if (!(c > S(0)))
        throw DomainError("fractional power of a jet with non-positive constant term");
    // binom(p, k) c^(p - k)
    const int n = a.order();
    std::vector<S> taylor(static_cast<std::size_t>(n) + 1);
    const S pc = ScalarTraits<S>::pow(c, p);
    const S ps = ScalarTraits<S>::from_rational(p);
    S binom = S(1);
    S cinv = S(1);
    for (int k = 0; k <= n; ++k) {
        taylor[static_cast<std::size_t>(k)] = binom * pc * cinv;
        binom = binom * (ps - S(k)) / S(k + 1);
        cinv /= c;
    }
    return detail::compose(a, taylor);
}

template <class S>
Jet<S> sqrt(const Jet<S>& a)
{
    return pow_rational(a, Rational(1, 2));
}

template <class S>
Jet<S> jet_elementary(Elementary f, const Jet<S>& a, const Rational& p = Rational(1))
{
    switch (f) {
    case Elementary::exp: return exp(a);
    case Elementary::log: return log(a);
    case Elementary::sin: return sin(a);
    case Elementary::cos: return cos(a);
    case Elementary::sqrt: return sqrt(a);
    case Elementary::pow_rational: return pow_rational(a, p);
    }
    throw JetError("unknown elementary function");
}

} // namespace slag::jets
