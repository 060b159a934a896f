#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <map>
#include <string>

#include "slag/error.hpp"
#include "slag/jets/multi_index.hpp"
#include "slag/jets/scalar.hpp"

namespace slag::jets {

/// Truncated Taylor series in (x1, x2, x3, y1, y2, y3) around a base point.
///
/// A coefficient stored under multi-index m multiplies (v - base)^m. Only
/// indices of total degree <= order are stored, absent indices are zero and
/// exact zeros are never kept. Jets combine only when base point and order
/// agree; the scalar mode is part of the type.
template <class S>
class Jet {
public:
    using Scalar = S;
    using Point = std::array<S, num_vars>;
    using Terms = std::map<MultiIndex, S>;

    static constexpr ScalarMode mode = ScalarTraits<S>::mode;

    Jet() = default;

    explicit Jet(int order, Point base = {}) : base_(std::move(base)), order_(order)
    {
        if (order < 0)
            throw JetError("jet order must be non-negative");
    }

    static Jet constant(const S& c, int order, Point base = {})
    {
        Jet j(order, std::move(base));
        j.set(MultiIndex{}, c);
        return j;
    }

    /// The coordinate function v around the base point: base[v] + (v - base[v]).
    static Jet variable(Var v, int order, Point base = {})
    {
        Jet j(order, std::move(base));
        j.set(MultiIndex{}, j.base_[index(v)]);
        if (order >= 1)
            j.set(MultiIndex::unit(v), S(1));
        return j;
    }

    static Jet monomial(const MultiIndex& m, const S& c, int order, Point base = {})
    {
        Jet j(order, std::move(base));
        if (m.degree() <= order)
            j.set(m, c);
        return j;
    }

    int order() const noexcept { return order_; }
    const Point& base_point() const noexcept { return base_; }
    const Terms& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    S coeff(const MultiIndex& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? S(0) : it->second;
    }

    S constant_term() const { return coeff(MultiIndex{}); }

    bool depends_on(Var v) const
    {
        return std::any_of(terms_.begin(), terms_.end(),
                           [v](const auto& t) { return t.first[v] > 0; });
    }

    double max_abs_coeff() const
    {
        double m = 0.0;
        for (const auto& [idx, c] : terms_)
            m = std::max(m, std::abs(to_double(c)));
        return m;
    }

    void set(const MultiIndex& m, const S& c)
    {
        if (m.degree() > order_)
            throw JetError("index " + m.str() + " exceeds jet order " + std::to_string(order_));
        if (ScalarTraits<S>::is_zero(c))
            terms_.erase(m);
        else
            terms_[m] = c;
    }

    void add_to(const MultiIndex& m, const S& c)
    {
        if (m.degree() > order_)
            return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (ScalarTraits<S>::is_zero(it->second))
                terms_.erase(it);
        }
        else if (ScalarTraits<S>::is_zero(c)) {
            terms_.erase(it);
        }
    }

    bool compatible(const Jet& o) const { return order_ == o.order_ && base_ == o.base_; }

    void check_compatible(const Jet& o) const
    {
        if (order_ != o.order_)
            throw JetError("jet orders differ: " + std::to_string(order_) + " vs " +
                           std::to_string(o.order_));
        if (base_ != o.base_)
            throw JetError("jet base points differ");
    }

    bool operator==(const Jet& o) const
    {
        return order_ == o.order_ && base_ == o.base_ && terms_ == o.terms_;
    }

    Jet operator-() const
    {
        Jet r = *this;
        for (auto& [m, c] : r.terms_)
            c = -c;
        return r;
    }

    Jet& operator+=(const Jet& o)
    {
        check_compatible(o);
        for (const auto& [m, c] : o.terms_)
            add_to(m, c);
        return *this;
    }

    Jet& operator-=(const Jet& o)
    {
        check_compatible(o);
        for (const auto& [m, c] : o.terms_)
            add_to(m, -c);
        return *this;
    }

    Jet& operator*=(const S& s)
    {
        if (ScalarTraits<S>::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_)
            c *= s;
        return *this;
    }

    Jet& operator/=(const S& s)
    {
        if (ScalarTraits<S>::is_zero(s))
            throw DomainError("division of a jet by zero");
        for (auto& [m, c] : terms_)
            c /= s;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, const S& s) { return a *= s; }
    friend Jet operator*(const S& s, Jet a) { return a *= s; }
    friend Jet operator/(Jet a, const S& s) { return a /= s; }

    friend Jet operator+(Jet a, const S& s)
    {
        a.add_to(MultiIndex{}, s);
        return a;
    }
    friend Jet operator-(Jet a, const S& s)
    {
        a.add_to(MultiIndex{}, -s);
        return a;
    }

    /// Truncated product: only pairs with deg(a) + deg(b) <= order contribute.
    friend Jet operator*(const Jet& a, const Jet& b)
    {
        a.check_compatible(b);
        Jet r(a.order_, a.base_);
        const int n = a.order_;
        for (const auto& [ia, ca] : a.terms_) {
            const int da = ia.degree();
            for (const auto& [ib, cb] : b.terms_) {
                if (da + ib.degree() > n)
                    break; // terms are graded, the rest is higher still
                r.terms_[ia + ib] += ca * cb;
            }
        }
        r.prune();
        return r;
    }

    Jet& operator*=(const Jet& o) { return *this = *this * o; }

private:
    template <class T>
    friend Jet<T> partial(const Jet<T>&, Var);
    template <class T>
    friend Jet<T> truncate(const Jet<T>&, int);
    template <class T>
    friend Jet<T> slice(const Jet<T>&, Var, int);
    template <class T>
    friend Jet<T> shift(const Jet<T>&, Var, int, int);

    void prune()
    {
        std::erase_if(terms_, [](const auto& t) { return ScalarTraits<S>::is_zero(t.second); });
    }

    Point base_{};
    int order_ = 0;
    Terms terms_;
};

/// Formal partial derivative; the result has order one less.
template <class S>
Jet<S> partial(const Jet<S>& a, Var v)
{
    if (a.order() < 1)
        throw JetError(std::string("cannot differentiate an order-0 jet by ") + name(v));
    Jet<S> r(a.order() - 1, a.base_point());
    const int k = index(v);
    for (const auto& [m, c] : a.terms()) {
        if (m.exps[k] == 0)
            continue;
        MultiIndex d = m;
        d.exps[k] -= 1;
        r.terms_.emplace(d, c * S(m.exps[k]));
    }
    return r;
}

template <class S>
Jet<S> truncate(const Jet<S>& a, int order)
{
    if (order > a.order())
        throw JetError("cannot raise jet order by truncation (" + std::to_string(a.order()) +
                       " -> " + std::to_string(order) + ")");
    if (order < 0)
        throw JetError("jet order must be non-negative");
    Jet<S> r(order, a.base_point());
    for (const auto& [m, c] : a.terms()) {
        if (m.degree() > order)
            break;
        r.terms_.emplace_hint(r.terms_.end(), m, c);
    }
    return r;
}

/// Restriction to the hyperplanes {v = base[v]} for every listed variable.
template <class S>
Jet<S> restrict_zero(const Jet<S>& a, std::initializer_list<Var> vars)
{
    Jet<S> r(a.order(), a.base_point());
    for (const auto& [m, c] : a.terms()) {
        bool keep = true;
        for (Var v : vars)
            keep = keep && m[v] == 0;
        if (keep)
            r.set(m, c);
    }
    return r;
}

/// Coefficient of (v - base[v])^k, as a jet free of v with order reduced by k.
template <class S>
Jet<S> slice(const Jet<S>& a, Var v, int k)
{
    if (k < 0 || k > a.order())
        throw JetError("slice index out of range");
    Jet<S> r(a.order() - k, a.base_point());
    const int i = index(v);
    for (const auto& [m, c] : a.terms()) {
        if (m.exps[i] != k)
            continue;
        MultiIndex d = m;
        d.exps[i] = 0;
        r.terms_.emplace(d, c);
    }
    return r;
}

/// a * (v - base[v])^k viewed as a jet of the given order. The input must
/// carry enough precision: a.order() + k >= order.
template <class S>
Jet<S> shift(const Jet<S>& a, Var v, int k, int order)
{
    if (a.order() + k < order)
        throw JetError("shift would claim more precision than the input carries");
    Jet<S> r(order, a.base_point());
    const int i = index(v);
    for (const auto& [m, c] : a.terms()) {
        if (m[v] != 0)
            throw JetError(std::string("shift input depends on ") + name(v));
        if (m.degree() + k > order)
            break;
        MultiIndex d = m;
        d.exps[i] = static_cast<std::uint8_t>(k);
        r.terms_.emplace(d, c);
    }
    return r;
}

/// 1/a by composing 1/(c + t) = sum (-1)^k t^k / c^(k+1) with the
/// nilpotent part t of a.
template <class S>
Jet<S> reciprocal(const Jet<S>& a)
{
    const S c = a.constant_term();
    if (ScalarTraits<S>::is_zero(c))
        throw DomainError("reciprocal of a jet with zero constant term");
    Jet<S> t = a - c;
    const S inv = S(1) / c;
    // Horner: r = inv * (1 - t/c * (1 - t/c * (...)))
    Jet<S> u = t * inv;
    Jet<S> acc = Jet<S>::constant(S(1), a.order(), a.base_point());
    for (int k = 0; k < a.order(); ++k)
        acc = Jet<S>::constant(S(1), a.order(), a.base_point()) - u * acc;
    return acc * inv;
}

template <class S>
Jet<S> operator/(const Jet<S>& a, const Jet<S>& b)
{
    a.check_compatible(b);
    return a * reciprocal(b);
}

enum class ArithOp { add, sub, mul, div };

template <class S>
Jet<S> jet_arith(const Jet<S>& a, const Jet<S>& b, ArithOp op)
{
    switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
    }
    throw JetError("unknown arithmetic operation");
}

/// Integer power by repeated squaring; no domain restriction.
template <class S>
Jet<S> ipow(const Jet<S>& a, unsigned n)
{
    Jet<S> result = Jet<S>::constant(S(1), a.order(), a.base_point());
    Jet<S> b = a;
    while (n) {
        if (n & 1U)
            result = result * b;
        n >>= 1;
        if (n)
            b = b * b;
    }
    return result;
}

} // namespace slag::jets
