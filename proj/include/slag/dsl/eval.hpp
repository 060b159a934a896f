#pragma once

#include <array>
#include <cmath>
#include <map>
#include <unordered_map>
#include <utility>
#include <numbers>
#include <string>
#include <vector>

#include "slag/dsl/expr.hpp"
#include "slag/dsl/grid.hpp"
#include "slag/jets/elementary.hpp"
#include "slag/jets/jet.hpp"

namespace slag::dsl {

/// Values of t, x1, x2, x3 in that order.
using PointValues = std::array<double, 4>;

namespace detail {

// Memo for mean nodes during grid sweeps, keyed by the values of the
// variables the mean actually depends on.
struct MeanCache {
    std::unordered_map<const Node*, VariableSet> free;
    std::map<std::pair<const Node*, PointValues>, double> values;
};

inline double eval_node(const Node& n, PointValues& p, MeanCache* cache = nullptr);

inline double eval_mean(const Node& n, PointValues& p, MeanCache* cache)
{
    std::pair<const Node*, PointValues> key{&n, {}};
    if (cache) {
        auto it = cache->free.find(&n);
        if (it == cache->free.end()) {
            it = cache->free.emplace(&n, free_variables(n)).first;
        }
        for (std::size_t v = 0; v < 4; ++v)
            if (it->second.test(v))
                key.second[v] = p[v];
        if (auto hit = cache->values.find(key); hit != cache->values.end())
            return hit->second;
    }
    double& slot = p[static_cast<std::size_t>(n.var)];
    const double saved = slot;
    double acc = 0.0;
    for (int i = 0; i < n.quad_points; ++i) {
        slot = static_cast<double>(i) / n.quad_points;
        acc += eval_node(*n.a, p, cache);
    }
    slot = saved;
    acc /= n.quad_points;
    if (cache)
        cache->values.emplace(key, acc);
    return acc;
}

inline double eval_node(const Node& n, PointValues& p, MeanCache* cache)
{
    switch (n.kind) {
    case Kind::literal: return to_double(n.value);
    case Kind::constant: return n.constant == NamedConst::pi ? std::numbers::pi : std::numbers::e;
    case Kind::variable: return p[static_cast<std::size_t>(n.var)];
    case Kind::neg: return -eval_node(*n.a, p, cache);
    case Kind::binary: {
        const double l = eval_node(*n.a, p, cache);
        const double r = eval_node(*n.b, p, cache);
        switch (n.op) {
        case BinOp::add: return l + r;
        case BinOp::sub: return l - r;
        case BinOp::mul: return l * r;
        case BinOp::div:
            if (r == 0.0)
                throw DomainError("division by zero");
            return l / r;
        }
        return 0.0;
    }
    case Kind::power: {
        const double b = eval_node(*n.a, p, cache);
        if (denominator(n.value) == 1) {
            if (b == 0.0 && n.value < 0)
                throw DomainError("zero raised to a negative power");
            return std::pow(b, to_double(n.value));
        }
        if (b <= 0.0)
            throw DomainError("fractional power of a non-positive value");
        return std::pow(b, to_double(n.value));
    }
    case Kind::call: {
        const double a = eval_node(*n.a, p, cache);
        switch (n.func) {
        case Func::exp: return std::exp(a);
        case Func::log:
            if (a <= 0.0)
                throw DomainError("log of a non-positive value");
            return std::log(a);
        case Func::sin: return std::sin(a);
        case Func::cos: return std::cos(a);
        case Func::sqrt:
            if (a < 0.0)
                throw DomainError("sqrt of a negative value");
            return std::sqrt(a);
        }
        return 0.0;
    }
    case Kind::mean: return eval_mean(n, p, cache);
    }
    return 0.0;
}

} // namespace detail

/// Double-precision value at one point. Throws DomainError.
inline double eval_point(const Expr& e, PointValues p)
{
    return detail::eval_node(e.node(), p);
}

inline double eval_point(const Expr& e, double t, double x1, double x2 = 0.0, double x3 = 0.0)
{
    return eval_point(e, PointValues{t, x1, x2, x3});
}

/// Samples on `grid` at time t, flat index order of Grid. A domain violation
/// is reported with the flat index and the (i, j, k) triple.
inline std::vector<double> eval_grid(const Expr& e, const Grid& grid, double t)
{
    grid.validate();
    std::vector<double> out(grid.size());
    detail::MeanCache cache;
    for (std::size_t f = 0; f < out.size(); ++f) {
        const auto x = grid.coords(f);
        try {
            PointValues p{t, x[0], x[1], x[2]};
            out[f] = detail::eval_node(e.node(), p, &cache);
        } catch (const DomainError& err) {
            const auto m = grid.multi_index(f);
            throw DomainError(std::string(err.what()) + " at grid index " + std::to_string(f) + " (" +
                              std::to_string(m[0]) + "," + std::to_string(m[1]) + "," +
                              std::to_string(m[2]) + ")");
        }
    }
    return out;
}

/// Jets substituted for t, x1, x2, x3. All four share order and base point.
template <class S>
using JetBindings = std::array<jets::Jet<S>, 4>;

/// Standard bindings: x_k is the jet generator at base_x[k]; t is either the
/// constant base_t or base_t + y1.
template <class S>
JetBindings<S> standard_bindings(const std::array<S, 3>& base_x, int order, const S& base_t,
                                 bool t_as_y1)
{
    typename jets::Jet<S>::Point base{};
    for (std::size_t k = 0; k < 3; ++k)
        base[k] = base_x[k];
    using J = jets::Jet<S>;
    J t = J::constant(base_t, order, base);
    if (t_as_y1)
        t += J::variable(jets::Var::y1, order, base);
    return {t, J::variable(jets::Var::x1, order, base), J::variable(jets::Var::x2, order, base),
            J::variable(jets::Var::x3, order, base)};
}

namespace detail {

template <class S>
jets::Jet<S> eval_jet_node(const Node& n, JetBindings<S>& b)
{
    using J = jets::Jet<S>;
    using T = ScalarTraits<S>;
    const int order = b[0].order();
    const auto& base = b[0].base_point();
    switch (n.kind) {
    case Kind::literal: return J::constant(T::from_rational(n.value), order, base);
    case Kind::constant:
        return J::constant(n.constant == NamedConst::pi ? T::pi() : T::e(), order, base);
    case Kind::variable: return b[static_cast<std::size_t>(n.var)];
    case Kind::neg: return -eval_jet_node(*n.a, b);
    case Kind::binary: {
        J l = eval_jet_node(*n.a, b);
        J r = eval_jet_node(*n.b, b);
        switch (n.op) {
        case BinOp::add: return jets::jet_arith(l, r, jets::ArithOp::add);
        case BinOp::sub: return jets::jet_arith(l, r, jets::ArithOp::sub);
        case BinOp::mul: return jets::jet_arith(l, r, jets::ArithOp::mul);
        case BinOp::div: return jets::jet_arith(l, r, jets::ArithOp::div);
        }
        return J(order, base);
    }
    case Kind::power: return jets::pow_rational(eval_jet_node(*n.a, b), n.value);
    case Kind::call: {
        J a = eval_jet_node(*n.a, b);
        switch (n.func) {
        case Func::exp: return jets::exp(a);
        case Func::log: return jets::log(a);
        case Func::sin: return jets::sin(a);
        case Func::cos: return jets::cos(a);
        case Func::sqrt: return jets::sqrt(a);
        }
        return a;
    }
    case Kind::mean: {
        J& slot = b[static_cast<std::size_t>(n.var)];
        const J saved = slot;
        J acc(order, base);
        for (int i = 0; i < n.quad_points; ++i) {
            slot = J::constant(T::from_rational(Rational(i, n.quad_points)), order, base);
            acc += eval_jet_node(*n.a, b);
        }
        slot = saved;
        acc /= T::from_rational(Rational(n.quad_points));
        return acc;
    }
    }
    return J(order, base);
}

} // namespace detail

/// Compositional jet evaluation. Domain problems at the base point surface as
/// DomainError, irrational values in exact mode as InexactError.
template <class S>
jets::Jet<S> eval_jet(const Expr& e, JetBindings<S> bindings)
{
    return detail::eval_jet_node(e.node(), bindings);
}

template <class S>
jets::Jet<S> eval_jet(const Expr& e, const std::array<S, 3>& base_x, int order, const S& base_t,
                      bool t_as_y1 = false)
{
    return eval_jet(e, standard_bindings(base_x, order, base_t, t_as_y1));
}

} // namespace slag::dsl
