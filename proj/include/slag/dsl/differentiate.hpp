#pragma once

#include "slag/dsl/expr.hpp"

namespace slag::dsl {

namespace detail {

// Constructors that drop the obvious 0 and 1 factors; nothing more.
inline Expr add(const Expr& a, const Expr& b)
{
    if (a.is_literal(0))
        return b;
    if (b.is_literal(0))
        return a;
    return a + b;
}

inline Expr sub(const Expr& a, const Expr& b)
{
    if (b.is_literal(0))
        return a;
    if (a.is_literal(0))
        return -b;
    return a - b;
}

inline Expr mul(const Expr& a, const Expr& b)
{
    if (a.is_literal(0) || b.is_literal(0))
        return Expr::literal(0);
    if (a.is_literal(1))
        return b;
    if (b.is_literal(1))
        return a;
    return a * b;
}

inline Expr div(const Expr& a, const Expr& b)
{
    if (a.is_literal(0))
        return Expr::literal(0);
    if (b.is_literal(1))
        return a;
    return a / b;
}

} // namespace detail

/// d e / d v.
inline Expr differentiate(const Expr& e, Variable v)
{
    using namespace detail;
    const Node& n = e.node();
    switch (n.kind) {
    case Kind::literal:
    case Kind::constant: return Expr::literal(0);
    case Kind::variable: return Expr::literal(n.var == v ? 1 : 0);
    case Kind::neg: {
        Expr d = differentiate(e.child_a(), v);
        return d.is_literal(0) ? d : -d;
    }
    case Kind::binary: {
        const Expr a = e.child_a(), b = e.child_b();
        const Expr da = differentiate(a, v), db = differentiate(b, v);
        switch (n.op) {
        case BinOp::add: return add(da, db);
        case BinOp::sub: return sub(da, db);
        case BinOp::mul: return add(mul(da, b), mul(a, db));
        case BinOp::div: return sub(div(da, b), div(mul(a, db), mul(b, b)));
        }
        break;
    }
    case Kind::power: {
        const Expr base = e.child_a();
        const Expr db = differentiate(base, v);
        if (n.value.is_zero() || db.is_literal(0))
            return Expr::literal(0);
        const Rational p1 = n.value - 1;
        Expr lowered = p1.is_zero() ? Expr::literal(1) : (p1 == 1 ? base : Expr::power(base, p1));
        return mul(mul(Expr::literal(n.value), lowered), db);
    }
    case Kind::call: {
        const Expr a = e.child_a();
        const Expr da = differentiate(a, v);
        if (da.is_literal(0))
            return da;
        switch (n.func) {
        case Func::exp: return mul(e, da);
        case Func::log: return div(da, a);
        case Func::sin: return mul(cos(a), da);
        case Func::cos: return -mul(sin(a), da);
        case Func::sqrt: return div(da, mul(Expr::literal(2), e));
        }
        break;
    }
    case Kind::mean: {
        if (n.var == v)
            return Expr::literal(0);
        Expr d = differentiate(e.child_a(), v);
        return d.is_literal(0) ? d : Expr::mean(n.var, d, n.quad_points);
    }
    }
    return Expr::literal(0);
}

} // namespace slag::dsl
