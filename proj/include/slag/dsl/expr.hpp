#pragma once

#include <bitset>
#include <memory>
#include <optional>
#include <string>

#include "slag/error.hpp"
#include "slag/jets/scalar.hpp"

namespace slag::dsl {

enum class Variable { t = 0, x1, x2, x3 };
enum class Func { exp, log, sin, cos, sqrt };
enum class BinOp { add, sub, mul, div };
enum class NamedConst { pi, e };

inline const char* name(Variable v)
{
    static constexpr const char* names[] = {"t", "x1", "x2", "x3"};
    return names[static_cast<int>(v)];
}

inline const char* name(Func f)
{
    static constexpr const char* names[] = {"exp", "log", "sin", "cos", "sqrt"};
    return names[static_cast<int>(f)];
}

/// x_k for k = 1, 2, 3.
inline Variable x_variable(int k)
{
    return static_cast<Variable>(k);
}

using VariableSet = std::bitset<4>;

enum class Kind { literal, constant, variable, neg, binary, power, call, mean };

class Expr;

/// Immutable AST node. `mean` is the periodic average over [0, 1) of `a` in
/// `var`, evaluated with an n-point trapezoid rule.
struct Node {
    Kind kind = Kind::literal;
    Rational value;                       // literal value, or the folded exponent of a power
    NamedConst constant = NamedConst::pi; // constant
    Variable var = Variable::t;           // variable, integration variable of mean
    BinOp op = BinOp::add;                // binary
    Func func = Func::exp;                // call
    std::shared_ptr<const Node> a;        // operand, left, base, argument, body
    std::shared_ptr<const Node> b;        // right, exponent expression
    int quad_points = 0;                  // mean
};

class Expr {
public:
    Expr() : Expr(literal(Rational(0))) {}

    static Expr literal(const Rational& v)
    {
        Node n;
        n.kind = Kind::literal;
        n.value = v;
        return Expr(std::move(n));
    }

    static Expr literal(long v) { return literal(Rational(v)); }

    static Expr constant(NamedConst c)
    {
        Node n;
        n.kind = Kind::constant;
        n.constant = c;
        return Expr(std::move(n));
    }

    static Expr variable(Variable v)
    {
        Node n;
        n.kind = Kind::variable;
        n.var = v;
        return Expr(std::move(n));
    }

    static Expr neg(const Expr& a)
    {
        Node n;
        n.kind = Kind::neg;
        n.a = a.node_;
        return Expr(std::move(n));
    }

    static Expr binary(BinOp op, const Expr& l, const Expr& r)
    {
        Node n;
        n.kind = Kind::binary;
        n.op = op;
        n.a = l.node_;
        n.b = r.node_;
        return Expr(std::move(n));
    }

    /// base ^ exponent, where the exponent expression must fold to a rational.
    static Expr power(const Expr& base, const Expr& exponent);

    static Expr power(const Expr& base, const Rational& p) { return power(base, literal_signed(p)); }

    static Expr call(Func f, const Expr& arg)
    {
        Node n;
        n.kind = Kind::call;
        n.func = f;
        n.a = arg.node_;
        return Expr(std::move(n));
    }

    static Expr mean(Variable v, const Expr& body, int points)
    {
        if (points < 2)
            throw DomainError("mean needs at least 2 quadrature points");
        Node n;
        n.kind = Kind::mean;
        n.var = v;
        n.a = body.node_;
        n.quad_points = points;
        return Expr(std::move(n));
    }

    const Node& node() const { return *node_; }
    Kind kind() const { return node_->kind; }
    Expr child_a() const { return Expr(node_->a); }
    Expr child_b() const { return Expr(node_->b); }

    bool is_literal(const Rational& v) const { return kind() == Kind::literal && node_->value == v; }

    /// Structural equality of the trees.
    bool operator==(const Expr& o) const { return equal(*node_, *o.node_); }

    friend Expr operator+(const Expr& l, const Expr& r) { return binary(BinOp::add, l, r); }
    friend Expr operator-(const Expr& l, const Expr& r) { return binary(BinOp::sub, l, r); }
    friend Expr operator*(const Expr& l, const Expr& r) { return binary(BinOp::mul, l, r); }
    friend Expr operator/(const Expr& l, const Expr& r) { return binary(BinOp::div, l, r); }
    friend Expr operator-(const Expr& a) { return neg(a); }

private:
    explicit Expr(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static Expr literal_signed(const Rational& p) { return p < 0 ? neg(literal(-p)) : literal(p); }

    static bool equal(const Node& x, const Node& y)
    {
        if (x.kind != y.kind)
            return false;
        switch (x.kind) {
        case Kind::literal: return x.value == y.value;
        case Kind::constant: return x.constant == y.constant;
        case Kind::variable: return x.var == y.var;
        case Kind::neg: return equal(*x.a, *y.a);
        case Kind::binary: return x.op == y.op && equal(*x.a, *y.a) && equal(*x.b, *y.b);
        case Kind::power: return equal(*x.a, *y.a) && equal(*x.b, *y.b);
        case Kind::call: return x.func == y.func && equal(*x.a, *y.a);
        case Kind::mean:
            return x.var == y.var && x.quad_points == y.quad_points && equal(*x.a, *y.a);
        }
        return false;
    }

    std::shared_ptr<const Node> node_;
};

/// Rational value of a variable-free, function-free expression built from
/// literals, negation, + - * / and integer powers.
inline std::optional<Rational> fold_rational(const Expr& e)
{
    const Node& n = e.node();
    switch (n.kind) {
    case Kind::literal: return n.value;
    case Kind::neg: {
        auto a = fold_rational(e.child_a());
        return a ? std::optional<Rational>(-*a) : std::nullopt;
    }
    case Kind::binary: {
        auto l = fold_rational(e.child_a());
        auto r = fold_rational(e.child_b());
        if (!l || !r)
            return std::nullopt;
        switch (n.op) {
        case BinOp::add: return *l + *r;
        case BinOp::sub: return *l - *r;
        case BinOp::mul: return *l * *r;
        case BinOp::div:
            if (r->is_zero())
                return std::nullopt;
            return *l / *r;
        }
        return std::nullopt;
    }
    case Kind::power: {
        auto base = fold_rational(e.child_a());
        if (!base || denominator(n.value) != 1)
            return std::nullopt;
        if (base->is_zero() && n.value < 0)
            return std::nullopt;
        return slag::detail::rational_ipow(*base, numerator(n.value).convert_to<long>());
    }
    default: return std::nullopt;
    }
}

inline Expr Expr::power(const Expr& base, const Expr& exponent)
{
    auto p = fold_rational(exponent);
    if (!p)
        throw DomainError("exponent must be a rational constant");
    Node n;
    n.kind = Kind::power;
    n.a = base.node_;
    n.b = exponent.node_;
    n.value = *p;
    return Expr(std::move(n));
}

inline Expr exp(const Expr& a)
{
    return Expr::call(Func::exp, a);
}
inline Expr log(const Expr& a)
{
    return Expr::call(Func::log, a);
}
inline Expr sin(const Expr& a)
{
    return Expr::call(Func::sin, a);
}
inline Expr cos(const Expr& a)
{
    return Expr::call(Func::cos, a);
}
inline Expr sqrt(const Expr& a)
{
    return Expr::call(Func::sqrt, a);
}
inline Expr pow(const Expr& a, const Rational& p)
{
    return Expr::power(a, p);
}

/// Variables the value of a node depends on syntactically.
inline VariableSet free_variables(const Node& n)
{
    switch (n.kind) {
    case Kind::literal:
    case Kind::constant: return {};
    case Kind::variable: return VariableSet().set(static_cast<std::size_t>(n.var));
    case Kind::neg:
    case Kind::call:
    case Kind::power: return free_variables(*n.a);
    case Kind::binary: return free_variables(*n.a) | free_variables(*n.b);
    case Kind::mean: {
        VariableSet s = free_variables(*n.a);
        s.reset(static_cast<std::size_t>(n.var));
        return s;
    }
    }
    return {};
}

inline VariableSet free_variables(const Expr& e)
{
    return free_variables(e.node());
}

inline bool depends_on(const Expr& e, Variable v)
{
    return free_variables(e).test(static_cast<std::size_t>(v));
}

} // namespace slag::dsl
