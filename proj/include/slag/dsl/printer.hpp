#pragma once

#include <string>

#include "slag/dsl/expr.hpp"

namespace slag::dsl {

namespace detail {

// Binding strength used by the printer: sums 1, products 2, unary minus 3,
// powers 4, atoms 5.
inline int precedence(const Node& n)
{
    switch (n.kind) {
    case Kind::binary: return (n.op == BinOp::add || n.op == BinOp::sub) ? 1 : 2;
    case Kind::neg: return 3;
    case Kind::power: return 4;
    default: return 5;
    }
}

/// Exact decimal text if the denominator is 2^a 5^b, otherwise "p/q".
inline std::string rational_text(const Rational& v, bool& is_decimal)
{
    Integer num = numerator(v);
    Integer den = denominator(v);
    is_decimal = true;
    if (den == 1)
        return num.str();
    Integer d = den;
    unsigned twos = 0, fives = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++twos;
    }
    while (d % 5 == 0) {
        d /= 5;
        ++fives;
    }
    if (d != 1) {
        is_decimal = false;
        return num.str() + "/" + den.str();
    }
    const unsigned digits = std::max(twos, fives);
    Integer scale = 1;
    for (unsigned i = 0; i < digits; ++i)
        scale *= 10;
    const bool negative = num < 0;
    Integer scaled = (negative ? Integer(-num) : num) * (scale / den);
    std::string s = scaled.str();
    if (s.size() <= digits)
        s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
    return negative ? "-" + s : s;
}

inline std::string print(const Node& n, int min_prec);

inline std::string print_atom(const Node& n)
{
    switch (n.kind) {
    case Kind::literal: {
        bool decimal = true;
        std::string s = rational_text(n.value, decimal);
        if (decimal && n.value >= 0)
            return s;
        return "(" + s + ")";
    }
    case Kind::constant: return n.constant == NamedConst::pi ? "pi" : "e";
    case Kind::variable: return name(n.var);
    case Kind::call: return std::string(name(n.func)) + "(" + print(*n.a, 0) + ")";
    case Kind::mean:
        return std::string("mean(") + name(n.var) + ", " + print(*n.a, 0) + ", " +
               std::to_string(n.quad_points) + ")";
    default: return {};
    }
}

inline std::string print(const Node& n, int min_prec)
{
    std::string s;
    switch (n.kind) {
    case Kind::binary: {
        static constexpr const char* ops[] = {" + ", " - ", "*", "/"};
        const int p = precedence(n);
        s = print(*n.a, p) + ops[static_cast<int>(n.op)] + print(*n.b, p + 1);
        break;
    }
    case Kind::neg: s = "-" + print(*n.a, 3); break;
    case Kind::power: s = print(*n.a, 5) + "^" + print(*n.b, 3); break;
    default: return print_atom(n);
    }
    return precedence(n) < min_prec ? "(" + s + ")" : s;
}

} // namespace detail

/// Canonical text form with minimal parentheses; parses back to the same tree.
inline std::string to_string(const Expr& e)
{
    return detail::print(e.node(), 0);
}

} // namespace slag::dsl
