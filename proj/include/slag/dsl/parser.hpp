#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "slag/dsl/expr.hpp"

namespace slag::dsl {

namespace detail {

// Recursive descent over
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?
//   primary := number | name | name '(' args ')' | '(' sum ')'
class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    Expr parse_all()
    {
        Expr e = sum();
        skip();
        if (pos_ != s_.size())
            fail("operator or end of input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& expected) const { throw ParseError(pos_, expected); }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c))
            fail(std::string("'") + c + "'");
    }

    Expr sum()
    {
        Expr e = product();
        for (;;) {
            if (accept('+'))
                e = e + product();
            else if (accept('-'))
                e = e - product();
            else
                return e;
        }
    }

    Expr product()
    {
        Expr e = unary();
        for (;;) {
            if (accept('*'))
                e = e * unary();
            else if (accept('/'))
                e = e / unary();
            else
                return e;
        }
    }

    Expr unary()
    {
        if (accept('-'))
            return -unary();
        return power();
    }

    Expr power()
    {
        Expr base = primary();
        if (!accept('^'))
            return base;
        skip();
        const std::size_t at = pos_;
        Expr exponent = unary();
        if (!fold_rational(exponent)) {
            pos_ = at;
            fail("rational constant exponent");
        }
        return Expr::power(base, exponent);
    }

    Expr primary()
    {
        skip();
        if (pos_ >= s_.size())
            fail("expression");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return Expr::literal(number());
        if (std::isalpha(static_cast<unsigned char>(c)))
            return named();
        if (accept('(')) {
            Expr e = sum();
            expect(')');
            return e;
        }
        fail("expression");
    }

    // digits [. digits] [(e|E) [+-] digits], stored exactly.
    Rational number()
    {
        const std::size_t start = pos_;
        Integer mantissa = 0;
        long scale = 0;
        bool any = false;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            mantissa = mantissa * 10 + (s_[pos_++] - '0');
            any = true;
        }
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                mantissa = mantissa * 10 + (s_[pos_++] - '0');
                --scale;
                any = true;
            }
        }
        if (!any) {
            pos_ = start;
            fail("number");
        }
        // An exponent marker only counts when digits follow; "2e" stays 2 then the constant e.
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            bool negative = false;
            if (p < s_.size() && (s_[p] == '+' || s_[p] == '-'))
                negative = s_[p++] == '-';
            if (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) {
                long ex = 0;
                while (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) {
                    ex = ex * 10 + (s_[p++] - '0');
                    if (ex > 4000) {
                        pos_ = p;
                        fail("exponent below 4000");
                    }
                }
                scale += negative ? -ex : ex;
                pos_ = p;
            }
        }
        return slag::detail::rational_ipow(Rational(10), scale) * Rational(mantissa);
    }

    std::string identifier()
    {
        const std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    Variable variable_name()
    {
        skip();
        const std::size_t at = pos_;
        const std::string id = identifier();
        for (Variable v : {Variable::t, Variable::x1, Variable::x2, Variable::x3})
            if (id == name(v))
                return v;
        pos_ = at;
        fail("variable (t, x1, x2, x3)");
    }

    Expr named()
    {
        const std::size_t at = pos_;
        const std::string id = identifier();
        for (Variable v : {Variable::t, Variable::x1, Variable::x2, Variable::x3})
            if (id == name(v))
                return Expr::variable(v);
        if (id == "pi")
            return Expr::constant(NamedConst::pi);
        if (id == "e")
            return Expr::constant(NamedConst::e);
        for (Func f : {Func::exp, Func::log, Func::sin, Func::cos, Func::sqrt}) {
            if (id == name(f)) {
                expect('(');
                Expr arg = sum();
                expect(')');
                return Expr::call(f, arg);
            }
        }
        if (id == "mean") {
            expect('(');
            const Variable v = variable_name();
            expect(',');
            Expr body = sum();
            int points = default_mean_points;
            if (accept(',')) {
                skip();
                const std::size_t num_at = pos_;
                const Rational n = number();
                if (denominator(n) != 1 || n < 2 || n > 1 << 20) {
                    pos_ = num_at;
                    fail("integer point count between 2 and 2^20");
                }
                points = numerator(n).convert_to<int>();
            }
            expect(')');
            return Expr::mean(v, body, points);
        }
        pos_ = at;
        fail("variable, constant or function name");
    }

    std::string_view s_;
    std::size_t pos_ = 0;

public:
    static constexpr int default_mean_points = 128;
};

} // namespace detail

/// Parses an expression. Throws ParseError carrying the byte offset.
inline Expr parse(std::string_view text)
{
    return detail::Parser(text).parse_all();
}

} // namespace slag::dsl
