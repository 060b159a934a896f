#pragma once

// Scalar back-ends for jets: exact GMP rationals and binary doubles.
//
// Elementary functions are only ever evaluated at the constant term of a
// jet. The rational back-end answers exactly where the value is rational
// (exp(0), log(1), perfect powers, ...) and throws InexactError otherwise.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include <boost/multiprecision/gmp.hpp>

#include "slag/error.hpp"

namespace slag {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

enum class ScalarMode { exact_rational, binary_float };

inline const char* to_string(ScalarMode mode)
{
    return mode == ScalarMode::exact_rational ? "exact" : "float";
}

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr ScalarMode mode = ScalarMode::binary_float;

    static double from_rational(const Rational& r) { return r.convert_to<double>(); }
    static double to_double(double v) { return v; }
    static bool is_zero(double v) { return v == 0.0; }

    static double pi() { return std::numbers::pi; }
    static double e() { return std::numbers::e; }
    static double exp(double c) { return std::exp(c); }
    static double log(double c) { return std::log(c); }
    static double sin(double c) { return std::sin(c); }
    static double cos(double c) { return std::cos(c); }

    static double pow(double c, const Rational& p)
    {
        if (p == Rational(1, 2))
            return std::sqrt(c);
        if (p == Rational(-1, 2))
            return 1.0 / std::sqrt(c);
        if (p == Rational(1, 3))
            return std::cbrt(c);
        return std::pow(c, p.convert_to<double>());
    }

    static std::string to_string(double v)
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }
};

namespace detail {

// Exact q-th root of a non-negative integer, or false.
inline bool exact_root(const Integer& n, unsigned long q, Integer& out)
{
    if (n < 0)
        return false;
    return mpz_root(out.backend().data(), n.backend().data(), q) != 0;
}

inline Rational rational_ipow(const Rational& base, long e)
{
    Rational result = 1;
    Rational b = e < 0 ? Rational(1) / base : base;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    while (k) {
        if (k & 1UL)
            result *= b;
        b *= b;
        k >>= 1;
    }
    return result;
}

} // namespace detail

template <>
struct ScalarTraits<Rational> {
    static constexpr ScalarMode mode = ScalarMode::exact_rational;

    static Rational from_rational(const Rational& r) { return r; }
    static double to_double(const Rational& v) { return v.convert_to<double>(); }
    static bool is_zero(const Rational& v) { return v.is_zero(); }

    static Rational pi() { throw InexactError("pi is not representable in exact-rational mode"); }
    static Rational e() { throw InexactError("e is not representable in exact-rational mode"); }

    static Rational exp(const Rational& c)
    {
        if (c.is_zero())
            return 1;
        throw InexactError("exp of a non-zero rational is not rational");
    }

    static Rational log(const Rational& c)
    {
        if (c == 1)
            return 0;
        throw InexactError("log of a rational other than 1 is not rational");
    }

    static Rational sin(const Rational& c)
    {
        if (c.is_zero())
            return 0;
        throw InexactError("sin of a non-zero rational is not rational");
    }

    static Rational cos(const Rational& c)
    {
        if (c.is_zero())
            return 1;
        throw InexactError("cos of a non-zero rational is not rational");
    }

    // c^p for c > 0 when the result is rational.
    static Rational pow(const Rational& c, const Rational& p)
    {
        const Integer pn = numerator(p);
        const Integer pd = denominator(p);
        if (pd == 1)
            return detail::rational_ipow(c, pn.convert_to<long>());
        const unsigned long q = pd.convert_to<unsigned long>();
        Integer rn, rd;
        if (!detail::exact_root(numerator(c), q, rn) || !detail::exact_root(denominator(c), q, rd))
            throw InexactError("rational power " + p.str() + " of " + c.str() + " is not rational");
        return detail::rational_ipow(Rational(rn, rd), pn.convert_to<long>());
    }

    static std::string to_string(const Rational& v) { return v.str(); }
};

template <class S>
inline double to_double(const S& v)
{
    return ScalarTraits<S>::to_double(v);
}

} // namespace slag
