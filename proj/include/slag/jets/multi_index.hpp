#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace slag::jets {

inline constexpr int num_vars = 6;

/// Jet variables, in storage order. Complex coordinates are z_k = x_k + i y_k.
enum class Var : int { x1 = 0, x2, x3, y1, y2, y3 };

inline constexpr int index(Var v) { return static_cast<int>(v); }
inline constexpr Var x_var(int k) { return static_cast<Var>(k); }     // k = 0,1,2
inline constexpr Var y_var(int k) { return static_cast<Var>(3 + k); } // k = 0,1,2

inline const char* name(Var v)
{
    static constexpr const char* names[] = {"x1", "x2", "x3", "y1", "y2", "y3"};
    return names[index(v)];
}

/// Exponents of a monomial in (x1, x2, x3, y1, y2, y3).
///
/// Ordered graded-lexicographically: lower total degree first, ties broken
/// so that higher powers of earlier variables come first
/// (1, x1, x2, x3, y1, y2, y3, x1^2, x1 x2, ...).
struct MultiIndex {
    std::array<std::uint8_t, num_vars> exps{};

    constexpr MultiIndex() = default;
    constexpr explicit MultiIndex(std::array<std::uint8_t, num_vars> e) : exps(e) {}

    static constexpr MultiIndex unit(Var v, int power = 1)
    {
        MultiIndex m;
        m.exps[index(v)] = static_cast<std::uint8_t>(power);
        return m;
    }

    constexpr int degree() const
    {
        int d = 0;
        for (auto e : exps)
            d += e;
        return d;
    }

    constexpr int operator[](Var v) const { return exps[index(v)]; }

    constexpr MultiIndex operator+(const MultiIndex& o) const
    {
        MultiIndex r;
        for (int i = 0; i < num_vars; ++i)
            r.exps[i] = static_cast<std::uint8_t>(exps[i] + o.exps[i]);
        return r;
    }

    constexpr bool operator==(const MultiIndex&) const = default;

    constexpr bool operator<(const MultiIndex& o) const
    {
        const int da = degree();
        const int db = o.degree();
        if (da != db)
            return da < db;
        for (int i = 0; i < num_vars; ++i)
            if (exps[i] != o.exps[i])
                return exps[i] > o.exps[i];
        return false;
    }

    std::string str() const
    {
        std::string s = "(";
        for (int i = 0; i < num_vars; ++i) {
            if (i)
                s += ',';
            s += std::to_string(exps[i]);
        }
        return s + ")";
    }
};

} // namespace slag::jets
