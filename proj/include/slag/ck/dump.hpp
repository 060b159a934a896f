#pragma once

#include <string>

#include "slag/ck/structure.hpp"
#include "slag/jets/dump.hpp"

namespace slag::ck {

/// Text dump: one "[name]" header per entry followed by its jet lines.
template <class S>
std::string to_text(const CYStructureJet<S>& s)
{
    std::string out;
    const auto section = [&out](const std::string& name, const Jet<S>& j) {
        out += "[" + name + "]\n" + jets::to_text(j);
    };
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            section("A" + std::to_string(i + 1) + std::to_string(j + 1), s.h.A[i][j]);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            section("B" + std::to_string(i + 1) + std::to_string(j + 1), s.h.B[i][j]);
    section("gamma.re", s.gamma.re);
    section("gamma.im", s.gamma.im);
    return out;
}

} // namespace slag::ck
