#pragma once

#include <array>

#include "slag/jets/jet.hpp"

namespace slag::jets {

template <class S>
using JetMatrix = std::array<std::array<Jet<S>, 3>, 3>;

/// Leibniz expansion of a 3x3 determinant of jets.
template <class S>
Jet<S> det3_jet(const JetMatrix<S>& m)
{
    const auto& a = m[0];
    const auto& b = m[1];
    const auto& c = m[2];
    return a[0] * (b[1] * c[2]) - a[0] * (b[2] * c[1]) - a[1] * (b[0] * c[2]) +
           a[1] * (b[2] * c[0]) + a[2] * (b[0] * c[1]) - a[2] * (b[1] * c[0]);
}

} // namespace slag::jets
