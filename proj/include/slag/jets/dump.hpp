#pragma once

#include <sstream>
#include <string>

#include "slag/jets/complex_jet.hpp"
#include "slag/jets/jet.hpp"

namespace slag::jets {

/// One "multi-index : coefficient" line per stored term, graded-lex order.
template <class S>
std::string to_text(const Jet<S>& j)
{
    std::ostringstream os;
    for (const auto& [m, c] : j.terms())
        os << m.str() << " : " << ScalarTraits<S>::to_string(c) << '\n';
    return os.str();
}

} // namespace slag::jets
