#pragma once

#include <map>
#include <string>
#include <utility>

#include "slag/error.hpp"
#include "slag/jets/complex_jet.hpp"
#include "slag/jets/det.hpp"
#include "slag/jets/jet.hpp"

namespace slag::ck {

using jets::ComplexJet;
using jets::Jet;
using jets::JetMatrix;
using jets::Var;

/// h = A + iB. A is meant to be symmetric, B antisymmetric; both are stored in
/// full so that any asymmetry left by the construction stays visible.
template <class S>
struct HermitianJet {
    JetMatrix<S> A;
    JetMatrix<S> B;

    int order() const { return A[0][0].order(); }
    const typename Jet<S>::Point& base_point() const { return A[0][0].base_point(); }

    bool operator==(const HermitianJet&) const = default;
};

/// Extension of the free entries during steps 1 and 2. Entries without a
/// rule stay constant in the step's evolution variable; an entry with a rule
/// takes the evolution-variable dependence of the given jet. Keys are 1-based
/// (i, j) with i <= j.
template <class S>
struct ExtensionPolicy {
    std::map<std::pair<int, int>, Jet<S>> step1;
    std::map<std::pair<int, int>, Jet<S>> step2;
    std::string name = "constant";

    static bool free_in_step1(int i, int j)
    {
        return (i == 2 && j == 2) || (i == 3 && j == 3) || (i == 1 && j == 2) || (i == 1 && j == 3) ||
               (i == 2 && j == 3);
    }

    static bool free_in_step2(int i, int j) { return (i == 3 && j == 3) || (i == 2 && j == 3); }

    void set(int step, int i, int j, Jet<S> value)
    {
        if (i > j)
            std::swap(i, j);
        if (step == 1 && free_in_step1(i, j))
            step1[{i, j}] = std::move(value);
        else if (step == 2 && free_in_step2(i, j))
            step2[{i, j}] = std::move(value);
        else
            throw SolverError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                              ") is not free in step " + std::to_string(step));
    }
};

/// Solved Calabi-Yau data near the slice.
template <class S>
struct CYStructureJet {
    HermitianJet<S> h;
    ComplexJet<S> gamma;
    JetMatrix<S> g;
    ExtensionPolicy<S> policy;

    int order() const { return h.order(); }
};

} // namespace slag::ck
