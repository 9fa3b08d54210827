#pragma once

#include <string>

#include "selfadjoint/expression.hpp"

namespace selfadjoint {

// An evolution equation F = 0 with F = w_t + S, solved for the first time
// derivative: the w_t coefficient is exactly 1 and the spatial part S carries
// no t-derivative jets.
struct EvolutionEquation {
    std::string dep;
    Expression F;
    Expression spatial; // S = F - w_t
    int order = 0;      // max x-order of S

    static EvolutionEquation make(const std::string& dep, const Expression& F);
};

} // namespace selfadjoint
