#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "selfadjoint/calculus.hpp"
#include "selfadjoint/context.hpp"
#include "selfadjoint/conservation.hpp"
#include "selfadjoint/equation.hpp"

namespace selfadjoint {

// One parsed problem file: a declarations block followed by optional
// [equation], [symmetry], [vector] and [bindings] sections. Auxiliary files
// (--bind / --symmetry / --vector) use the same syntax; their declarations
// are merged and their sections replace the main file's.
struct ProblemFile {
    Context ctx;
    std::optional<EvolutionEquation> equation;
    std::optional<PointSymmetry> symmetry;
    std::optional<ConservedVector> vector;
    std::vector<std::pair<std::string, Expression>> bindings;

    const EvolutionEquation& require_equation() const;
    const PointSymmetry& require_symmetry() const;
    const ConservedVector& require_vector() const;
};

// Parses named texts (name used in error messages); later texts override
// earlier ones section-wise.
ProblemFile parse_problem(const std::vector<std::pair<std::string, std::string>>& sources);

// Reads the files and parses them (main file first, then auxiliaries).
ProblemFile load_problem(const std::string& path, const std::vector<std::string>& aux_paths = {});

} // namespace selfadjoint
