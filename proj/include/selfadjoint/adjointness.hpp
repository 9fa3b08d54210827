#pragma once

#include <map>
#include <string>
#include <vector>

#include "selfadjoint/calculus.hpp"
#include "selfadjoint/context.hpp"
#include "selfadjoint/equation.hpp"

namespace selfadjoint {

// L = v * F, the Lagrangian obtained by adjoining the nonlocal variable v.
struct FormalLagrangian {
    Expression L;
    std::string dep = "u";
    std::string adjoint_dep = "v";
};

FormalLagrangian formal_lagrangian(const EvolutionEquation& eq);

struct AdjointResult {
    Expression raw;             // F* = dL/du exactly
    Expression sign_normalized; // scaled so the v_t coefficient is +1
};

// Adjoint equation F* = 0 of F = 0.
AdjointResult adjoint(const EvolutionEquation& eq);

// The adjoint read as an evolution equation for v, for reductions modulo the
// pair {equation, adjoint}.
EvolutionSystem adjoint_pair_system(const EvolutionEquation& eq);

struct SelfAdjointVerdict {
    Expression phi;      // multiplier, forced by the u_t coefficient
    Expression residual; // F*|_{v=u} - phi*F
    bool is_self_adjoint = false;
};

// Tests F*|_{v=u} = phi * F. phi is read off the u_t coefficient rather than
// solved for, which pins phi = -1 for this equation class.
SelfAdjointVerdict self_adjoint_check(const EvolutionEquation& eq);

// Conditions on the coefficient functions that make an equation self-adjoint:
// the coefficients of every distinct power product of positive-order jets in
// F*|_{v=u} + F, each required to vanish identically. Deduplicated, sorted,
// and scaled so the leading rational coefficient is 1.
struct ConditionSystem {
    std::vector<Expression> conditions;
};

ConditionSystem condition_system(const EvolutionEquation& eq);

// The fourth-order evolution family
//   u_t + f u_xxxx + g u_x u_xxx + r u_xxx + h u_xx^2 + d u_x^2 u_xx
//       + p u_xx + q u_x^2 + a u_x + b = 0
// with opaque coefficient functions. Helpers build the sub-families studied
// by the engine; absent slots are the zero expression.
struct EquationFamily {
    Context ctx;
    EvolutionEquation eq;

    // All nine slots as functions of (t,u).
    static EquationFamily full_time_dependent();
    // All nine slots as functions of u only.
    static EquationFamily time_independent();
    // f,g,h,d,p,q of u only, with the p and q terms entering negatively.
    static EquationFamily time_independent_core();
    // u_t + f(u) u_xxxx.
    static EquationFamily pure_fourth_order();
    // u_t + a(t,u) u_x + b(t,u).
    static EquationFamily transport();
};

ConditionSystem condition_system(const EquationFamily& family);

// Substitutes bound coefficient atoms (and their formal derivatives) into the
// conditions and returns the per-condition residuals; all zero iff the
// parameterization satisfies the system.
std::vector<Expression> verify_substitution(const ConditionSystem& cs,
                                            const std::map<std::string, Expression>& bindings);

} // namespace selfadjoint
