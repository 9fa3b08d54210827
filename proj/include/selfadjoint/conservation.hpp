#pragma once

#include "selfadjoint/adjointness.hpp"
#include "selfadjoint/calculus.hpp"
#include "selfadjoint/equation.hpp"

namespace selfadjoint {

// Evolutionary form of a symmetry: W = eta - tau*u_t - xi*u_x.
struct Characteristic {
    Expression W;
};

Characteristic characteristic(const PointSymmetry& sym, const std::string& dep = "u");

struct ConservedVector {
    Expression C0;
    Expression C1;
    bool contains_nonlocal = false;
};

ConservedVector make_conserved_vector(Expression C0, Expression C1);

// Conserved vector of the pair {equation, adjoint} built from a symmetry:
//   C0 = tau*L + W * dL/du_t
//   C1 = xi*L + sum_{s=0}^{n-1} D_x^s(W) * sum_{r>s} (-1)^(r-s-1) D_x^(r-s-1) dL/du_(x^r)
// with L = v*F. For n = 4 this adds one more integration-by-parts layer to
// the third-order template.
ConservedVector conserved_vector(const EvolutionEquation& eq, const PointSymmetry& sym);

// Substitutes v = u, eliminating the nonlocal variable.
ConservedVector restrict_to_physical(const ConservedVector& cv);

// Gauge-equivalent simplification: moves exact x-derivatives out of C0 via
// (C0, C1) -> (C0 - D_x theta, C1 + D_t theta), reduces both components modulo
// the equation, and drops additive closed-form constants from C1. theta is
// found by a per-monomial antiderivative match; terms it cannot match are
// left in place.
ConservedVector normalize_conserved(const ConservedVector& cv, const EvolutionEquation& eq);

// D_t C0 + D_x C1 reduced modulo the system; zero iff cv is conserved on
// solutions. A nonlocal vector needs the system to govern v as well.
Expression verify_divergence(const ConservedVector& cv, const EvolutionSystem& sys);

} // namespace selfadjoint
