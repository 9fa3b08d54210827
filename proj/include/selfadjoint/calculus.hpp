#pragma once

#include <map>
#include <string>
#include <utility>

#include "selfadjoint/equation.hpp"
#include "selfadjoint/expression.hpp"

namespace selfadjoint {

// Total derivative on the jet space: D_v e = de/dv + sum over jets w of
// (de/dw) * (w raised by one order in v). Linear, satisfies Leibniz, honors
// derivative links on atoms.
Expression total_derivative(const Expression& e, Indep v);
Expression total_derivative_n(const Expression& e, Indep v, int n);

// Variational derivative dL/d(dep): sum over jets (i,j) of dep present in L
// of (-1)^(i+j) D_t^i D_x^j (dL/d dep_(i,j)). The formally infinite sum is
// truncated at the maximal order actually present, where all further terms
// vanish identically.
Expression euler_lagrange(const Expression& L, const std::string& dep);

// A set of evolution equations w_t = -(spatial part), at most one per
// dependent variable, used for reduction "on solutions".
class EvolutionSystem {
  public:
    void add(const std::string& dep, Expression spatial_part);
    void add(const EvolutionEquation& eq) { add(eq.dep, eq.spatial); }

    bool governs(const std::string& dep) const { return spatial_.count(dep) > 0; }
    // Right-hand side of dep_t = rhs.
    Expression rhs(const std::string& dep) const;

  private:
    std::map<std::string, Expression> spatial_;
};

// Canonical representative of e modulo the system and its differential
// consequences: every t-derivative jet of a governed variable is rewritten
// via D_x^j D_t^(i-1) of the equation's right-hand side until none remain.
Expression reduce_modulo(const Expression& e, const EvolutionSystem& sys);

// A point symmetry generator X = xi d/dx + tau d/dt + eta d/du with
// coefficients free of positive-order jets.
struct PointSymmetry {
    Expression xi;
    Expression tau;
    Expression eta;

    static PointSymmetry make(Expression xi, Expression tau, Expression eta);
};

// Coefficients zeta_(i,j) of the prolonged generator for all jets of u up to
// `order`, via the standard recursion
//   zeta_(i,j)+e_k = D_k zeta_(i,j) - u_(i,j)+e_t * D_k tau - u_(i,j)+e_x * D_k xi
// seeded with zeta_(0,0) = eta.
std::map<std::pair<int, int>, Expression> prolong(const PointSymmetry& sym, int order);

// Residual of the infinitesimal invariance condition: pr X(F) reduced modulo
// the equation. Zero iff sym generates a point symmetry.
Expression check_point_symmetry(const EvolutionEquation& eq, const PointSymmetry& sym);

} // namespace selfadjoint
