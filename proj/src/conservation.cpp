#include "selfadjoint/conservation.hpp"

#include "selfadjoint/errors.hpp"

namespace selfadjoint {

Characteristic characteristic(const PointSymmetry& sym, const std::string& dep) {
    return Characteristic{sym.eta - sym.tau * jet(dep, 1, 0) - sym.xi * jet(dep, 0, 1)};
}

ConservedVector make_conserved_vector(Expression C0, Expression C1) {
    ConservedVector cv;
    cv.contains_nonlocal = C0.contains_dep("v") || C1.contains_dep("v");
    cv.C0 = std::move(C0);
    cv.C1 = std::move(C1);
    return cv;
}

ConservedVector conserved_vector(const EvolutionEquation& eq, const PointSymmetry& sym) {
    if (eq.order > 4)
        throw InputError("conserved vector template supports spatial order <= 4");
    Expression L = formal_lagrangian(eq).L;
    Expression W = characteristic(sym, eq.dep).W;

    Expression C0 = sym.tau * L + W * partial_derivative(L, JetCoordinate{eq.dep, 1, 0});

    Expression C1 = sym.xi * L;
    const int n = eq.order;
    for (int s = 0; s < n; ++s) {
        Expression bracket;
        for (int r = s + 1; r <= n; ++r) {
            Expression term = total_derivative_n(
                partial_derivative(L, JetCoordinate{eq.dep, 0, r}), Indep::x, r - s - 1);
            if ((r - s - 1) % 2 != 0)
                term = -term;
            bracket += term;
        }
        C1 += total_derivative_n(W, Indep::x, s) * bracket;
    }
    return make_conserved_vector(std::move(C0), std::move(C1));
}

ConservedVector restrict_to_physical(const ConservedVector& cv) {
    ConservedVector out;
    out.C0 = cv.C0.substitute_dependent("v", "u");
    out.C1 = cv.C1.substitute_dependent("v", "u");
    out.contains_nonlocal = false;
    return out;
}

namespace {

// Antiderivative heuristic: for a monomial m, try lowering one first-power
// derivative factor by one x-order; accept when D_x of the candidate is a
// single term proportional to m. Handles u^k*u_x -> u^(k+1)/(k+1) and
// w*D_x(w) -> w^2/2 in one rule.
Expression antiderivative_of(const Monomial& m) {
    for (size_t k = 0; k < m.factors.size(); ++k) {
        const auto* j = std::get_if<JetCoordinate>(&m.factors[k].factor);
        if (!j || j->dx < 1 || m.factors[k].exp != 1)
            continue;
        std::vector<FactorPower> lowered = m.factors;
        lowered[k].factor = JetCoordinate{j->dep, j->dt, j->dx - 1};
        Expression candidate = Expression::from_monomials({Monomial{Rational(1), lowered}});
        Expression image = total_derivative(candidate, Indep::x);
        if (image.terms().size() != 1)
            continue;
        if (compare_factors(image.terms().front().factors, m.factors) != 0)
            continue;
        return candidate.scaled(m.coeff / image.terms().front().coeff);
    }
    return {};
}

bool is_closed_form_constant(const Monomial& m) {
    for (const auto& fp : m.factors) {
        if (is_jet(fp.factor))
            return false;
        if (!std::get<FunctionAtom>(fp.factor).is_constant())
            return false;
    }
    return true;
}

} // namespace

ConservedVector normalize_conserved(const ConservedVector& cv, const EvolutionEquation& eq) {
    if (cv.contains_nonlocal)
        throw InputError("normalize_conserved expects a nonlocal-free vector");

    Expression theta;
    for (const auto& m : cv.C0.terms())
        theta += antiderivative_of(m);

    Expression C0 = cv.C0 - total_derivative(theta, Indep::x);
    Expression C1 = cv.C1 + total_derivative(theta, Indep::t);

    EvolutionSystem sys;
    sys.add(eq);
    C0 = reduce_modulo(C0, sys);
    C1 = reduce_modulo(C1, sys);

    std::vector<Monomial> kept;
    for (const auto& m : C1.terms())
        if (!is_closed_form_constant(m))
            kept.push_back(m);
    C1 = Expression::from_monomials(std::move(kept));

    return make_conserved_vector(std::move(C0), std::move(C1));
}

Expression verify_divergence(const ConservedVector& cv, const EvolutionSystem& sys) {
    if (cv.contains_nonlocal && !sys.governs("v"))
        throw InputError("a nonlocal vector must be verified against the equation and its adjoint");
    Expression div = total_derivative(cv.C0, Indep::t) + total_derivative(cv.C1, Indep::x);
    return reduce_modulo(div, sys);
}

} // namespace selfadjoint
