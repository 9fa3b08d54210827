#include "selfadjoint/adjointness.hpp"

#include <algorithm>

#include "selfadjoint/errors.hpp"

namespace selfadjoint {

FormalLagrangian formal_lagrangian(const EvolutionEquation& eq) {
    if (eq.dep == "v" || eq.F.contains_dep("v"))
        throw InputError("equation already uses the adjoint variable v");
    FormalLagrangian fl;
    fl.dep = eq.dep;
    fl.L = jet("v", 0, 0) * eq.F;
    return fl;
}

AdjointResult adjoint(const EvolutionEquation& eq) {
    if (eq.order > 4)
        throw InputError("adjoint construction supports spatial order <= 4");
    AdjointResult r;
    r.raw = euler_lagrange(formal_lagrangian(eq).L, eq.dep);
    Rational c = r.raw.coefficient_of(Factor(JetCoordinate{"v", 1, 0}));
    r.sign_normalized = c.is_zero() ? r.raw : r.raw.scaled(c.inverse());
    return r;
}

EvolutionSystem adjoint_pair_system(const EvolutionEquation& eq) {
    Expression a = adjoint(eq).sign_normalized;
    EvolutionSystem sys;
    sys.add(eq);
    sys.add(EvolutionEquation::make("v", a));
    return sys;
}

SelfAdjointVerdict self_adjoint_check(const EvolutionEquation& eq) {
    Expression restricted = adjoint(eq).raw.substitute_dependent("v", eq.dep);
    SelfAdjointVerdict v;
    v.phi = Expression::constant(restricted.coefficient_of(Factor(JetCoordinate{eq.dep, 1, 0})));
    v.residual = restricted - v.phi * eq.F;
    v.is_self_adjoint = v.residual.is_zero();
    return v;
}

namespace {

// Splits a monomial into its positive-order jet part and the rest.
void split_jet_part(const Monomial& m, std::vector<FactorPower>& jets, Monomial& rest) {
    rest.coeff = m.coeff;
    for (const auto& fp : m.factors) {
        const auto* j = std::get_if<JetCoordinate>(&fp.factor);
        if (j && !j->is_base())
            jets.push_back(fp);
        else
            rest.factors.push_back(fp);
    }
}

Expression content_normalized(const Expression& e) {
    if (e.is_zero())
        return e;
    // Leading term = greatest in the canonical order = last of the sorted list.
    return e.scaled(e.terms().back().coeff.inverse());
}

} // namespace

ConditionSystem condition_system(const EvolutionEquation& eq) {
    Expression g = adjoint(eq).raw.substitute_dependent("v", eq.dep) + eq.F;

    std::vector<std::pair<std::vector<FactorPower>, Expression>> groups;
    for (const auto& m : g.terms()) {
        std::vector<FactorPower> jets;
        Monomial rest;
        split_jet_part(m, jets, rest);
        auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& grp) {
            return compare_factors(grp.first, jets) == 0;
        });
        Expression part = Expression::from_monomials({rest});
        if (it == groups.end())
            groups.emplace_back(std::move(jets), std::move(part));
        else
            it->second += part;
    }

    std::vector<Expression> conditions;
    for (auto& [jets, coeff] : groups) {
        if (coeff.is_zero())
            continue;
        Expression c = content_normalized(coeff);
        bool dup = std::any_of(conditions.begin(), conditions.end(),
                               [&](const Expression& e) { return e == c; });
        if (!dup)
            conditions.push_back(std::move(c));
    }
    std::sort(conditions.begin(), conditions.end(),
              [](const Expression& a, const Expression& b) { return a.compare(b) < 0; });
    return ConditionSystem{std::move(conditions)};
}

ConditionSystem condition_system(const EquationFamily& family) {
    return condition_system(family.eq);
}

std::vector<Expression> verify_substitution(const ConditionSystem& cs,
                                            const std::map<std::string, Expression>& bindings) {
    std::vector<Expression> residuals;
    residuals.reserve(cs.conditions.size());
    for (const Expression& c : cs.conditions) {
        Expression r = c;
        // Bindings may reference other bound atoms; iterate to a fixpoint with
        // a small budget so a cyclic set fails loudly.
        int rounds = 0;
        auto bound = [&](const Expression& e) {
            return std::any_of(bindings.begin(), bindings.end(),
                               [&](const auto& kv) { return e.references_atom(kv.first); });
        };
        while (bound(r)) {
            if (++rounds > 16)
                throw InputError("bindings form a substitution cycle");
            r = r.substitute_atoms(bindings);
        }
        residuals.push_back(std::move(r));
    }
    return residuals;
}

// --- family builders -----------------------------------------------------------

namespace {

struct Slot {
    const char* name;
    int dx1, exp1; // first jet factor
    int dx2, exp2; // optional second jet factor (exp2 == 0 means none)
};

// u_t + f u_xxxx + g u_x u_xxx + r u_xxx + h u_xx^2 + d u_x^2 u_xx
//     + p u_xx + q u_x^2 + a u_x + b
constexpr Slot kSlots[] = {
    {"f", 4, 1, 0, 0}, {"g", 3, 1, 1, 1}, {"r", 3, 1, 0, 0}, {"h", 2, 2, 0, 0},
    {"d", 2, 1, 1, 2}, {"p", 2, 1, 0, 0}, {"q", 1, 2, 0, 0}, {"a", 1, 1, 0, 0},
    {"b", 0, 0, 0, 0},
};

EquationFamily build_family(const std::vector<std::pair<std::string, int>>& slots, bool with_t) {
    EquationFamily fam;
    fam.ctx.declare_depvar("u");
    Expression F = jet("u", 1, 0);
    for (const auto& [name, sign] : slots) {
        auto it = std::find_if(std::begin(kSlots), std::end(kSlots),
                               [&](const Slot& s) { return name == s.name; });
        fam.ctx.declare_func(name, with_t, true);
        Expression term = fam.ctx.atom(name).scaled(Rational(sign));
        if (it->exp1 > 0)
            term *= jet("u", 0, it->dx1).pow(it->exp1);
        if (it->exp2 > 0)
            term *= jet("u", 0, it->dx2).pow(it->exp2);
        F += term;
    }
    fam.eq = EvolutionEquation::make("u", F);
    return fam;
}

} // namespace

EquationFamily EquationFamily::full_time_dependent() {
    return build_family(
        {{"f", 1}, {"g", 1}, {"r", 1}, {"h", 1}, {"d", 1}, {"p", 1}, {"q", 1}, {"a", 1}, {"b", 1}},
        true);
}

EquationFamily EquationFamily::time_independent() {
    return build_family(
        {{"f", 1}, {"g", 1}, {"r", 1}, {"h", 1}, {"d", 1}, {"p", 1}, {"q", 1}, {"a", 1}, {"b", 1}},
        false);
}

EquationFamily EquationFamily::time_independent_core() {
    return build_family({{"f", 1}, {"g", 1}, {"h", 1}, {"d", 1}, {"p", -1}, {"q", -1}}, false);
}

EquationFamily EquationFamily::pure_fourth_order() {
    return build_family({{"f", 1}}, false);
}

EquationFamily EquationFamily::transport() {
    return build_family({{"a", 1}, {"b", 1}}, true);
}

} // namespace selfadjoint
