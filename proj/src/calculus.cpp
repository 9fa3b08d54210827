#include "selfadjoint/calculus.hpp"

#include <optional>

#include "selfadjoint/errors.hpp"

namespace selfadjoint {

EvolutionEquation EvolutionEquation::make(const std::string& dep, const Expression& F) {
    JetCoordinate wt{dep, 1, 0};
    if (!(F.coefficient_of(Factor(wt)) == Rational(1)))
        throw InputError("equation must have the form " + dep + "_t + S with unit " + dep +
                         "_t coefficient");
    EvolutionEquation eq;
    eq.dep = dep;
    eq.F = F;
    eq.spatial = F - jet(dep, 1, 0);
    if (eq.spatial.contains_t_jet())
        throw InputError("spatial part of an evolution equation must not contain t-derivatives");
    eq.order = eq.spatial.max_x_order(dep);
    return eq;
}

Expression total_derivative(const Expression& e, Indep v) {
    // D acts per term by the product rule; each factor's derivative is either
    // a raised jet or the chain-rule image of an atom.
    Expression result;
    for (const auto& t : e.terms()) {
        for (size_t k = 0; k < t.factors.size(); ++k) {
            Expression d;
            if (const auto* j = std::get_if<JetCoordinate>(&t.factors[k].factor)) {
                JetCoordinate raised = *j;
                (v == Indep::t ? raised.dt : raised.dx) += 1;
                if (raised.total_order() > kOrderCap)
                    throw EngineError("total derivative would exceed jet order cap at " +
                                      jet_str(*j));
                d = Expression::from_factor(raised);
            } else {
                const auto& a = std::get<FunctionAtom>(t.factors[k].factor);
                if (v == Indep::t)
                    d = atom_derivative(a, 't') + atom_derivative(a, 'u') * jet("u", 1, 0);
                else
                    d = atom_derivative(a, 'u') * jet("u", 0, 1);
            }
            if (d.is_zero())
                continue;
            Monomial rest;
            rest.coeff = t.coeff * Rational(t.factors[k].exp);
            for (size_t i = 0; i < t.factors.size(); ++i) {
                FactorPower fp = t.factors[i];
                if (i == k && --fp.exp == 0)
                    continue;
                rest.factors.push_back(std::move(fp));
            }
            result += Expression::from_monomials({std::move(rest)}) * d;
        }
    }
    return result;
}

Expression total_derivative_n(const Expression& e, Indep v, int n) {
    Expression r = e;
    for (int i = 0; i < n; ++i)
        r = total_derivative(r, v);
    return r;
}

Expression euler_lagrange(const Expression& L, const std::string& dep) {
    auto orders = L.jets_of(dep);
    orders.insert({0, 0}); // the atom chain contributes through the base slot
    Expression result;
    for (const auto& [i, j] : orders) {
        Expression g = partial_derivative(L, JetCoordinate{dep, i, j});
        if (g.is_zero())
            continue;
        g = total_derivative_n(g, Indep::t, i);
        g = total_derivative_n(g, Indep::x, j);
        if ((i + j) % 2 != 0)
            g = -g;
        result += g;
    }
    return result;
}

void EvolutionSystem::add(const std::string& dep, Expression spatial_part) {
    if (spatial_.count(dep))
        throw InputError("system already governs " + dep);
    if (spatial_part.contains_t_jet())
        throw InputError("spatial part for " + dep + " contains a t-derivative jet");
    spatial_.emplace(dep, std::move(spatial_part));
}

Expression EvolutionSystem::rhs(const std::string& dep) const {
    return -spatial_.at(dep);
}

namespace {

// Highest-t-order governed jet in e, ties broken toward higher x-order.
std::optional<JetCoordinate> reduction_target(const Expression& e, const EvolutionSystem& sys) {
    std::optional<JetCoordinate> best;
    for (const auto& t : e.terms()) {
        for (const auto& fp : t.factors) {
            const auto* j = std::get_if<JetCoordinate>(&fp.factor);
            if (!j || j->dt < 1 || !sys.governs(j->dep))
                continue;
            if (!best || j->dt > best->dt || (j->dt == best->dt && j->dx > best->dx) ||
                (j->dt == best->dt && j->dx == best->dx && j->dep > best->dep))
                best = *j;
        }
    }
    return best;
}

} // namespace

Expression reduce_modulo(const Expression& e, const EvolutionSystem& sys) {
    Expression cur = e;
    std::map<std::tuple<std::string, int, int>, Expression> cache;
    // The max t-order strictly decreases across substitutions, so this always
    // terminates; the budget only guards against an engine bug.
    for (int step = 0; step < 4096; ++step) {
        auto target = reduction_target(cur, sys);
        if (!target)
            return cur;
        auto key = std::make_tuple(target->dep, target->dt, target->dx);
        auto it = cache.find(key);
        if (it == cache.end()) {
            Expression value = total_derivative_n(sys.rhs(target->dep), Indep::t, target->dt - 1);
            value = total_derivative_n(value, Indep::x, target->dx);
            it = cache.emplace(key, std::move(value)).first;
        }
        cur = cur.substitute_jet(*target, it->second);
    }
    throw EngineError("reduction step budget exceeded");
}

PointSymmetry PointSymmetry::make(Expression xi, Expression tau, Expression eta) {
    for (const Expression* e : {&xi, &tau, &eta}) {
        for (const std::string dep : {"u", "v"}) {
            for (const auto& [dt, dx] : e->jets_of(dep)) {
                if (dt + dx > 0)
                    throw InputError(
                        "point symmetry coefficients must not contain derivative coordinates");
            }
        }
    }
    return PointSymmetry{std::move(xi), std::move(tau), std::move(eta)};
}

std::map<std::pair<int, int>, Expression> prolong(const PointSymmetry& sym, int order) {
    if (order > kOrderCap - 1)
        throw EngineError("prolongation order exceeds cap");
    std::map<std::pair<int, int>, Expression> zeta;
    zeta[{0, 0}] = sym.eta;
    auto u_jet = [](int i, int j) { return jet("u", i, j); };
    for (int total = 1; total <= order; ++total) {
        for (int i = total; i >= 0; --i) {
            int j = total - i;
            if (i > 0) {
                // step in t from (i-1, j)
                const Expression& prev = zeta.at({i - 1, j});
                zeta[{i, j}] = total_derivative(prev, Indep::t) -
                               u_jet(i, j) * total_derivative(sym.tau, Indep::t) -
                               u_jet(i - 1, j + 1) * total_derivative(sym.xi, Indep::t);
            } else {
                // step in x from (0, j-1)
                const Expression& prev = zeta.at({0, j - 1});
                zeta[{0, j}] = total_derivative(prev, Indep::x) -
                               u_jet(1, j - 1) * total_derivative(sym.tau, Indep::x) -
                               u_jet(0, j) * total_derivative(sym.xi, Indep::x);
            }
        }
    }
    return zeta;
}

Expression check_point_symmetry(const EvolutionEquation& eq, const PointSymmetry& sym) {
    int max_order = 0;
    for (const auto& [i, j] : eq.F.jets_of("u"))
        max_order = std::max(max_order, i + j);
    auto zeta = prolong(sym, max_order);

    Expression pr = sym.xi * partial_derivative(eq.F, Indep::x) +
                    sym.tau * partial_derivative(eq.F, Indep::t) +
                    sym.eta * partial_derivative(eq.F, JetCoordinate{"u", 0, 0});
    for (const auto& [ij, z] : zeta) {
        if (ij.first + ij.second == 0)
            continue;
        pr += z * partial_derivative(eq.F, JetCoordinate{"u", ij.first, ij.second});
    }

    EvolutionSystem sys;
    sys.add(eq);
    return reduce_modulo(pr, sys);
}

} // namespace selfadjoint
