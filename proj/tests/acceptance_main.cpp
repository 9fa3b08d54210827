// Acceptance suite: exercises every headline result end to end and prints one
// pass/fail line per criterion. All comparisons are exact; a single nonzero
// residual anywhere is a failure. Returns nonzero when any criterion fails.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "selfadjoint/adjointness.hpp"
#include "selfadjoint/conservation.hpp"
#include "selfadjoint/parser.hpp"
#include "selfadjoint/problem.hpp"
#include "support/gen.hpp"

using namespace selfadjoint;

namespace {

struct Harness {
    int passed = 0;
    int failed = 0;

    void criterion(int n, const std::string& label, bool ok) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << n << ". " << label << "\n";
        (ok ? passed : failed) += 1;
    }
};

struct Fixture {
    Context ctx;
    EvolutionEquation eq;
};

Fixture fixture(const std::string& decls, const std::string& equation) {
    Fixture fx;
    parse_declarations(decls, fx.ctx);
    fx.eq = EvolutionEquation::make("u", parse_expression(equation, fx.ctx));
    return fx;
}

Fixture kdv_tdep() {
    return fixture("depvar u; func f(t); func g(t); func F(t); link F' = f;",
                   "u_t + f(t)*u*u_x + g(t)*u_xxx");
}

Fixture kdv() { return fixture("depvar u; func T(t); link T' = 1;", "u_t + u*u_x + u_xxx"); }

Fixture burgers_tdep() {
    return fixture("depvar u; func f(t); func F(t); link F' = f;", "u_t + f(t)*u*u_x");
}

Fixture burgers() { return fixture("depvar u; func T(t); link T' = 1;", "u_t + u*u_x"); }

Fixture quartic_selfadj() { return fixture("depvar u; const a;", "u_t + (a/u)*u_xxxx"); }

PointSymmetry shift_symmetry(const Fixture& fx, const std::string& xi_name) {
    return PointSymmetry::make(parse_expression(xi_name, fx.ctx), Expression(),
                               Expression::constant(Rational(1)));
}

std::map<std::string, Expression> bindings_in(Context ctx, const std::string& extra_decls,
                                              const std::vector<std::pair<std::string, std::string>>& texts) {
    if (!extra_decls.empty())
        parse_declarations(extra_decls, ctx);
    std::map<std::string, Expression> out;
    for (const auto& [name, text] : texts)
        out.emplace(name, parse_expression(text, ctx));
    return out;
}

bool all_zero(const std::vector<Expression>& residuals) {
    for (const auto& r : residuals)
        if (!r.is_zero())
            return false;
    return true;
}

bool some_nonzero(const std::vector<Expression>& residuals) { return !all_zero(residuals); }

// --- criteria ------------------------------------------------------------------

bool criterion_adjoint_reproduction() {
    std::ifstream in(std::string(SELFADJOINT_FIXTURES_DIR) + "/golden/adjoint_kdv_tdep_normalized.txt");
    if (!in)
        return false;
    std::string golden;
    std::getline(in, golden);
    return adjoint(kdv_tdep().eq).sign_normalized.str() == golden;
}

bool criterion_family_conditions() {
    EquationFamily fam = EquationFamily::full_time_dependent();
    ConditionSystem cs = condition_system(fam);
    const std::string cdecls = "func c1(t); func c2(t); func c3(t); func c4(t);";

    const std::vector<std::pair<std::string, std::string>> solution = {
        {"g", "h(t,u) + f(t,u)/u + f_u(t,u)"},
        {"d", "c1(t)/u + h(t,u)/u + h_u(t,u)"},
        {"q", "p(t,u)/u + p_u(t,u)"},
        {"r", "c2(t) + c3(t)/u"},
        {"b", "c4(t)/u"}};
    if (!all_zero(verify_substitution(cs, bindings_in(fam.ctx, cdecls, solution))))
        return false;

    // dropping any single structural piece must break at least one condition
    const std::vector<std::pair<std::string, std::string>> perturbations = {
        {"g", "h(t,u) + f(t,u)/u"},
        {"d", "c1(t)/u + h(t,u)/u"},
        {"q", "p(t,u)/u"},
        {"r", "c2(t) + c3(t)*u"},
        {"b", "c4(t)"}};
    for (const auto& bad : perturbations) {
        auto set = solution;
        for (auto& kv : set)
            if (kv.first == bad.first)
                kv.second = bad.second;
        if (!some_nonzero(verify_substitution(cs, bindings_in(fam.ctx, cdecls, set))))
            return false;
    }
    return true;
}

bool criterion_subfamilies() {
    // time-independent nine-slot family, constants c1..c4
    {
        EquationFamily fam = EquationFamily::time_independent();
        ConditionSystem cs = condition_system(fam);
        const std::string cdecls = "const c1; const c2; const c3; const c4;";
        auto pass = bindings_in(fam.ctx, cdecls,
                                {{"g", "h(u) + f(u)/u + f_u(u)"},
                                 {"d", "c1/u + h(u)/u + h_u(u)"},
                                 {"q", "p(u)/u + p_u(u)"},
                                 {"r", "c2 + c3/u"},
                                 {"b", "c4/u"}});
        if (!all_zero(verify_substitution(cs, pass)))
            return false;
        auto fail = pass;
        fail["b"] = parse_expression("c4", [&] {
            Context c = fam.ctx;
            parse_declarations(cdecls, c);
            return c;
        }());
        std::vector<Expression> residuals = verify_substitution(cs, fail);
        // exactly one condition breaks, with residual c4
        int nonzero = 0;
        for (const auto& r : residuals) {
            if (r.is_zero())
                continue;
            ++nonzero;
            Context c = fam.ctx;
            parse_declarations(cdecls, c);
            if (!(r == parse_expression("c4", c)))
                return false;
        }
        if (nonzero != 1)
            return false;
    }
    // autonomous family without transport slots, p and q negative
    {
        EquationFamily fam = EquationFamily::time_independent_core();
        ConditionSystem cs = condition_system(fam);
        auto pass = bindings_in(fam.ctx, "const c1;",
                                {{"g", "h(u) + f(u)/u + f_u(u)"},
                                 {"d", "c1/u + h(u)/u + h_u(u)"},
                                 {"q", "p(u)/u + p_u(u)"}});
        if (!all_zero(verify_substitution(cs, pass)))
            return false;
        auto fail = pass;
        fail["q"] = parse_expression("p(u)/u", fam.ctx);
        std::vector<Expression> residuals = verify_substitution(cs, fail);
        std::vector<std::string> nonzero;
        for (const auto& r : residuals)
            if (!r.is_zero())
                nonzero.push_back(r.str());
        std::sort(nonzero.begin(), nonzero.end());
        if (nonzero != std::vector<std::string>{"-p_u(u) - p_uu(u)*u", "-p_u(u)*u"})
            return false;
    }
    // u_t + f(u) u_xxxx: f = a/u passes, f = u fails
    {
        EquationFamily fam = EquationFamily::pure_fourth_order();
        ConditionSystem cs = condition_system(fam);
        if (!all_zero(verify_substitution(cs, bindings_in(fam.ctx, "const a;", {{"f", "a/u"}}))))
            return false;
        std::vector<Expression> residuals =
            verify_substitution(cs, bindings_in(fam.ctx, "", {{"f", "u"}}));
        std::vector<std::string> rendered;
        for (const auto& r : residuals)
            rendered.push_back(r.str());
        std::sort(rendered.begin(), rendered.end());
        if (rendered != std::vector<std::string>{"0", "0", "2", "2*u"})
            return false;
    }
    // u_t + a(t,u) u_x + b(t,u): b = lambda(t)/u passes, b = u fails
    {
        EquationFamily fam = EquationFamily::transport();
        ConditionSystem cs = condition_system(fam);
        if (!all_zero(verify_substitution(
                cs, bindings_in(fam.ctx, "func lambda(t);", {{"b", "lambda(t)/u"}}))))
            return false;
        std::vector<Expression> residuals =
            verify_substitution(cs, bindings_in(fam.ctx, "", {{"b", "u"}}));
        if (residuals.size() != 1 || residuals[0].str() != "2*u")
            return false;
    }
    return true;
}

bool criterion_phi() {
    for (Fixture fx : {quartic_selfadj(), kdv_tdep(), kdv(), burgers()}) {
        SelfAdjointVerdict v = self_adjoint_check(fx.eq);
        if (!v.is_self_adjoint || v.phi.str() != "-1")
            return false;
    }
    return true;
}

bool criterion_conserved_pipeline() {
    // raw components of the third-order construction
    Fixture fx = kdv_tdep();
    ConservedVector raw = conserved_vector(fx.eq, shift_symmetry(fx, "F(t)"));
    if (!(raw.C0 == parse_expression("v*(1 - F(t)*u_x)", fx.ctx)))
        return false;
    if (!(raw.C1 == parse_expression("F(t)*v*u_t + f(t)*v*u + g(t)*v_xx - F(t)*g(t)*u_x*v_xx "
                                     "+ F(t)*g(t)*v_x*u_xx",
                                     fx.ctx)))
        return false;

    ConservedVector normalized = normalize_conserved(restrict_to_physical(raw), fx.eq);
    if (!(normalized.C0 == parse_expression("u", fx.ctx)))
        return false;
    if (!(normalized.C1 == parse_expression("f(t)*u^2/2 + g(t)*u_xx", fx.ctx)))
        return false;

    // specializations
    Fixture b = burgers_tdep();
    ConservedVector c2 = normalize_conserved(
        restrict_to_physical(conserved_vector(b.eq, shift_symmetry(b, "F(t)"))), b.eq);
    if (!(c2.C0 == parse_expression("u", b.ctx)) ||
        !(c2.C1 == parse_expression("f(t)*u^2/2", b.ctx)))
        return false;

    Fixture i2 = burgers();
    ConservedVector c3 = normalize_conserved(
        restrict_to_physical(conserved_vector(i2.eq, shift_symmetry(i2, "T(t)"))), i2.eq);
    if (!(c3.C0 == parse_expression("u", i2.ctx)) ||
        !(c3.C1 == parse_expression("u^2/2", i2.ctx)))
        return false;

    Fixture kd = kdv();
    ConservedVector c4 = normalize_conserved(
        restrict_to_physical(conserved_vector(kd.eq, shift_symmetry(kd, "T(t)"))), kd.eq);
    return c4.C0 == parse_expression("u", kd.ctx) &&
           c4.C1 == parse_expression("u^2/2 + u_xx", kd.ctx);
}

bool criterion_divergences() {
    auto check_named_vector = [](Fixture fx, const std::string& c0, const std::string& c1) {
        EvolutionSystem sys;
        sys.add(fx.eq);
        ConservedVector cv =
            make_conserved_vector(parse_expression(c0, fx.ctx), parse_expression(c1, fx.ctx));
        return verify_divergence(cv, sys).is_zero();
    };
    if (!check_named_vector(kdv_tdep(), "u", "f(t)*u^2/2 + g(t)*u_xx"))
        return false;
    if (!check_named_vector(burgers_tdep(), "u", "f(t)*u^2/2"))
        return false;
    if (!check_named_vector(burgers(), "u", "u^2/2"))
        return false;
    if (!check_named_vector(kdv(), "u", "u^2/2 + u_xx"))
        return false;

    // the raw nonlocal vector against the pair {equation, adjoint}
    Fixture fx = kdv_tdep();
    ConservedVector raw = conserved_vector(fx.eq, shift_symmetry(fx, "F(t)"));
    return verify_divergence(raw, adjoint_pair_system(fx.eq)).is_zero();
}

bool criterion_symmetries() {
    Fixture fx = kdv_tdep();
    if (!check_point_symmetry(fx.eq, shift_symmetry(fx, "F(t)")).is_zero())
        return false;

    Fixture kd = kdv();
    PointSymmetry xshift =
        PointSymmetry::make(Expression::constant(Rational(1)), Expression(), Expression());
    if (!check_point_symmetry(kd.eq, xshift).is_zero())
        return false;

    PointSymmetry scaling =
        PointSymmetry::make(Expression(), Expression(), parse_expression("u", kd.ctx));
    return !check_point_symmetry(kd.eq, scaling).is_zero();
}

bool criterion_properties() {
    // Euler operator annihilates total derivatives: 200 cases
    {
        testgen::Gen gen(811001);
        int done = 0;
        while (done < 200) {
            Expression h = gen.expression(4);
            if (!h.contains_dep("u") || !h.contains_dep("v"))
                continue;
            ++done;
            if (!euler_lagrange(total_derivative(h, Indep::x), "u").is_zero())
                return false;
            if (!euler_lagrange(total_derivative(h, Indep::t), "u").is_zero())
                return false;
        }
    }
    // commutation: 200 cases
    {
        testgen::Gen gen(811002);
        for (int i = 0; i < 200; ++i) {
            Expression e = gen.expression(5);
            if (!(total_derivative(total_derivative(e, Indep::t), Indep::x) ==
                  total_derivative(total_derivative(e, Indep::x), Indep::t)))
                return false;
        }
    }
    // Leibniz: 200 cases
    {
        testgen::Gen gen(811003);
        for (int i = 0; i < 200; ++i) {
            Expression a = gen.expression(4);
            Expression b = gen.expression(4);
            if (!(total_derivative(a * b, Indep::x) ==
                  a * total_derivative(b, Indep::x) + b * total_derivative(a, Indep::x)))
                return false;
        }
    }
    // normalization idempotence: 500 cases
    {
        testgen::Gen gen(811004);
        for (int i = 0; i < 500; ++i) {
            Expression e = gen.expression(6);
            std::vector<Monomial> ms = e.terms();
            std::shuffle(ms.begin(), ms.end(), gen.rng());
            for (auto& m : ms)
                std::shuffle(m.factors.begin(), m.factors.end(), gen.rng());
            if (!(Expression::from_monomials(std::move(ms)) == e))
                return false;
        }
    }
    // gauge vectors (D_x theta, -D_t theta): 100 cases, no reduction involved
    {
        testgen::Gen gen(811005);
        for (int i = 0; i < 100; ++i) {
            Expression theta = gen.expression(4, true, 2, 1, 2);
            Expression div = total_derivative(total_derivative(theta, Indep::x), Indep::t) +
                             total_derivative(-total_derivative(theta, Indep::t), Indep::x);
            if (!div.is_zero())
                return false;
        }
    }
    return true;
}

} // namespace

int main() {
    Harness h;
    h.criterion(1, "adjoint of the third-order equation sign-normalizes to the golden rendering",
                criterion_adjoint_reproduction());
    h.criterion(2, "full family conditions vanish under the solution bindings and break under "
                   "any single perturbation",
                criterion_family_conditions());
    h.criterion(3, "restricted families: paired pass/fail bindings with exact residuals",
                criterion_subfamilies());
    h.criterion(4, "every self-adjoint fixture reports phi = -1", criterion_phi());
    h.criterion(5, "conserved-vector pipeline reproduces the closed-form components",
                criterion_conserved_pipeline());
    h.criterion(6, "divergence of every closed-form vector is exactly zero",
                criterion_divergences());
    h.criterion(7, "point symmetry residuals: two zeros and a designed nonzero",
                criterion_symmetries());
    h.criterion(8, "randomized property suites (Euler/commutation/Leibniz/idempotence/gauge)",
                criterion_properties());

    std::cout << h.passed << " of " << (h.passed + h.failed) << " criteria passed\n";
    return h.failed == 0 ? 0 : 1;
}
