// selfadjoint-lab: adjoint equations, self-adjointness verdicts, coefficient
// condition systems and conservation laws for evolution equations
// u_t + S(t, u, u_x, ..., u_xxxx) = 0.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "selfadjoint/adjointness.hpp"
#include "selfadjoint/conservation.hpp"
#include "selfadjoint/errors.hpp"
#include "selfadjoint/problem.hpp"

namespace {

using nlohmann::ordered_json;
using namespace selfadjoint;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitEngineError = 3;

struct Options {
    std::string file;
    std::vector<std::string> aux;
    bool verify = false;
    bool expect_zero = false;
    std::string format = "text";
};

struct Report {
    std::vector<std::string> lines;
    ordered_json json;
    bool verified_zero = true; // false when --expect-zero should fail

    void emit(const Options& opt) const {
        if (opt.format == "structured")
            std::cout << json.dump(2) << "\n";
        else
            for (const auto& l : lines)
                std::cout << l << "\n";
    }
};

Report run_adjoint(const ProblemFile& pf, const Options&) {
    AdjointResult a = adjoint(pf.require_equation());
    Report r;
    r.lines = {"adjoint (raw): " + a.raw.str(),
               "adjoint (sign-normalized): " + a.sign_normalized.str()};
    r.json = {{"command", "adjoint"},
              {"raw", a.raw.str()},
              {"sign_normalized", a.sign_normalized.str()}};
    return r;
}

Report run_self_adjoint(const ProblemFile& pf, const Options&) {
    SelfAdjointVerdict v = self_adjoint_check(pf.require_equation());
    Report r;
    r.lines = {std::string("self-adjoint: ") + (v.is_self_adjoint ? "yes" : "no"),
               "phi: " + v.phi.str(), "residual: " + v.residual.str()};
    r.json = {{"command", "self-adjoint"},
              {"self_adjoint", v.is_self_adjoint},
              {"phi", v.phi.str()},
              {"residual", v.residual.str()}};
    r.verified_zero = v.is_self_adjoint;
    return r;
}

Report run_conditions(const ProblemFile& pf, const Options&) {
    ConditionSystem cs = condition_system(pf.require_equation());
    Report r;
    r.lines.push_back("conditions (" + std::to_string(cs.conditions.size()) + "):");
    ordered_json jc = ordered_json::array();
    for (size_t i = 0; i < cs.conditions.size(); ++i) {
        r.lines.push_back("  " + std::to_string(i + 1) + ": " + cs.conditions[i].str() + " = 0");
        jc.push_back(cs.conditions[i].str());
    }
    r.json = {{"command", "conditions"}, {"conditions", jc}};

    if (!pf.bindings.empty()) {
        std::map<std::string, Expression> map(pf.bindings.begin(), pf.bindings.end());
        std::vector<Expression> residuals = verify_substitution(cs, map);
        bool all_zero = true;
        ordered_json jr = ordered_json::array();
        r.lines.push_back("residuals:");
        for (size_t i = 0; i < residuals.size(); ++i) {
            r.lines.push_back("  " + std::to_string(i + 1) + ": " + residuals[i].str());
            jr.push_back(residuals[i].str());
            all_zero = all_zero && residuals[i].is_zero();
        }
        r.lines.push_back(std::string("all-zero: ") + (all_zero ? "yes" : "no"));
        r.json["residuals"] = jr;
        r.json["all_zero"] = all_zero;
        r.verified_zero = all_zero;
    }
    return r;
}

Report run_conserved(const ProblemFile& pf, const Options& opt) {
    const EvolutionEquation& eq = pf.require_equation();
    ConservedVector raw = conserved_vector(eq, pf.require_symmetry());
    ConservedVector restricted = restrict_to_physical(raw);
    ConservedVector normalized = normalize_conserved(restricted, eq);

    Report r;
    auto stage = [&](const std::string& name, const ConservedVector& cv) {
        r.lines.push_back(name + ":");
        r.lines.push_back("  C0: " + cv.C0.str());
        r.lines.push_back("  C1: " + cv.C1.str());
        r.json[name] = {{"C0", cv.C0.str()}, {"C1", cv.C1.str()}};
    };
    r.json["command"] = "conserved";
    stage("raw", raw);
    stage("restricted", restricted);
    stage("normalized", normalized);

    if (opt.verify || opt.expect_zero) {
        EvolutionSystem pair = adjoint_pair_system(eq);
        EvolutionSystem single;
        single.add(eq);
        Expression d_raw = verify_divergence(raw, pair);
        Expression d_restricted = verify_divergence(restricted, single);
        Expression d_normalized = verify_divergence(normalized, single);
        r.lines.push_back("divergence (raw, mod equation+adjoint): " + d_raw.str());
        r.lines.push_back("divergence (restricted): " + d_restricted.str());
        r.lines.push_back("divergence (normalized): " + d_normalized.str());
        r.json["divergence"] = {{"raw", d_raw.str()},
                                {"restricted", d_restricted.str()},
                                {"normalized", d_normalized.str()}};
        r.verified_zero = d_raw.is_zero() && d_restricted.is_zero() && d_normalized.is_zero();
    }
    return r;
}

Report run_check_symmetry(const ProblemFile& pf, const Options&) {
    Expression residual = check_point_symmetry(pf.require_equation(), pf.require_symmetry());
    Report r;
    r.lines = {"residual: " + residual.str(),
               std::string("symmetry: ") + (residual.is_zero() ? "yes" : "no")};
    r.json = {{"command", "check-symmetry"},
              {"residual", residual.str()},
              {"symmetry", residual.is_zero()}};
    r.verified_zero = residual.is_zero();
    return r;
}

Report run_verify_div(const ProblemFile& pf, const Options&) {
    const ConservedVector& cv = pf.require_vector();
    const EvolutionEquation& eq = pf.require_equation();
    EvolutionSystem sys;
    if (cv.contains_nonlocal) {
        sys = adjoint_pair_system(eq);
    } else {
        sys.add(eq);
    }
    Expression residual = verify_divergence(cv, sys);
    Report r;
    r.lines = {"residual: " + residual.str(),
               std::string("conserved: ") + (residual.is_zero() ? "yes" : "no")};
    r.json = {{"command", "verify-div"},
              {"residual", residual.str()},
              {"conserved", residual.is_zero()}};
    r.verified_zero = residual.is_zero();
    return r;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adjoint equations, self-adjointness and conservation laws for "
                 "fourth-order evolution equations"};
    app.require_subcommand(1);

    Options opt;
    std::string bind_file, symmetry_file, vector_file;

    auto add_common = [&](CLI::App* cmd, bool with_verify) {
        cmd->add_option("file", opt.file, "problem file")->required();
        cmd->add_option("--bind", bind_file, "bindings file");
        cmd->add_option("--symmetry", symmetry_file, "symmetry file");
        cmd->add_option("--vector", vector_file, "conserved vector file");
        cmd->add_flag("--expect-zero", opt.expect_zero,
                      "exit 1 unless every checked residual is zero");
        cmd->add_option("--format", opt.format, "text|structured")
            ->check(CLI::IsMember({"text", "structured"}));
        if (with_verify)
            cmd->add_flag("--verify", opt.verify, "verify divergence at every stage");
    };

    CLI::App* adjoint_cmd = app.add_subcommand("adjoint", "adjoint equation F* of F");
    CLI::App* selfadj_cmd = app.add_subcommand("self-adjoint", "test F*|_{v=u} = phi F");
    CLI::App* cond_cmd = app.add_subcommand("conditions", "coefficient condition system");
    CLI::App* cons_cmd = app.add_subcommand("conserved", "conserved vector from a symmetry");
    CLI::App* sym_cmd = app.add_subcommand("check-symmetry", "point symmetry residual");
    CLI::App* div_cmd = app.add_subcommand("verify-div", "divergence residual of a vector");
    for (CLI::App* cmd : {adjoint_cmd, selfadj_cmd, cond_cmd, sym_cmd, div_cmd})
        add_common(cmd, false);
    add_common(cons_cmd, true);

    CLI11_PARSE(app, argc, argv);

    try {
        std::vector<std::string> aux;
        for (const std::string& f : {bind_file, symmetry_file, vector_file})
            if (!f.empty())
                aux.push_back(f);
        ProblemFile pf = load_problem(opt.file, aux);

        Report report;
        if (adjoint_cmd->parsed())
            report = run_adjoint(pf, opt);
        else if (selfadj_cmd->parsed())
            report = run_self_adjoint(pf, opt);
        else if (cond_cmd->parsed())
            report = run_conditions(pf, opt);
        else if (cons_cmd->parsed())
            report = run_conserved(pf, opt);
        else if (sym_cmd->parsed())
            report = run_check_symmetry(pf, opt);
        else
            report = run_verify_div(pf, opt);

        report.emit(opt);
        if (opt.expect_zero && !report.verified_zero)
            return kExitVerifyFailed;
        return kExitOk;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const EngineError& e) {
        std::cerr << "engine error: " << e.what() << "\n";
        return kExitEngineError;
    }
}
