// Process-level tests of the selfadjoint-lab binary against the golden
// outputs under fixtures/golden/. Every golden file was checked against the
// closed-form expansions before being frozen.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string kCli = SELFADJOINT_CLI_PATH;
const std::string kFixtures = SELFADJOINT_FIXTURES_DIR;

struct RunResult {
    std::string output; // stdout + stderr
    int exit_code = -1;
};

RunResult run(const std::string& args) {
    std::string cmd = kCli + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.output.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string golden(const std::string& name) {
    std::ifstream in(kFixtures + "/golden/" + name);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fx(const std::string& name) { return kFixtures + "/" + name; }

void check_golden(const std::string& args, const std::string& golden_name, int expect_exit = 0) {
    RunResult r = run(args);
    CHECK(r.output == golden(golden_name));
    CHECK(r.exit_code == expect_exit);
}

} // namespace

TEST_CASE("adjoint command") {
    check_golden("adjoint " + fx("kdv_tdep.eq"), "adjoint_kdv_tdep.txt");
    check_golden("adjoint " + fx("ut.eq"), "adjoint_ut.txt");
    check_golden("adjoint " + fx("kdv.eq"), "adjoint_kdv.txt");
    check_golden("adjoint " + fx("family_full.eq"), "adjoint_family_full.txt");
}

TEST_CASE("self-adjoint command") {
    check_golden("self-adjoint " + fx("quartic_selfadj.eq"), "selfadjoint_quartic.txt");
    check_golden("self-adjoint " + fx("burgers.eq"), "selfadjoint_burgers.txt");
    check_golden("self-adjoint " + fx("quartic_not_selfadj.eq"), "selfadjoint_quartic_not.txt");
    check_golden("self-adjoint " + fx("quartic_not_selfadj.eq") + " --expect-zero",
                 "selfadjoint_quartic_not.txt", 1);
}

TEST_CASE("conditions command with bindings") {
    check_golden("conditions " + fx("family_full.eq"), "conditions_family_full.txt");
    check_golden("conditions " + fx("family_full.eq") + " --bind " + fx("family_full_pass.bind"),
                 "conditions_family_full_pass.txt");
    check_golden("conditions " + fx("family_transport.eq") + " --bind " + fx("transport_pass.bind"),
                 "conditions_transport_pass.txt");
    check_golden("conditions " + fx("family_transport.eq") + " --bind " + fx("transport_fail.bind") +
                     " --expect-zero",
                 "conditions_transport_fail.txt", 1);
}

TEST_CASE("conserved command three-stage report") {
    check_golden("conserved " + fx("kdv_tdep.eq") + " --verify", "conserved_kdv_tdep_verify.txt");
    check_golden("conserved " + fx("burgers_tdep.eq") + " --verify", "conserved_burgers_tdep_verify.txt");
    check_golden("conserved " + fx("burgers.eq") + " --verify", "conserved_burgers_verify.txt");
    check_golden("conserved " + fx("kdv.eq") + " --verify", "conserved_kdv_verify.txt");
}

TEST_CASE("conserved without the derivative link fails verification") {
    check_golden("conserved " + fx("kdv_tdep_nolink.eq") + " --verify --expect-zero",
                 "conserved_kdv_tdep_nolink_verify.txt", 1);
}

TEST_CASE("check-symmetry command") {
    check_golden("check-symmetry " + fx("kdv_tdep.eq"), "checksym_kdv_tdep.txt");
    check_golden("check-symmetry " + fx("kdv.eq") + " --symmetry " + fx("uscaling.sym") +
                     " --expect-zero",
                 "checksym_kdv_uscaling.txt", 1);
}

TEST_CASE("verify-div command") {
    check_golden("verify-div " + fx("kdv_tdep.eq") + " --vector " + fx("mass_kdv_tdep.vec"),
                 "verifydiv_kdv_tdep_mass.txt");
    check_golden("verify-div " + fx("burgers_tdep.eq") + " --vector " + fx("mass_burgers_tdep.vec"),
                 "verifydiv_burgers_tdep_mass.txt");
    check_golden("verify-div " + fx("burgers.eq") + " --vector " + fx("mass_burgers.vec"),
                 "verifydiv_burgers_mass.txt");
    check_golden("verify-div " + fx("kdv.eq") + " --vector " + fx("mass_kdv.vec"),
                 "verifydiv_kdv_mass.txt");
    check_golden("verify-div " + fx("burgers.eq") + " --vector " + fx("usquared.vec"),
                 "verifydiv_burgers_usquared.txt");
    RunResult bad = run("verify-div " + fx("burgers.eq") + " --vector " + fx("usquared.vec") +
                        " --expect-zero");
    CHECK(bad.exit_code == 1);
}

TEST_CASE("structured output") {
    check_golden("self-adjoint " + fx("quartic_selfadj.eq") + " --format structured",
                 "selfadjoint_quartic.json");
}

TEST_CASE("deterministic output") {
    RunResult a = run("conserved " + fx("kdv_tdep.eq") + " --verify");
    RunResult b = run("conserved " + fx("kdv_tdep.eq") + " --verify");
    CHECK(a.output == b.output);
}

TEST_CASE("exit codes for input and engine limits") {
    RunResult missing = run("adjoint " + fx("no_such_file.eq"));
    CHECK(missing.exit_code == 2);

    RunResult parse_error = run("adjoint " + fx("mass_burgers.vec")); // no [equation]
    CHECK(parse_error.exit_code == 2);
}
