#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(CLAUSEN_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), int(buf.size()), pipe)) out += buf.data();
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("eval prints 15 significant digits and exits 0") {
    auto res = run("eval 2f1 --a 0.5 --b 0.5 --c 1 --z 0.5");
    CHECK(res.exit_code == 0);
    CHECK(std::stod(res.out) == doctest::Approx(1.180340599016096).epsilon(1e-12));

    auto inv = run("eval invariants --r 2");
    CHECK(inv.exit_code == 0);
    CHECK(inv.out.find("\"K2\": 16") != std::string::npos);
    CHECK(inv.out.find("\"h11\": 32") != std::string::npos);

    auto per = run("eval period --sig 1,1,1 --cycle A --k 1 --lambda 0.3");
    CHECK(per.exit_code == 0);
    CHECK(std::stod(per.out) == doctest::Approx(6.855557792715164).epsilon(1e-10));
}

TEST_CASE("eval f2 routes through the Euler integral when needed") {
    auto res = run("eval f2 --alpha 0.5 --beta1 0.5 --beta2 0.5 --gamma1 1 --gamma2 1 "
                   "--z1 0.96 --z2 -0.96");
    CHECK(res.exit_code == 0);
    CHECK(std::stod(res.out) > 0.0);
}

TEST_CASE("fibration suite accepts a signature subset") {
    auto res = run("verify fibrations --sigs \"1,1,1\" --cert-dir /tmp/clausen_certs_subset "
                   "--out /tmp/clausen_fib_subset.json");
    CHECK(res.exit_code == 0);
    CHECK(slurp("/tmp/clausen_certs_subset/J7_(1,1,1).json").find("\"zero\": true") !=
          std::string::npos);
}

TEST_CASE("argument errors exit 2") {
    CHECK(run("eval 2f1 --a 0.5").exit_code == 2);           // missing flags
    CHECK(run("verify clausen --beta1 -0.5").exit_code == 2); // precondition violation
    CHECK(run("verify nonsense").exit_code == 2);             // unknown suite
    CHECK(run("eval period --sig 3,2,3 --lambda 0.3").exit_code == 3); // invalid signature
}

TEST_CASE("domain errors exit 3") {
    // z on the 2F1 cut with no admissible route
    CHECK(run("eval 2f1 --a 1 --b 2 --c 0.5 --z -3").exit_code == 3);
}

TEST_CASE("verify writes deterministic reports and exits by pass state") {
    std::string out1 = "/tmp/clausen_mirror_1.json";
    std::string out2 = "/tmp/clausen_mirror_2.json";
    CHECK(run("verify mirror --out " + out1 + " --seed 7").exit_code == 0);
    CHECK(run("verify mirror --out " + out2 + " --seed 7 --parallel 3").exit_code == 0);
    std::string a = slurp(out1), b = slurp(out2);
    CHECK(!a.empty());
    CHECK(a == b); // byte-identical regardless of thread count
    CHECK(a.find("\"suite\": \"mirror\"") != std::string::npos);
    CHECK(a.find("\"passed\": true") != std::string::npos);

    // forcing an unreachable tolerance must flip the exit code but still write
    std::string out3 = "/tmp/clausen_mirror_3.json";
    CHECK(run("verify mirror --out " + out3 + " --tol 1e-30").exit_code == 1);
    CHECK(!slurp(out3).empty());
}

TEST_CASE("report summarizes suite files as CSV") {
    std::string rep = "/tmp/clausen_mirror_rep.json";
    REQUIRE(run("verify mirror --out " + rep).exit_code == 0);
    auto res = run("report " + rep);
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("name,inputs,") == 0);
    CHECK(res.out.find("mirror_map_roundtrip") != std::string::npos);
    CHECK(res.out.find("summary") != std::string::npos);

    // empty input set: header-only, exit 0
    auto empty = run("report");
    CHECK(empty.exit_code == 0);
    CHECK(empty.out.find("name,inputs,") == 0);

    // malformed input: exit 2
    std::ofstream("/tmp/clausen_bad.json") << "{not json";
    CHECK(run("report /tmp/clausen_bad.json").exit_code == 2);
}

TEST_CASE("env overrides with flag precedence") {
    std::string out = "/tmp/clausen_env.json";
    std::string cmd = std::string("CLAUSEN_TOL=1e-30 ") + CLAUSEN_CLI_PATH +
                      " verify mirror --out " + out + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 1); // env tightens tolerance -> failure
    std::string cmd2 = std::string("CLAUSEN_TOL=1e-30 ") + CLAUSEN_CLI_PATH +
                       " verify mirror --tol 1e-9 --out " + out + " 2>/dev/null";
    status = std::system(cmd2.c_str());
    CHECK(WEXITSTATUS(status) == 0); // flag wins over env
}
