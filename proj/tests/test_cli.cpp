#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(CIRCLEREP_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 512> buf;
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.output.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string fixture(const std::string& name) { return std::string(CIRCLEREP_DATA_DIR) + "/" + name; }

} // namespace

TEST_CASE("recognize exit codes follow the verdict") {
    auto w5 = run("recognize " + fixture("w5.g"));
    REQUIRE(w5.exit_code == 1);
    REQUIRE(w5.output.find("circle: no") != std::string::npos);

    auto c5 = run("recognize " + fixture("c5.g") + " --realize");
    REQUIRE(c5.exit_code == 0);
    REQUIRE(c5.output.find("circle: yes") != std::string::npos);
    REQUIRE(c5.output.find("realization:") != std::string::npos);

    REQUIRE(run("recognize " + fixture("bw3.g")).exit_code == 1);
    REQUIRE(run("recognize " + fixture("w7.g")).exit_code == 1);
}

TEST_CASE("missing and malformed inputs exit 3") {
    REQUIRE(run("recognize /nonexistent.g").exit_code == 3);
    REQUIRE(run("multimatroid z2 " + fixture("w5.g")).exit_code == 3);
    REQUIRE(run("signed-ias " + fixture("abcdbacd.dow") + " --base zz").exit_code == 3);
}

TEST_CASE("bound violations exit 2") {
    auto r = run("recognize " + fixture("path7.g") + " --realize");
    REQUIRE(r.exit_code == 2);
    REQUIRE(r.output.find("bound exceeded") != std::string::npos);
}

TEST_CASE("json output is byte stable without timing") {
    std::string args = "--json --no-timing signed-ias " + fixture("abcdbacd.dow") + " --base ad";
    auto a = run(args);
    auto b = run(args);
    REQUIRE(a.exit_code == 0);
    REQUIRE(a.output == b.output);
    REQUIRE(a.output.find("\"schema\": 1") != std::string::npos);
    REQUIRE(a.output.find("\"timing_ms\"") == std::string::npos);
    REQUIRE(a.output.find("phi(a)") != std::string::npos);

    auto timed = run("--json signed-ias " + fixture("abcdbacd.dow") + " --base ad");
    REQUIRE(timed.output.find("\"timing_ms\"") != std::string::npos);
}

TEST_CASE("worked example self-check passes") {
    auto r = run("paper-example");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("FAIL") == std::string::npos);

    REQUIRE(run("--json paper-example --field gf3").exit_code == 0);
}

TEST_CASE("multimatroid verdicts") {
    REQUIRE(run("multimatroid planar " + fixture("k4.rep")).exit_code == 0);
    REQUIRE(run("multimatroid planar " + fixture("k5.rep")).exit_code == 1);
    REQUIRE(run("multimatroid planar " + fixture("k33.rep")).exit_code == 1);
    REQUIRE(run("multimatroid planar " + fixture("fano.rep")).exit_code == 1);

    auto h = run("multimatroid h33");
    REQUIRE(h.output.find("classification: tight_multimatroid") != std::string::npos);
    auto s = run("multimatroid classify " + fixture("s1.json"));
    REQUIRE(s.output.find("classification: multimatroid") != std::string::npos);

    auto z2 = run("--json --no-timing multimatroid z2 " + fixture("fano.rep"));
    REQUIRE(z2.exit_code == 0);
    REQUIRE(z2.output.find("\"classification\": \"tight_multimatroid\"") != std::string::npos);

    auto z3 = run("multimatroid z3 " + fixture("k4.rep") + " --naji");
    REQUIRE(z3.output.find("regular: true") != std::string::npos);
    auto z3f = run("multimatroid z3 " + fixture("fano.rep") + " --naji");
    REQUIRE(z3f.output.find("regular: false") != std::string::npos);
}

TEST_CASE("usage errors report through the parser") {
    REQUIRE(run("").exit_code != 0);
    REQUIRE(run("frobnicate").exit_code != 0);
    REQUIRE(run("multimatroid").exit_code != 0);
}
