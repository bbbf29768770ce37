#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(SLICEQ_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    std::array<char, 512> buf{};
    while (fgets(buf.data(), buf.size(), pipe)) res.output += buf.data();
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("classify subcommand") {
    SUBCASE("case B example") {
        const auto r = run_cli("classify --p 2 --beta 0.5 --lambda 0,0,1,0 --alpha 0.25");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("case: B") != std::string::npos);
    }
    SUBCASE("case A1") {
        const auto r = run_cli("classify --p 1 --alpha 0.5 --beta 0.5 --lambda 0");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("case: A1") != std::string::npos);
    }
    SUBCASE("invalid parameters exit 2") {
        const auto r =
            run_cli("classify --p 2 --beta 0,0.5,0,0 --lambda 0,0,1,0 --alpha -0.25");
        CHECK(r.exit_code == 2);
        CHECK(r.output.find("Invalid") != std::string::npos);
    }
}

TEST_CASE("autdim subcommand") {
    SUBCASE("case B defaults to the linearized method and passes") {
        const auto r = run_cli("autdim --p 2 --beta 0.5 --lambda 0,0,1,0 --alpha 0.25");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("nullity 5") != std::string::npos);
        CHECK(r.output.find("PASS") != std::string::npos);
    }
    SUBCASE("A1 with real alpha gives 16") {
        const auto r = run_cli("autdim --p 1 --alpha 0.5 --beta 0.5 --lambda 0");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("nullity 16") != std::string::npos);
    }
    SUBCASE("forcing the direct method with p > 1 exits 3") {
        const auto r = run_cli(
            "autdim --p 2 --beta 0.5 --lambda 0,0,1,0 --alpha 0.25 --method direct");
        CHECK(r.exit_code == 3);
        CHECK(r.output.find("nonlinear") != std::string::npos);
    }
    SUBCASE("JSON report output is byte-identical across identical runs") {
        const std::string out1 = "cli_autdim_1.json";
        const std::string out2 = "cli_autdim_2.json";
        const std::string base =
            "autdim --p 1 --alpha 0,0.5,0,0 --beta 0,0.5,0,0 --lambda 0 --seed 777 --out ";
        CHECK(run_cli(base + out1).exit_code == 0);
        CHECK(run_cli(base + out2).exit_code == 0);
        const std::string a = slurp(out1);
        CHECK_FALSE(a.empty());
        CHECK(a == slurp(out2));
        std::remove(out1.c_str());
        std::remove(out2.c_str());
    }
}

TEST_CASE("scan-family subcommand") {
    SUBCASE("kind 2 defaults: resonant 12 then 5") {
        const auto r = run_cli("scan-family --kind 2 --p 2 --beta 0.5");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("A21,12,{12},true") != std::string::npos);
        CHECK(r.output.find("B,5,{5},true") != std::string::npos);
        CHECK(r.output.find("dimension jump: PASS") != std::string::npos);
    }
    SUBCASE("kind 1 with real alpha: 16 then 8") {
        const auto r = run_cli("scan-family --kind 1 --alpha 0.5");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("A1,16,{16},true") != std::string::npos);
        CHECK(r.output.find("A3,8,{8},true") != std::string::npos);
    }
    SUBCASE("empty lambda list is a usage error") {
        const auto r = run_cli("scan-family --kind 2 --p 2 --beta 0.5 --lambdas ''");
        CHECK(r.exit_code == 2);
    }
}

TEST_CASE("orbit subcommand") {
    const auto r = run_cli("orbit --p 1 --alpha 0.5 --beta 0.5 --lambda 0 "
                           "--a '1;1' --b '0.5;0.5' --k-max 4");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("k = 1") != std::string::npos);
}

TEST_CASE("stem-check subcommand") {
    const auto r = run_cli("stem-check");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("PASS") != std::string::npos);
}

TEST_CASE("verify-theorems self-test notices an injected wrong expectation") {
    const auto r = run_cli("verify-theorems --inject-wrong-expected");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("[FAIL] criterion 1") != std::string::npos);
    CHECK(r.output.find("[FAIL] A1 alpha=beta=0.5") != std::string::npos);
}

TEST_CASE("verify-theorems emits one CSV row per grid entry") {
    const std::string out = "cli_grid.csv";
    const auto r = run_cli("verify-theorems --format csv --out " + out);
    CHECK((r.exit_code == 0 || r.exit_code == 1));
    const std::string csv = slurp(out);
    CHECK(csv.find("case,alpha,beta,lambda,p,nullity,expected,pass") == 0);
    int lines = 0;
    for (char ch : csv) lines += ch == '\n';
    CHECK(lines == 13); // header + 12 grid rows
    std::remove(out.c_str());
}
