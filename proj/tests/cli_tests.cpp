#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "gridspread/gridio.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args, bool merge_stderr = false,
                  const std::string& env_prefix = "") {
    const std::string cmd = env_prefix + std::string(GRIDSPREAD_CLI_PATH) + " " + args +
                            (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path temp_file(const std::string& stem) {
    static int counter = 0;
    return fs::temp_directory_path() /
           ("gridspread_cli_" + std::to_string(::getpid()) + "_" + stem + "_" +
            std::to_string(counter++) + ".txt");
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("bounds prints exact key=value lines") {
    const RunResult r = run_cli("bounds --n 13 --p inf");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "lower=4\nupper=7\nratio=1.75\n");

    const RunResult undef = run_cli("bounds --n 2 --p inf");
    CHECK(undef.exit_code == 0);
    CHECK(undef.out == "lower=0\nupper=2\nratio=undefined\n");

    const RunResult l1 = run_cli("bounds --n 10 --p 1");
    CHECK(l1.exit_code == 0);
    CHECK(l1.out == "lower=2\nupper=12\nratio=6\n");
}

TEST_CASE("construct reports its plan and writes a parseable document") {
    const fs::path out = temp_file("construct");
    const RunResult r = run_cli("construct --n 13 --out " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out == "method=general\nk=2\nguarantee=4\n");
    const gridspread::PairDocument doc = gridspread::parse_pair_document(slurp(out));
    CHECK(doc.spec.n() == 13);
    fs::remove(out);
}

TEST_CASE("construct without --out streams the document to stdout") {
    const RunResult r = run_cli("construct --n 9 --method special");
    CHECK(r.exit_code == 0);
    const gridspread::PairDocument doc = gridspread::parse_pair_document(r.out);
    CHECK(doc.spec.n() == 9);
}

TEST_CASE("construct then verify honors the plan guarantee") {
    const fs::path out = temp_file("pair9");
    CHECK(run_cli("construct --n 9 --method special --out " + out.string()).exit_code == 0);
    const RunResult v = run_cli("verify --in " + out.string() + " --p inf");
    CHECK(v.exit_code == 0);
    CHECK(v.out.substr(0, 13) == "min_combined=");
    const long measured = std::stol(v.out.substr(13));
    CHECK(measured >= 3);
    CHECK(v.out.find("\nwitness=") != std::string::npos);

    const RunResult naive = run_cli("verify --in " + out.string() + " --p inf --algorithm naive");
    CHECK(naive.out == v.out);

    const RunResult threads =
        run_cli("verify --in " + out.string() + " --p inf --threads 4");
    CHECK(threads.out == v.out);
    fs::remove(out);
}

TEST_CASE("verify respects GRIDSPREAD_THREADS") {
    const fs::path out = temp_file("pair12");
    CHECK(run_cli("construct --n 12 --out " + out.string()).exit_code == 0);
    const RunResult base = run_cli("verify --in " + out.string() + " --p 2");
    const RunResult env = run_cli("verify --in " + out.string() + " --p 2", false,
                                  "GRIDSPREAD_THREADS=3 ");
    CHECK(base.exit_code == 0);
    CHECK(env.exit_code == 0);
    CHECK(base.out == env.out);
    const RunResult bad = run_cli("verify --in " + out.string() + " --p 2", false,
                                  "GRIDSPREAD_THREADS=zero ");
    CHECK(bad.exit_code == 1);
    fs::remove(out);
}

TEST_CASE("oracle reproduces the 840 solution count") {
    const RunResult r = run_cli("oracle --n 3 --p 1 --count --threshold 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "count=840\n");
}

TEST_CASE("oracle prints the optimum and writes the best pair") {
    const fs::path out = temp_file("oracle_best");
    const RunResult r = run_cli("oracle --n 2 --p inf --out " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out == "optimum=2\n");
    const gridspread::PairDocument doc = gridspread::parse_pair_document(slurp(out));
    CHECK(doc.spec.n() == 2);
    fs::remove(out);
}

TEST_CASE("render text and svg") {
    const fs::path out = temp_file("pair2");
    {
        std::ofstream f(out, std::ios::binary);
        f << "gridpair v1 n=2 d=2\n0 1\n2 3\n\n0 1\n2 3\n";
    }
    const RunResult text = run_cli("render --in " + out.string() + " --format text");
    CHECK(text.exit_code == 0);
    CHECK(text.out == "A\n0 1\n2 3\n\nB\n0 1\n2 3\n");

    const RunResult svg = run_cli("render --in " + out.string() + " --format svg");
    CHECK(svg.exit_code == 0);
    CHECK(svg.out.find("<svg") != std::string::npos);

    const RunResult colored = run_cli("render --in " + out.string() + " --format svg --k 2");
    CHECK(colored.exit_code == 0);
    CHECK(colored.out != svg.out);
    fs::remove(out);
}

TEST_CASE("exit codes follow the contract") {
    // 1: invalid arguments or inputs
    CHECK(run_cli("nonsense").exit_code == 1);
    CHECK(run_cli("construct").exit_code == 1);
    CHECK(run_cli("construct --n 1").exit_code == 1);
    CHECK(run_cli("construct --n 13 --method special").exit_code == 1);
    CHECK(run_cli("verify --in /nonexistent/file --p inf").exit_code == 1);
    CHECK(run_cli("oracle --n 3 --p 1 --count").exit_code == 1);  // missing --threshold
    CHECK(run_cli("bounds --n 13 --p 0").exit_code == 1);

    // 3: size refusal
    CHECK(run_cli("oracle --n 4 --p inf").exit_code == 3);

    // diagnostics go to stderr, not stdout
    const RunResult quiet = run_cli("oracle --n 4 --p inf");
    CHECK(quiet.out.empty());
    const RunResult loud = run_cli("oracle --n 4 --p inf", true);
    CHECK(loud.out.find("error:") != std::string::npos);

    // svg of a d=3 document is a validation error
    const fs::path out = temp_file("pair23");
    CHECK(run_cli("construct --n 3 --d 3 --out " + out.string()).exit_code == 0);
    CHECK(run_cli("render --in " + out.string() + " --format svg").exit_code == 1);
    fs::remove(out);
}

TEST_CASE("construct output is byte-identical across runs") {
    const RunResult a = run_cli("construct --n 13");
    const RunResult b = run_cli("construct --n 13");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}
