#include "l2chi/cli.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "fixtures.hpp"

using namespace l2chi;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("chi subcommand reproduces a table row") {
    CliResult r = run_cli({"--json", "chi", "-i", fixtures::path("borromean"), "--phi",
                           "a=0,b=0,c=1", "--mu", "6", "--quotient", "abelian:2"});
    REQUIRE(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["chi"] == "1");
    CHECK(j["minus_chi"] == "-1");
    CHECK(j["d"] == "1");
    REQUIRE(j["degrees"].size() == 3);
    CHECK(j["degrees"][1]["v"] == "6");
    CHECK(j["degrees"][2]["v"] == "4");
    CHECK(j["degrees"][0]["delta"] == "2");
}

TEST_CASE("identical seed and flags give identical bytes") {
    std::vector<std::string> args{"--json", "--seed", "42", "chi", "-i",
                                  fixtures::path("borromean"), "--phi", "a=0,b=0,c=1",
                                  "--mu", "2", "--quotient", "abelian:3"};
    CliResult a = run_cli(args);
    CliResult b = run_cli(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("zero character path warns and returns zero") {
    CliResult r = run_cli({"--json", "chi", "-i", fixtures::path("borromean"), "--phi",
                           "a=0,b=0,c=0", "--mu", "1"});
    REQUIRE(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["chi"] == "0");
    CHECK(j.contains("warning"));
}

TEST_CASE("exit codes") {
    CHECK(run_cli({"chi", "-i", "/nonexistent.grp", "--phi", "a=1", "--mu", "1"}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({"chi", "-i", fixtures::path("borromean"), "--mu", "1"}).code == 2); // no character
    // singular Laplacian: free group complex has a zero row in degree 1
    {
        char tmpl[] = "/tmp/l2chi_freeXXXXXX";
        int fd = mkstemp(tmpl);
        REQUIRE(fd >= 0);
        std::ofstream f(tmpl);
        f << "generators a b\ncomplex fox\n";
        f.close();
        close(fd);
        CliResult r = run_cli({"chi", "-i", tmpl, "--phi", "a=1,b=0", "--mu", "1"});
        CHECK(r.code == 3);
        std::remove(tmpl);
    }
}

TEST_CASE("bound subcommand") {
    CliResult r = run_cli({"--json", "bound", "--n", "1", "--k", "10", "--d", "2"});
    REQUIRE(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(std::abs(j["bound"].get<double>() - 0.30695) < 2e-5);
}

TEST_CASE("betti subcommand on the planted complex") {
    CliResult r = run_cli({"--json", "betti", "-i", fixtures::path("fiber_shape"), "--exact"});
    REQUIRE(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["betti"] == Json::array({"0", "0", "1", "0"}));
    CHECK(j["ranks"] == Json::array({"1", "5", "4"}));
}

TEST_CASE("alexander subcommand") {
    CliResult r = run_cli({"--json", "alexander", "-i", fixtures::path("v1539"), "--phi",
                           "a=1,b=0"});
    REQUIRE(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["alexander"] == "1+a+a*b+a*b^2+a^2*b^2");
    CHECK(j["norm"] == 2);
}

TEST_CASE("normball subcommand") {
    char tmpl[] = "/tmp/l2chi_csvXXXXXX";
    int fd = mkstemp(tmpl);
    REQUIRE(fd >= 0);
    {
        std::ofstream f(tmpl);
        f << "0,1,2\n1,0,2\n1,1,2\n-1,1,2\n";
    }
    close(fd);
    CliResult r = run_cli({"--json", "normball", "--dim", "2", "-i", tmpl});
    std::remove(tmpl);
    REQUIRE(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["certified"] == true);
    CHECK(j["vertices"].size() == 4);
}

TEST_CASE("fbc subcommand emits a parseable presentation") {
    char tmpl[] = "/tmp/l2chi_fbcXXXXXX";
    int fd = mkstemp(tmpl);
    REQUIRE(fd >= 0);
    close(fd);
    CliResult r = run_cli({"--json", "fbc", "--rank", "3", "--word",
                           "eta21,sig13,eta21,eta32,eta31", "-o", tmpl, "--name", "fbc_example_1"});
    REQUIRE(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["free_rank"] == 2);
    InputFile f = parse_input_file(tmpl);
    CHECK(f.presentation.ngens == 4);
    CHECK(f.presentation.relators.size() == 3);
    // matches the shipped fixture byte for byte
    std::ifstream shipped(fixtures::path("fbc_example_1"));
    std::stringstream want, got;
    want << shipped.rdbuf();
    std::ifstream written(tmpl);
    got << written.rdbuf();
    CHECK(got.str() == want.str());
    std::remove(tmpl);
}

TEST_CASE("log file accumulates JSON lines") {
    char tmpl[] = "/tmp/l2chi_logXXXXXX";
    int fd = mkstemp(tmpl);
    REQUIRE(fd >= 0);
    close(fd);
    std::remove(tmpl);
    for (int i = 0; i < 2; ++i) {
        CliResult r = run_cli({"--log", tmpl, "bound", "--n", "1", "--k", "10", "--d", "2"});
        REQUIRE(r.code == 0);
    }
    std::ifstream log(tmpl);
    std::string line;
    int count = 0;
    while (std::getline(log, line)) {
        Json j = Json::parse(line);
        CHECK(j.contains("bound"));
        ++count;
    }
    CHECK(count == 2);
    std::remove(tmpl);
}
