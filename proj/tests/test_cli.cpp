#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "momc/config_io.hpp"

using namespace momc;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(MOMC_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string fixture(const std::string& name) { return std::string(MOMC_FIXTURES) + "/" + name; }

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("exit code contract") {
    CHECK(run("complex " + fixture("p2.json")).exit_code == 0);          // success
    CHECK(run("git " + fixture("p2.json") + " --chi 1").exit_code == 1); // wall: validation failure
    CHECK(run("complex " + fixture("bad_parse.json")).exit_code == 2);   // parse error
    CHECK(run("complex " + fixture("bad_duplicate.json")).exit_code == 2);
    CHECK(run("complex " + fixture("over_limit.json")).exit_code == 3);  // resource limit
    CHECK(run("classify " + fixture("p2.json") + " --cells 0,2").exit_code == 1);
    CHECK(run("classify " + fixture("p2.json") + " --cells 0,1,2").exit_code == 2); // not a cell
    CHECK(run("class " + fixture("p2.json") + " --cell 0,1,2").exit_code == 2);
    CHECK(run("class " + fixture("p1.json") + " --cone 1 --phi 0:1").exit_code == 1); // zero weight
    CHECK(run("verify " + fixture("p1.json")).exit_code == 0);
}

TEST_CASE("machine output is stable under re-run") {
    for (const std::string& cmd :
         {"complex " + fixture("square.json") + " --format machine",
          "measures " + fixture("p2.json") + " --format machine",
          "classify " + fixture("p2.json") + " --cells \"1;0,2\" --format machine",
          "git " + fixture("square.json") + " --chi 1/3,1/2 --format machine"}) {
        RunResult a = run(cmd), b = run(cmd);
        CHECK(a.exit_code == 0);
        CHECK(a.out == b.out);
        CHECK(!a.out.empty());
    }
}

TEST_CASE("complex report round-trips through the machine format") {
    ConfigFile cfg = parse_config(read_file(fixture("p2.json")));
    MomentComplex cx = build_complex_from_config(cfg, resolve_limits(cfg, {}, {}));
    ComplexReport rep = make_complex_report(cx);
    ComplexReport back = complex_report_from_json(to_json(rep));
    CHECK(rep == back);

    RunResult r = run("complex " + fixture("p2.json") + " --format machine");
    REQUIRE(r.exit_code == 0);
    Json envelope = Json::parse(r.out);
    CHECK(envelope.at("command") == "complex");
    CHECK(envelope.at("digest") == config_digest(cfg));
    ComplexReport from_cli = complex_report_from_json(envelope.at("payload"));
    CHECK(from_cli == rep);
}

TEST_CASE("measures report round-trips through the machine format") {
    ConfigFile cfg = parse_config(read_file(fixture("p2.json")));
    MomentComplex cx = build_complex_from_config(cfg, resolve_limits(cfg, {}, {}));
    auto ms = enumerate_measures(cx, ValidationMode::normalized, false);
    MeasuresReport rep = make_measures_report(cx, ms);
    MeasuresReport back = measures_report_from_json(to_json(rep));
    CHECK(rep == back);

    RunResult r = run("measures " + fixture("p2.json") + " --format machine");
    REQUIRE(r.exit_code == 0);
    MeasuresReport from_cli = measures_report_from_json(Json::parse(r.out).at("payload"));
    CHECK(from_cli.measures == rep.measures);
}

TEST_CASE("config parsing") {
    ConfigFile cfg = parse_config(read_file(fixture("square.json")));
    CHECK(cfg.rank == 2);
    CHECK(cfg.weights.size() == 4);
    CHECK(!cfg.limits);
    ConfigFile back = config_from_json(config_to_json(cfg));
    CHECK(cfg == back);
    CHECK_THROWS_AS(parse_config("{"), InputError);
    CHECK_THROWS_AS(parse_config("{\"rank\": 1}"), InputError);
    // non-positive multiplicities are caught when the configuration is built
    CHECK_THROWS_AS(
        to_weight_configuration(parse_config("{\"rank\": 1, \"weights\": [{\"chi\": [0], \"mult\": 0}]}")),
        InputError);
}

TEST_CASE("abstract complex config") {
    RunResult r = run("complex " + fixture("abstract_p1.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("abstract") != std::string::npos);
}

TEST_CASE("rationals survive serialization") {
    CHECK(rational_str(parse_rational("2/4")) == "1/2");
    CHECK(rational_str(parse_rational("-7/3")) == "-7/3");
    CHECK(rational_str(parse_rational("5")) == "5");
    CHECK(parse_rational_vector("1/2, -3") == VecQ{Rat(1, 2), Rat(-3)});
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("abc"), InputError);
}

TEST_CASE("limit flags reach the library") {
    CHECK(run("measures " + fixture("p2.json") + " --limit-cells 3").exit_code == 3);
    CHECK(run("complex " + fixture("p3line.json") + " --limit-points 3").exit_code == 3);
}

TEST_CASE("environment variables set default limits") {
    std::string cmd = std::string("MOMC_LIMIT_CELLS=3 ") + MOMC_BIN + " measures " +
                      fixture("p2.json") + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    while (fread(buf.data(), 1, buf.size(), pipe) > 0) {}
    int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 3);
    // explicit config limits take precedence over the environment
    std::string cmd2 = std::string("MOMC_LIMIT_COMPONENTS=1 ") + MOMC_BIN + " complex " +
                       fixture("over_limit.json") + " 2>/dev/null";
    FILE* pipe2 = popen(cmd2.c_str(), "r");
    REQUIRE(pipe2 != nullptr);
    while (fread(buf.data(), 1, buf.size(), pipe2) > 0) {}
    CHECK(WEXITSTATUS(pclose(pipe2)) == 3);
}

TEST_CASE("verify passes on the bundled configurations") {
    CHECK(run("verify " + fixture("p2.json")).exit_code == 0);
    CHECK(run("verify " + fixture("square.json")).exit_code == 0);
    CHECK(run("verify " + fixture("p3line.json")).exit_code == 0);
}
