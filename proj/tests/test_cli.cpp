#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "semistatic/cli.hpp"

using namespace semistatic;

namespace {

std::string scenario_path(const std::string& name) { return std::string(SCENARIO_DIR) + "/" + name + ".json"; }

struct Run {
    int code;
    std::string out;
    std::string err;
    Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("extremes lists two trinomial vertices in canonical order")
{
    const Run r = run({"extremes", scenario_path("trinomial")});
    REQUIRE(r.code == 0);
    const Json j = r.json();
    CHECK(j["count"] == 2);
    CHECK(j["vertices"][0]["weights"] == Json::array({"1/2", "0", "1/2"}));
    CHECK(j["vertices"][1]["weights"] == Json::array({"0", "1", "0"}));
}

TEST_CASE("duality on |S_1| closes the gap")
{
    const Run r = run({"duality", "--payoff", "abs_S1", scenario_path("trinomial")});
    REQUIRE(r.code == 0);
    const Json j = r.json();
    CHECK(j["primal"] == "1");
    CHECK(j["dual"] == "1");
    CHECK(j["gap"] == "0");

    const Run c = run({"duality", "--payoff", "abs_S1", scenario_path("trinomial_calibrated")});
    CHECK(c.json()["primal"] == "1/2");
}

TEST_CASE("multinomial suite passes")
{
    const Run r = run({"verify", "--suite", "multinomial", "--pmax", "5", "--mmax", "6"});
    CHECK(r.code == 0);
    CHECK(r.json()["suites"][0]["passed"] == true);
}

TEST_CASE("complete, replicate, tree and informed-compare")
{
    const Json c = run({"complete", "--measure", "1/4,1/2,1/4", scenario_path("trinomial_calibrated")}).json();
    CHECK(c["extreme"] == true);
    CHECK(c["complete"] == true);

    const Json nc = run({"complete", "--measure", "1/4,1/2,1/4", scenario_path("trinomial")}).json();
    CHECK(nc["complete"] == false);
    CHECK(nc["direction"] == Json::array({"1", "-2", "1"}));

    const Json rep = run({"replicate", "--payoff", "middle", scenario_path("trinomial_calibrated")}).json();
    CHECK(rep["strategy"]["cash"] == "1/2");
    CHECK(rep["strategy"]["static"] == Json::array({"-1"}));

    const Json t = run({"tree", "--measure", "0", scenario_path("jump_counterexample")}).json();
    CHECK(t["complete"] == true);
    CHECK(t["found"] == false);

    const Run inf = run({"informed-compare", scenario_path("informed_arbitrage")});
    CHECK(inf.code == 0);
    CHECK(inf.json()["ext_G"].empty());
    CHECK(inf.json()["arbitrage"]["arbitrage"] == true);

    const Run ie = run({"informed-compare", scenario_path("initial_enlargement")});
    CHECK(ie.json()["corollary_holds"] == true);

    const Run en = run({"enlarge", scenario_path("initial_enlargement")});
    CHECK(en.code == 0);
    CHECK(en.json()["passed"] == true);
}

TEST_CASE("exit codes")
{
    CHECK(run({}).code == 2);
    CHECK(run({"extremes", "/nonexistent.json"}).code == 2);
    CHECK(run({"price", scenario_path("trinomial")}).code == 2);
    CHECK(run({"price", "--payoff", "nope", scenario_path("trinomial")}).code == 2);
    CHECK(run({"complete", "--measure", "1,0,0", scenario_path("trinomial")}).code == 2);
    CHECK(run({"enlarge", scenario_path("trinomial")}).code == 2);
    CHECK(run({"verify", "--suite", "nope"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("text format")
{
    const Run r = run({"--format", "text", "price", "--payoff", "abs_S1", scenario_path("trinomial")});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("value: 1\n") != std::string::npos);
}

TEST_CASE("reports do not depend on the thread count")
{
    const std::vector<std::string> args{"verify", "--suite", "all", "--trials", "30", "--seed", "3"};
    setenv("SEMISTATIC_THREADS", "1", 1);
    const Run a = run(args);
    setenv("SEMISTATIC_THREADS", "3", 1);
    const Run b = run(args);
    unsetenv("SEMISTATIC_THREADS");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}
