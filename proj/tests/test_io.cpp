#include <doctest.h>

#include "fixtures.hpp"
#include "semistatic/errors.hpp"
#include "semistatic/io.hpp"
#include "semistatic/random_model.hpp"

using namespace semistatic;
using fixtures::vec;

namespace {

std::string scenario_path(const std::string& name) { return std::string(SCENARIO_DIR) + "/" + name + ".json"; }

// Serialize to text and parse back, so the round trip covers the byte format.
Json through_text(const Json& j) { return Json::parse(j.dump(2)); }

void same_model(const ModelSpec& a, const ModelSpec& b)
{
    CHECK(a.outcomes == b.outcomes);
    CHECK(a.grid.times == b.grid.times);
    CHECK(a.filtration == b.filtration);
    CHECK(a.prices.values == b.prices.values);
    CHECK(a.claims == b.claims);
    const auto all = [](const ModelSpec& s) {
        return s.allowed.empty() ? std::vector<bool>(s.outcomes.size(), true) : s.allowed;
    };
    CHECK(all(a) == all(b));
}

}  // namespace

TEST_CASE("rational codec")
{
    CHECK(rational_to_json(ratio(-6, 4)) == "-3/2");
    CHECK(rational_from_json(Json(7), "x") == 7);
    CHECK(rational_from_json(Json("2/4"), "x") == ratio(1, 2));
    CHECK_THROWS_AS(rational_from_json(Json(0.5), "x"), ParseError);
    CHECK_THROWS_AS(rational_from_json(Json(true), "x"), ParseError);
    CHECK_THROWS_AS(rational_from_json(Json("1/0"), "x"), ParseError);
}

TEST_CASE("bundled scenarios match the hand-built models")
{
    same_model(load_scenario(scenario_path("trinomial")).spec, fixtures::trinomial_spec());
    same_model(load_scenario(scenario_path("trinomial_calibrated")).spec, fixtures::trinomial_spec(true));
    same_model(load_scenario(scenario_path("binomial")).spec, fixtures::binomial_spec());
    same_model(load_scenario(scenario_path("glued_two_vol")).spec, fixtures::glued_spec());
    same_model(load_scenario(scenario_path("jump_counterexample")).spec, fixtures::jump_spec());
    same_model(load_scenario(scenario_path("informed_arbitrage")).spec, fixtures::informed_spec());
    same_model(load_scenario(scenario_path("initial_enlargement")).spec, fixtures::trinomial_spec());

    const Scenario s = load_scenario(scenario_path("informed_arbitrage"));
    REQUIRE(s.jumps.size() == 1);
    CHECK(s.jumps[0].tau == std::vector<Time>{0, std::nullopt, std::nullopt, std::nullopt});
    CHECK(s.jumps[0].mark == Vector{1, 0, 0, 0});
}

TEST_CASE("scenario round trip")
{
    for (const char* name : {"trinomial", "glued_two_vol", "jump_counterexample", "informed_arbitrage",
                             "initial_enlargement"}) {
        const Scenario s = load_scenario(scenario_path(name));
        const Json j = scenario_to_json(s);
        const Scenario back = parse_scenario(j.dump(2));
        same_model(back.spec, s.spec);
        CHECK(back.name == s.name);
        CHECK(back.payoffs == s.payoffs);
        CHECK(scenario_to_json(back) == j);
    }
}

TEST_CASE("parse errors carry the field path")
{
    const auto message = [](const std::string& text) {
        try {
            parse_scenario(text);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message(R"({"outcomes": ["a", "b"], "times": [0, 1], "filtration": "natural",
                     "prices": [[[0, 0], [1, "x"]]]})")
              .find("prices[0][1][1]") != std::string::npos);
    CHECK(message(R"({"outcomes": ["a"], "times": [0, 1], "filtration": [[["a"]], [["z"]]]})")
              .find("filtration[1][0][0]") != std::string::npos);
    CHECK(message(R"({"outcomes": ["a"], "times": [0, 1]})").find("filtration") != std::string::npos);
    CHECK(message(R"({"outcomes": ["a"], "times": [0, 1], "filtration": "natural", "extra": 1})")
              .find("extra") != std::string::npos);
    CHECK(message("{\n\"outcomes\": [\"a\"],\n  \"times\": [0,, 1]}").find("line 3") != std::string::npos);
    CHECK(message(R"({"outcomes": ["a"], "times": [0, 1], "filtration": "natural",
                     "jumps": [{"tau": ["never"], "mark": [1]}]})")
              .find("jumps[0].tau[0]") != std::string::npos);
    CHECK_THROWS_AS(load_scenario("/nonexistent/file.json"), ParseError);
}

TEST_CASE("measure, strategy and tree round trips on random models")
{
    Rng rng(90210);
    int trees = 0;
    for (int t = 0; t < 50; ++t) {
        const FilteredModel m = random_model(rng);
        const Measure q = random_measure(rng, m.allowed());
        CHECK(measure_from_json(through_text(measure_to_json(q, m)), m) == q);

        SemiStaticStrategy s{Rational(draw(rng, -5, 5)), zeros(m.claim_count()), DynamicPosition::zero(m)};
        for (auto& x : s.statics) x = ratio(draw(rng, -5, 5), draw(rng, 1, 4));
        for (auto& step : s.dynamic.raw())
            for (auto& cell : step)
                for (auto& x : cell) x = draw(rng, 0, 1) ? ratio(draw(rng, -5, 5), draw(rng, 1, 4)) : Rational(0);
        CHECK(strategy_from_json(through_text(strategy_to_json(s)), m) == s);

        for (const auto& v : enumerate_extreme_points(build_constraints(m)).vertices) {
            const auto e = extract_tree(v.measure, m);
            if (!e.found()) continue;
            ++trees;
            CHECK(tree_from_json(through_text(tree_to_json(*e.tree, m)), m) == *e.tree);
        }
    }
    CHECK(trees > 0);
}

TEST_CASE("payoff and measure resolution")
{
    const Scenario s = load_scenario(scenario_path("trinomial"));
    const FilteredModel m(s.spec);
    CHECK(resolve_payoff(s, "abs_S1") == Vector{1, 0, 1});
    CHECK(resolve_payoff(s, "1/2,0,-1") == vec({"1/2", "0", "-1"}));
    CHECK_THROWS_AS(resolve_payoff(s, "nope"), ParseError);
    CHECK_THROWS_AS(resolve_payoff(s, "1,2"), ParseError);

    const VertexSet v = enumerate_extreme_points(build_constraints(m));
    CHECK(resolve_measure("1", v, m).weights() == vec({"0", "1", "0"}));
    CHECK(resolve_measure("1/4,1/2,1/4", v, m).weights() == vec({"1/4", "1/2", "1/4"}));
    CHECK_THROWS_AS(resolve_measure("2", v, m), ParseError);
    CHECK_THROWS_AS(resolve_measure("1/2,1/2,1/2", v, m), InvalidMeasure);
}

TEST_CASE("tree rendering")
{
    const FilteredModel m(fixtures::glued_spec());
    AtomicTree t;
    const auto r = t.add({{0, 1, 2, 3}, 0, std::nullopt});
    t.add({{0, 1}, 1, r});
    t.add({{2, 3}, 1, r});
    CHECK(render_tree(t, m) == "{1u, 1d, 2u, 2d} t=0\n  {1u, 1d} t=1\n  {2u, 2d} t=1\n");
}
