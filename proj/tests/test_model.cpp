#include <doctest.h>

#include "fixtures.hpp"
#include "semistatic/errors.hpp"
#include "semistatic/random_model.hpp"

using namespace semistatic;
using fixtures::part;
using fixtures::vec;

TEST_CASE("validate_model accepts the binomial model")
{
    CHECK(validate_model(fixtures::binomial_spec()).ok());
    CHECK(validate_model(fixtures::trinomial_spec(true)).ok());
    CHECK(validate_model(fixtures::glued_spec()).ok());
    CHECK(validate_model(fixtures::jump_spec()).ok());
}

TEST_CASE("validate_model reports adaptedness at k=1")
{
    ModelSpec s = fixtures::binomial_spec();
    s.filtration[1] = part({{0, 1}});
    const auto r = validate_model(s);
    REQUIRE(r.has("adaptedness"));
    CHECK(r.issues.front().index == 1);
    CHECK_THROWS_AS(FilteredModel{s}, InvalidModel);
}

TEST_CASE("validate_model reports refinement at k=1")
{
    ModelSpec s = fixtures::binomial_spec();
    s.filtration[0] = part({{0}, {1}});
    s.filtration[1] = part({{0, 1}});
    s.prices.values[0][1] = vec({"0", "0"});
    const auto r = validate_model(s);
    REQUIRE(r.issues.size() == 1);
    CHECK(r.issues[0].check == "refinement");
    CHECK(r.issues[0].index == 1);
}

TEST_CASE("validate_model catches the remaining invariants")
{
    ModelSpec s = fixtures::trinomial_spec();
    s.grid.times = {Rational(0), Rational(0)};
    CHECK(validate_model(s).has("times"));

    s = fixtures::trinomial_spec();
    s.filtration[1] = part({{0}, {1}});
    CHECK(validate_model(s).has("partition"));

    s = fixtures::trinomial_spec();
    s.prices.values[0][0] = vec({"1", "1", "1"});
    CHECK(validate_model(s).has("initial-price"));

    s = fixtures::trinomial_spec();
    s.filtration[1] = part({{0, 1}, {2}});
    s.prices.values[0][1] = vec({"0", "0", "-1"});
    s.claims = {vec({"1", "0", "0"})};
    CHECK(validate_model(s).has("claims"));

    s = fixtures::trinomial_spec();
    s.allowed = {false, false, false};
    CHECK(validate_model(s).has("prior-support"));
}

TEST_CASE("natural filtration")
{
    const ModelSpec tri = fixtures::trinomial_spec();
    const Filtration f = natural_filtration(tri.prices, 3);
    REQUIRE(f.size() == 2);
    CHECK(f[0] == part({{0, 1, 2}}));
    CHECK(f[1] == part({{0}, {1}, {2}}));

    PriceProcess flat{{{vec({"0", "0"}), vec({"0", "0"}), vec({"0", "0"})}}};
    for (const auto& p : natural_filtration(flat, 2)) CHECK(p == part({{0, 1}}));

    // two paths share the prefix (0; 1; 0), one path goes (0; -1; 0)
    PriceProcess walk{{{vec({"0", "0", "0"}), vec({"1", "1", "-1"}), vec({"0", "0", "0"})}}};
    const Filtration g = natural_filtration(walk, 3);
    CHECK(g[0] == part({{0, 1, 2}}));
    CHECK(g[1] == part({{0, 1}, {2}}));
    CHECK(g[2] == part({{0, 1}, {2}}));

    Rng rng(7);
    for (int t = 0; t < 30; ++t) {
        const FilteredModel m = random_model(rng);
        ModelSpec s = m.spec();
        s.filtration = natural_filtration(s.prices, s.outcomes.size(), s.grid.steps());
        const auto r = validate_model(s);
        CHECK_FALSE(r.has("refinement"));
        CHECK_FALSE(r.has("adaptedness"));
    }
}

TEST_CASE("atoms merge outcomes that P_K does not separate")
{
    ModelSpec s = fixtures::trinomial_spec();
    s.filtration[1] = part({{0}, {1, 2}});
    s.prices.values[0][1] = vec({"1", "-1", "-1"});
    const FilteredModel m(s);
    CHECK(m.atom_count() == 2);
    CHECK(m.atom_labels()[1] == "m+d");
    CHECK(m.price(0, 1) == Vector{1, -1});
    CHECK_THROWS_AS(m.to_atoms(vec({"1", "2", "3"})), NotMeasurable);
}

TEST_CASE("conditional expectation examples")
{
    const FilteredModel tri(fixtures::trinomial_spec());
    const Measure q(vec({"1/4", "1/2", "1/4"}));
    const Vector x{1, 0, -1};
    CHECK(conditional_expectation(tri, x, 0, q) == Vector{0, 0, 0});
    CHECK(conditional_expectation(tri, x, 1, q) == x);

    const Measure edge(vec({"1/2", "0", "1/2"}));
    CHECK(conditional_expectation(tri, Vector{1, 1, 1}, 1, edge) == Vector{1, 0, 1});
    CHECK(conditional_expectation(tri, Vector{1, 1, 1}, 0, edge) == Vector{1, 1, 1});
}

TEST_CASE("tower property and linearity on random models")
{
    Rng rng(11);
    for (int t = 0; t < 40; ++t) {
        const FilteredModel m = random_model(rng);
        const Measure q = random_measure(rng, m.allowed());
        const Vector x = random_payoff(rng, m);
        const Vector y = random_payoff(rng, m);
        const Cell support = q.support();
        for (std::size_t k2 = 0; k2 <= m.steps(); ++k2)
            for (std::size_t k1 = 0; k1 <= k2; ++k1) {
                const Vector lhs = conditional_expectation(m, conditional_expectation(m, x, k2, q), k1, q);
                const Vector rhs = conditional_expectation(m, x, k1, q);
                for (auto a : support) CHECK(lhs[a] == rhs[a]);
            }
        const Vector combo = add(scale(x, ratio(2, 3)), scale(y, Rational(-5)));
        for (std::size_t k = 0; k <= m.steps(); ++k)
            CHECK(conditional_expectation(m, combo, k, q) ==
                  add(scale(conditional_expectation(m, x, k, q), ratio(2, 3)),
                      scale(conditional_expectation(m, y, k, q), Rational(-5))));
    }
}

TEST_CASE("measure invariants")
{
    CHECK_THROWS_AS(Measure(vec({"1/2", "1/3"})), InvalidMeasure);
    CHECK_THROWS_AS(Measure(vec({"3/2", "-1/2"})), InvalidMeasure);
    ModelSpec s = fixtures::trinomial_spec();
    s.allowed = {true, false, true};
    const FilteredModel m(s);
    CHECK_THROWS_AS(check_measure(Measure(vec({"0", "1", "0"})), m), InvalidMeasure);
    CHECK_NOTHROW(check_measure(Measure(vec({"1/2", "0", "1/2"})), m));
}
