#include <doctest.h>

#include "fixtures.hpp"
#include "semistatic/errors.hpp"
#include "semistatic/random_model.hpp"
#include "semistatic/tree.hpp"

using namespace semistatic;
using fixtures::vec;

namespace {

AtomicTree glued_tree()
{
    AtomicTree t;
    const auto root = t.add({{0, 1, 2, 3}, 0, std::nullopt});
    t.add({{0, 1}, 1, root});
    t.add({{2, 3}, 1, root});
    return t;
}

}  // namespace

TEST_CASE("birth times")
{
    const FilteredModel m(fixtures::glued_spec());
    CHECK(birth_time({0, 1, 2, 3}, m) == 0);
    CHECK(birth_time({0, 1}, m) == 1);
    CHECK(birth_time({0}, m) == 2);
    CHECK(birth_time({0, 2}, m) == 2);
    CHECK(birth_time_of_outcomes({2, 3}, m) == 1);

    ModelSpec s = fixtures::trinomial_spec();
    s.filtration[1] = fixtures::part({{0, 1}, {2}});
    s.prices.values[0][1] = vec({"1", "1", "-1"});
    const FilteredModel coarse(s);
    CHECK_THROWS_AS(birth_time_of_outcomes({0}, coarse), NotMeasurable);
}

TEST_CASE("glued tree satisfies the sufficient conditions")
{
    const FilteredModel m(fixtures::glued_spec());
    const Measure q(vec({"1/6", "1/6", "1/3", "1/3"}));
    const AtomicTree t = glued_tree();
    CHECK(validate_atomic_tree(t, q, m).ok());
    CHECK(is_full(t, q, m));
    CHECK(t.dim() == 2);
    CHECK(t.zeta(4) == std::vector<std::optional<std::size_t>>{1, 1, 1, 1});
    CHECK(sigma_tree_expectation(Vector{1, 2, 3, 4}, t, q) == vec({"3/2", "3/2", "7/2", "7/2"}));
    CHECK(stopped_expectation(Vector{1, 2, 3, 4}, t, q, m) == vec({"3/2", "3/2", "7/2", "7/2"}));

    const auto c = check_theorem_conditions(t, q, m);
    CHECK(c.passed());
    CHECK(c.claims_rank == 1);
    CHECK(c.required_rank == 1);
}

TEST_CASE("tree axiom violations are reported")
{
    const FilteredModel m(fixtures::glued_spec());
    const Measure q(vec({"1/6", "1/6", "1/3", "1/3"}));

    AtomicTree wrong_birth;
    const auto r = wrong_birth.add({{0, 1, 2, 3}, 0, std::nullopt});
    wrong_birth.add({{0, 1}, 2, r});
    CHECK_FALSE(validate_atomic_tree(wrong_birth, q, m).ok());

    AtomicTree crossing;
    const auto c = crossing.add({{0, 1, 2, 3}, 0, std::nullopt});
    crossing.add({{0, 1}, 1, c});
    crossing.add({{0, 2}, 2, c});
    CHECK_FALSE(validate_atomic_tree(crossing, q, m).ok());

    AtomicTree partial;
    const auto p = partial.add({{0, 1, 2, 3}, 0, std::nullopt});
    partial.add({{0, 1}, 1, p});
    CHECK(validate_atomic_tree(partial, q, m).ok());
    CHECK_FALSE(is_full(partial, q, m));
    CHECK(check_theorem_conditions(partial, q, m).first_failure() != "");
}

TEST_CASE("extract_tree on the bundled models")
{
    const FilteredModel glued(fixtures::glued_spec());
    const auto g = extract_tree(Measure(vec({"1/6", "1/6", "1/3", "1/3"})), glued);
    REQUIRE(g.found());
    CHECK(*g.tree == glued_tree());
    REQUIRE(g.hedges.size() == 1);
    CHECK(g.hedges[0].is_zero());

    const FilteredModel jump(fixtures::jump_spec());
    const auto j = extract_tree(Measure(vec({"1/3", "1/6", "1/6", "1/6", "1/6"})), jump);
    CHECK_FALSE(j.found());
    CHECK(j.diagnostic.find("k=2") != std::string::npos);
    CHECK(j.diagnostic.find("not a leaf") != std::string::npos);

    const FilteredModel tri(fixtures::trinomial_spec(true));
    const auto t = extract_tree(Measure(vec({"1/4", "1/2", "1/4"})), tri);
    CHECK_FALSE(t.found());
    CHECK_FALSE(t.diagnostic.empty());

    CHECK_THROWS_AS(extract_tree(Measure(vec({"1/4", "1/2", "1/4"})), FilteredModel(fixtures::trinomial_spec())),
                    NotComplete);
}

TEST_CASE("extracted trees satisfy the conditions and represent the claims")
{
    Rng rng(77);
    int found = 0;
    for (int t = 0; t < 80; ++t) {
        const FilteredModel m = random_model(rng);
        for (const auto& x : enumerate_extreme_points(build_constraints(m)).vertices) {
            const auto e = extract_tree(x.measure, m);
            if (!e.found()) {
                CHECK_FALSE(e.diagnostic.empty());
                continue;
            }
            ++found;
            CHECK(validate_atomic_tree(*e.tree, x.measure, m).ok());
            CHECK(check_theorem_conditions(*e.tree, x.measure, m).passed());
            REQUIRE(e.hedges.size() == m.claim_count());
            for (std::size_t i = 0; i < m.claim_count(); ++i) {
                const Vector rep =
                    add(sigma_tree_expectation(m.claims()[i], *e.tree, x.measure), terminal_gain(e.hedges[i], m));
                for (auto a : x.measure.support()) CHECK(rep[a] == m.claims()[i][a]);
            }
        }
    }
    CHECK(found > 0);
}
