#include <doctest.h>

#include "fixtures.hpp"
#include "semistatic/errors.hpp"
#include "semistatic/hedging.hpp"
#include "semistatic/random_model.hpp"

using namespace semistatic;
using fixtures::vec;

namespace {

bool agree_on(const Vector& a, const Vector& b, const Cell& support)
{
    for (auto i : support)
        if (a[i] != b[i]) return false;
    return true;
}

}  // namespace

TEST_CASE("terminal gain of a constant position")
{
    const FilteredModel m(fixtures::glued_spec());
    DynamicPosition h = DynamicPosition::zero(m);
    REQUIRE(h.steps() == 2);
    h.at(2, 0, 0) = 1;
    h.at(2, 1, 0) = -2;
    CHECK(terminal_gain(h, m) == Vector{2, -2, -2, 2});

    DynamicPosition bad = DynamicPosition::zero(m);
    bad.raw()[1].pop_back();
    CHECK_THROWS_AS(terminal_gain(bad, m), ShapeMismatch);
}

TEST_CASE("completeness in the trinomial")
{
    const FilteredModel plain(fixtures::trinomial_spec());
    CHECK(is_semistatically_complete(Measure(vec({"1/2", "0", "1/2"})), plain).complete);
    CHECK(is_semistatically_complete(Measure(vec({"0", "1", "0"})), plain).complete);
    const auto r = is_semistatically_complete(Measure(vec({"1/4", "1/2", "1/4"})), plain);
    CHECK_FALSE(r.complete);
    CHECK(r.rank == 2);
    CHECK(r.support_size == 3);
    CHECK_THROWS_AS(is_semistatically_complete(Measure(vec({"1", "0", "0"})), plain), NotCalibrated);

    const FilteredModel claimed(fixtures::trinomial_spec(true));
    CHECK(is_semistatically_complete(Measure(vec({"1/4", "1/2", "1/4"})), claimed).complete);
    CHECK_THROWS_AS(is_semistatically_complete(Measure(vec({"1/2", "0", "1/2"})), claimed), NotCalibrated);
}

TEST_CASE("replicating the middle indicator")
{
    const FilteredModel m(fixtures::trinomial_spec(true));
    const Measure q(vec({"1/4", "1/2", "1/4"}));
    const auto r = replicate(Vector{0, 1, 0}, q, m);
    REQUIRE(r.replicable());
    CHECK(r.strategy->cash == ratio(1, 2));
    CHECK(r.strategy->statics == Vector{-1});
    CHECK(r.strategy->dynamic.is_zero());
    CHECK(strategy_payoff(*r.strategy, m) == Vector{0, 1, 0});
    CHECK(is_zero(r.residual));
}

TEST_CASE("non-replicable payoff leaves a Q-orthogonal residual")
{
    const FilteredModel m(fixtures::trinomial_spec());
    const Measure q(vec({"1/4", "1/2", "1/4"}));
    const auto r = replicate(Vector{0, 1, 0}, q, m);
    CHECK_FALSE(r.replicable());
    // span{1, S_1}; residual of 1_m is proportional to (1,-2,1)
    CHECK(r.residual == vec({"-1/2", "1/2", "-1/2"}));
    CHECK(weighted_dot(r.residual, Vector{1, 1, 1}, q.weights()) == 0);
    CHECK(weighted_dot(r.residual, Vector{1, 0, -1}, q.weights()) == 0);
}

TEST_CASE("replication on random vertices and interior points")
{
    Rng rng(99);
    for (int t = 0; t < 40; ++t) {
        const FilteredModel m = random_model(rng);
        const VertexSet v = enumerate_extreme_points(build_constraints(m));
        REQUIRE_FALSE(v.empty());
        for (const auto& x : v.vertices) {
            const Vector payoff = random_payoff(rng, m);
            const auto r = replicate(payoff, x.measure, m);
            REQUIRE(r.replicable());
            CHECK(agree_on(strategy_payoff(*r.strategy, m), payoff, x.measure.support()));
            CHECK(r.strategy->cash == x.measure.expectation(payoff));
        }
        if (v.size() < 2) continue;
        std::vector<Vector> pts;
        for (const auto& x : v.vertices) pts.push_back(x.measure.weights());
        const Measure q(random_convex_combination(rng, pts));
        const Vector payoff = random_payoff(rng, m);
        const auto r = replicate(payoff, q, m);
        const HedgingSpan span = hedging_span(q, m);
        for (const auto& b : span.basis) CHECK(weighted_dot(r.residual, b, q.weights()) == 0);
        for (std::size_t a = 0; a < m.atom_count(); ++a)
            if (!q.charges(a)) CHECK(sgn(r.residual[a]) == 0);
        const auto rest = replicate(subtract(payoff, r.residual), q, m);
        CHECK(rest.replicable());
    }
}

TEST_CASE("extreme iff complete on random models")
{
    Rng rng(5);
    for (int t = 0; t < 40; ++t) {
        const FilteredModel m = random_model(rng);
        const auto report = verify_jacod_yor(m);
        CHECK(report.passed());
        CHECK(report.checks.size() >= report.vertex_count);
    }
    ModelSpec s = fixtures::binomial_spec();
    s.allowed = {false, true};
    CHECK_THROWS_AS(verify_jacod_yor(FilteredModel(s)), EmptyMeasureSet);
}

TEST_CASE("unhedgeable part of the trinomial claim")
{
    const FilteredModel m(fixtures::trinomial_spec(true));
    const auto d = decompose_unhedgeable(Measure(vec({"1/4", "1/2", "1/4"})), m);
    REQUIRE(d.residuals.size() == 1);
    CHECK(d.residuals[0] == vec({"1/2", "-1/2", "1/2"}));
    REQUIRE(d.blocks.size() == 1);
    CHECK(d.blocks[0].k == 1);
    CHECK(d.blocks[0].atoms == std::vector<Cell>{{0, 1, 2}});
    CHECK(d.blocks[0].single_jump);
    CHECK(d.orthogonal);
    CHECK(d.martingale);

    CHECK_THROWS_AS(decompose_unhedgeable(Measure(vec({"1/4", "1/2", "1/4"})), FilteredModel(fixtures::trinomial_spec())),
                    NotComplete);
}

TEST_CASE("unhedgeable part of the jump model sits at k=2")
{
    const FilteredModel m(fixtures::jump_spec());
    const Measure q(vec({"1/3", "1/6", "1/6", "1/6", "1/6"}));
    const auto d = decompose_unhedgeable(q, m);
    REQUIRE(d.residuals.size() == 1);
    CHECK(d.residuals[0] == vec({"0", "3/2", "3/2", "-3/2", "-3/2"}));
    REQUIRE(d.blocks.size() == 1);
    CHECK(d.blocks[0].k == 2);
    CHECK(d.blocks[0].atoms == std::vector<Cell>{{1, 2, 3, 4}});
    CHECK(agree_on(add(d.residuals[0], terminal_gain(d.hedges[0], m)), m.claims()[0], q.support()));
}

TEST_CASE("unhedgeable decomposition on random complete measures")
{
    Rng rng(31);
    int seen = 0;
    for (int t = 0; t < 60; ++t) {
        const FilteredModel m = random_model(rng);
        if (m.claim_count() == 0) continue;
        for (const auto& x : enumerate_extreme_points(build_constraints(m)).vertices) {
            const auto d = decompose_unhedgeable(x.measure, m);
            ++seen;
            CHECK(d.orthogonal);
            CHECK(d.martingale);
            REQUIRE(d.residuals.size() == m.claim_count());
            for (std::size_t i = 0; i < m.claim_count(); ++i) {
                CHECK(x.measure.expectation(d.residuals[i]) == 0);
                CHECK(agree_on(add(d.residuals[i], terminal_gain(d.hedges[i], m)), m.claims()[i],
                               x.measure.support()));
            }
            std::size_t dims = 0;
            for (const auto& b : d.blocks) dims += b.terminal.size();
            CHECK(dims == rank_of(d.residuals));
        }
    }
    CHECK(seen > 20);
}

TEST_CASE("replication picks the minimum-norm coefficients")
{
    // duplicate the claim: psi_1 = psi_2, so a_1 = a_2 splits the static position evenly
    ModelSpec s = fixtures::trinomial_spec(true);
    s.claims.push_back(s.claims[0]);
    const FilteredModel m(s);
    const auto r = replicate(Vector{0, 1, 0}, Measure(vec({"1/4", "1/2", "1/4"})), m);
    REQUIRE(r.replicable());
    CHECK(r.strategy->statics == vec({"-1/2", "-1/2"}));
    CHECK(r.strategy->cash == ratio(1, 2));
}
