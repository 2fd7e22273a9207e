#include <doctest.h>

#include "fixtures.hpp"
#include "semistatic/enlargement.hpp"
#include "semistatic/errors.hpp"
#include "semistatic/random_model.hpp"

using namespace semistatic;
using fixtures::vec;

namespace {

SingleJump initial_on_first(std::size_t n)
{
    SingleJump j{std::vector<Time>(n), zeros(n)};
    j.tau[0] = 0;
    j.mark[0] = 1;
    return j;
}

bool constant_on(const Vector& x, const std::vector<Cell>& cells)
{
    for (const auto& c : cells)
        for (auto a : c)
            if (x[a] != x[c.front()]) return false;
    return true;
}

}  // namespace

TEST_CASE("jump validation")
{
    const FilteredModel m(fixtures::binomial_spec());
    CHECK_NOTHROW(validate_jump(SingleJump{{1, std::nullopt}, Vector{1, 0}}, m));
    CHECK_THROWS_AS(validate_jump(SingleJump{{1, std::nullopt}, Vector{0, 0}}, m), InvalidModel);
    CHECK_THROWS_AS(validate_jump(SingleJump{{2, std::nullopt}, Vector{1, 0}}, m), InvalidModel);
    CHECK_THROWS_AS(validate_jump(SingleJump{{1, std::nullopt}, Vector{-1, 0}}, m), InvalidModel);
}

TEST_CASE("two-atom Azema supermartingale and compensated jump")
{
    const FilteredModel m(fixtures::binomial_spec());
    const SingleJump j{{1, std::nullopt}, Vector{1, 0}};
    const Measure q(vec({"1/2", "1/2"}));
    const auto z = azema(q, j, m);
    CHECK(z[0] == Vector{1, 1});
    CHECK(z[1] == Vector{0, 1});
    const auto a = compensator(q, j, m);
    CHECK(a[0] == Vector{0, 0});
    CHECK(a[1] == vec({"1/2", "1/2"}));
    const auto mm = jeulin_yor(q, j, m);
    CHECK(mm[1] == vec({"1/2", "-1/2"}));
    CHECK(first_move_time(m) == std::vector<Time>{1, 1});
}

TEST_CASE("a compensator jump against a dead Azema value is singular")
{
    const Measure q(Vector{1});
    const AtomJump j{{1}, Vector{1}};
    const std::vector<Vector> a{Vector{0}, Vector{1}};
    const std::vector<Vector> z{Vector{0}, Vector{0}};
    CHECK_THROWS_AS(jeulin_yor_from(q, j, a, z), SingularCompensator);
}

TEST_CASE("compensator and Jeulin-Yor martingale on random triples")
{
    Rng rng(606);
    int checked = 0;
    for (int t = 0; t < 80; ++t) {
        const FilteredModel m = random_model(rng);
        const EnlargedModel e = enlarge(m, {random_jump(rng, m)});
        const Measure q = random_measure(rng, e.enlarged.allowed());
        const AtomJump j = e.jump(0);
        const AtomFiltration& f = e.base_cells;
        const AtomFiltration g = e.single_jump_cells(0);

        const auto z = azema(q, j.tau, f);
        for (std::size_t k = 0; k < z.size(); ++k) {
            CHECK(constant_on(z[k], f[k]));
            if (k > 0)
                for (auto x : q.support()) CHECK(conditional_expectation(f[k - 1], z[k], q)[x] <= z[k - 1][x]);
        }
        const auto a = compensator(q, j, f);
        CHECK(check_compensator(q, j, f, a).passed());
        const auto mm = jeulin_yor(q, j, f);
        CHECK(check_jeulin_yor(q, mm, f, g));
        CHECK(traces_agree(j.tau, f, g));
        ++checked;
    }
    CHECK(checked == 80);
}

TEST_CASE("predictable reduction matches on {tau >= k}")
{
    Rng rng(12);
    for (int t = 0; t < 40; ++t) {
        const FilteredModel m = random_model(rng);
        const EnlargedModel e = enlarge(m, {random_jump(rng, m)});
        const AtomJump j = e.jump(0);
        const AtomFiltration g = e.single_jump_cells(0);
        const std::size_t n = e.enlarged.atom_count();
        std::vector<Vector> h;
        for (std::size_t k = 1; k <= m.steps(); ++k) {
            Vector v(n);
            for (const auto& c : g[k - 1]) {
                const Rational x = draw(rng, -3, 3);
                for (auto a : c) v[a] = x;
            }
            h.push_back(v);
        }
        const auto r = predictable_reduction(h, j.tau, e.base_cells, g);
        REQUIRE(r.size() == h.size());
        for (std::size_t k = 1; k <= m.steps(); ++k) {
            CHECK(constant_on(r[k - 1], e.base_cells[k - 1]));
            for (std::size_t a = 0; a < n; ++a)
                if (!j.tau[a] || *j.tau[a] >= k) CHECK(r[k - 1][a] == h[k - 1][a]);
        }
    }
}

TEST_CASE("initial enlargement of the trinomial")
{
    const FilteredModel m(fixtures::trinomial_spec());
    const auto c = informed_compare(m, {initial_on_first(3)}, {{"abs_S1", Vector{1, 0, 1}}});
    CHECK(c.base_vertices.size() == 2);
    REQUIRE(c.enlarged_vertices.size() == 1);
    CHECK(c.enlarged_vertices.vertices[0].measure.weights() == vec({"0", "1", "0"}));
    CHECK(c.claims_free);
    REQUIRE(c.predicted.size() == 1);
    CHECK(c.predicted[0].weights() == vec({"0", "1", "0"}));
    REQUIRE(c.corollary_holds);
    CHECK(*c.corollary_holds);
    REQUIRE(c.prices.size() == 1);
    CHECK(c.prices[0].base.value == 1);
    CHECK(c.prices[0].enlarged.value == 0);

    const EnlargedModel e = enlarge(m, {initial_on_first(3)});
    CHECK(filtrations_coincide(Measure(vec({"0", "1", "0"})), e.base_cells, atom_filtration(e.enlarged)));
    CHECK_FALSE(filtrations_coincide(Measure(vec({"1/2", "0", "1/2"})), e.base_cells, atom_filtration(e.enlarged)));
}

TEST_CASE("insider information on the informed model is an arbitrage")
{
    const FilteredModel m(fixtures::informed_spec());
    const auto c = informed_compare(m, {initial_on_first(4)});
    CHECK(c.base_vertices.size() == 1);
    CHECK(c.enlarged_vertices.empty());
    CHECK_FALSE(c.claims_free);
    CHECK_FALSE(c.corollary_holds);
    CHECK(c.arbitrage.arbitrage);
    REQUIRE(c.arbitrage.certificate);
}

TEST_CASE("claim-free enlargements keep exactly the coinciding vertices")
{
    Rng rng(515);
    RandomModelOptions o;
    o.max_claims = 0;
    for (int t = 0; t < 60; ++t) {
        const FilteredModel m = random_model(rng, o);
        std::vector<SingleJump> jumps{random_jump(rng, m)};
        if (draw(rng, 0, 1) == 1) jumps.push_back(random_jump(rng, m));
        const auto c = informed_compare(m, jumps);
        REQUIRE(c.corollary_holds);
        CHECK(*c.corollary_holds);
        CHECK(c.predicted.size() == c.enlarged_vertices.size());
        for (std::size_t i = 0; i < c.predicted.size(); ++i)
            CHECK(c.predicted[i] == c.enlarged_vertices.vertices[i].measure);
        for (bool b : c.enlarged_coincide) CHECK(b);
    }
}
