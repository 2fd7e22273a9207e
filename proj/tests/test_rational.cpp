#include <doctest.h>

#include "semistatic/errors.hpp"
#include "semistatic/linalg.hpp"
#include "semistatic/rational.hpp"

using namespace semistatic;

TEST_CASE("canonical rational text")
{
    CHECK(to_string(parse_rational("2/4")) == "1/2");
    CHECK(to_string(parse_rational("-6")) == "-6");
    CHECK(to_string(parse_rational("12/4")) == "3");
    CHECK(to_string(parse_rational("-3/9")) == "-1/3");
    CHECK(to_string(parse_rational("0/7")) == "0");
    CHECK(to_string(parse_rational("+5")) == "5");
    CHECK(to_string(ratio(6, -4)) == "-3/2");
}

TEST_CASE("rational parser rejects garbage")
{
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/-2"), ParseError);
    CHECK_THROWS_AS(parse_rational("a/b"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/2/3"), ParseError);
}

TEST_CASE("round trip of canonical strings")
{
    for (const char* s : {"0", "1", "-1", "7/3", "-22/7", "123456789012345678901234567890/11"})
        CHECK(to_string(parse_rational(s)) == std::string(s));
}

TEST_CASE("primitive vectors")
{
    CHECK(primitive({ratio(1, 2), Rational(0), ratio(-3, 4)}) == Vector{2, 0, -3});
    CHECK(primitive_oriented({Rational(0), ratio(-2, 3), ratio(4, 3)}) == Vector{0, 1, -2});
}

TEST_CASE("rank, null space and basic solutions")
{
    const Matrix m = Matrix::from_rows({{1, 0, -1}, {1, 1, 1}});
    CHECK(rank(m) == 2);
    const auto ns = null_space(m);
    REQUIRE(ns.size() == 1);
    CHECK(primitive_oriented(ns[0]) == Vector{1, -2, 1});
    CHECK(is_zero(m.multiply(ns[0])));

    const auto x = solve(m, {0, 1});
    REQUIRE(x);
    CHECK(m.multiply(*x) == Vector{0, 1});
    CHECK((*x)[2] == 0);  // free variable left at zero

    CHECK_FALSE(solve(Matrix::from_rows({{1, 1}, {2, 2}}), {1, 3}).has_value());
}

TEST_CASE("weighted projection leaves an orthogonal residual")
{
    const Vector w{ratio(1, 4), ratio(1, 2), ratio(1, 4)};
    const std::vector<Vector> family{{1, 1, 1}, {1, 0, -1}};
    const Projection p = project(family, {0, 1, 0}, w);
    for (const auto& f : family) CHECK(weighted_dot(w, p.residual, f) == 0);
    CHECK(add(p.fitted, p.residual) == Vector{0, 1, 0});
    // E[1_m] = 1/2, covariance with S_1 is zero
    CHECK(p.fitted == Vector{ratio(1, 2), ratio(1, 2), ratio(1, 2)});
}
