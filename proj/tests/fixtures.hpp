#pragma once

#include <string>
#include <vector>

#include "semistatic/model.hpp"

namespace fixtures {

using semistatic::Cell;
using semistatic::FilteredModel;
using semistatic::ModelSpec;
using semistatic::Partition;
using semistatic::Rational;
using semistatic::Vector;

inline Rational q(const char* s) { return semistatic::parse_rational(s); }

inline Vector vec(std::initializer_list<const char*> xs)
{
    Vector v;
    for (auto x : xs) v.push_back(q(x));
    return v;
}

inline Partition part(std::vector<Cell> cells) { return Partition::canonical(std::move(cells)); }

inline ModelSpec base_spec(std::vector<std::string> outcomes, std::size_t steps)
{
    ModelSpec s;
    s.outcomes = std::move(outcomes);
    for (std::size_t k = 0; k <= steps; ++k) s.grid.times.emplace_back(static_cast<long>(k));
    return s;
}

// u, m, d with S_1 = 1, 0, -1
inline ModelSpec trinomial_spec(bool with_claim = false)
{
    ModelSpec s = base_spec({"u", "m", "d"}, 1);
    s.filtration = {part({{0, 1, 2}}), part({{0}, {1}, {2}})};
    s.prices.values = {{vec({"0", "0", "0"}), vec({"1", "0", "-1"})}};
    if (with_claim) s.claims = {vec({"1/2", "-1/2", "1/2"})};
    return s;
}

inline ModelSpec binomial_spec()
{
    ModelSpec s = base_spec({"u", "d"}, 1);
    s.filtration = {part({{0, 1}}), part({{0}, {1}})};
    s.prices.values = {{vec({"0", "0"}), vec({"1", "-1"})}};
    return s;
}

// Branch into A1 = {1u, 1d} and A2 = {2u, 2d} at k = 1, then moves of size 2 resp. 1.
inline ModelSpec glued_spec()
{
    ModelSpec s = base_spec({"1u", "1d", "2u", "2d"}, 2);
    s.filtration = {part({{0, 1, 2, 3}}), part({{0, 1}, {2, 3}}), part({{0}, {1}, {2}, {3}})};
    s.prices.values = {{vec({"0", "0", "0", "0"}), vec({"0", "0", "0", "0"}), vec({"2", "-2", "1", "-1"})}};
    s.claims = {vec({"2", "2", "-1", "-1"})};
    return s;
}

// Jump at k = 1 on J, then volatility branches A / B at k = 3.
inline ModelSpec jump_spec()
{
    ModelSpec s = base_spec({"J", "Au", "Ad", "Bu", "Bd"}, 3);
    s.filtration = {part({{0, 1, 2, 3, 4}}), part({{0}, {1, 2, 3, 4}}), part({{0}, {1, 2}, {3, 4}}),
                    part({{0}, {1}, {2}, {3}, {4}})};
    const Vector s1 = vec({"2", "-1", "-1", "-1", "-1"});
    s.prices.values = {{vec({"0", "0", "0", "0", "0"}), s1, s1, vec({"2", "1", "-3", "0", "-2"})}};
    s.claims = {vec({"1/3", "4/3", "4/3", "-5/3", "-5/3"})};
    return s;
}

// Two-step walk S_1 = +-1, S_2 = S_1 +- 2 with claim (S_2 - 1)_+ - 1/2.
inline ModelSpec informed_spec()
{
    ModelSpec s = base_spec({"uu", "ud", "du", "dd"}, 2);
    s.filtration = {part({{0, 1, 2, 3}}), part({{0, 1}, {2, 3}}), part({{0}, {1}, {2}, {3}})};
    s.prices.values = {{vec({"0", "0", "0", "0"}), vec({"1", "1", "-1", "-1"}), vec({"3", "-1", "1", "-3"})}};
    s.claims = {vec({"3/2", "-1/2", "-1/2", "-1/2"})};
    return s;
}

}  // namespace fixtures
