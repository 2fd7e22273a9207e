#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "semistatic/enlargement.hpp"
#include "semistatic/model.hpp"

namespace semistatic {

using Rng = std::mt19937_64;

// Reproducible across standard libraries, unlike std::uniform_int_distribution.
long draw(Rng& rng, long lo, long hi);
Rng trial_rng(std::uint64_t seed, std::uint64_t trial);

struct RandomModelOptions {
    std::size_t max_atoms = 8;
    std::size_t max_steps = 3;
    std::size_t max_claims = 2;
    std::size_t max_assets = 2;
    bool hidden_outcomes = true;  // let some atoms hold two raw outcomes
    bool thin_prior = true;       // sometimes forbid one outcome
};

// Random finite model with a nonempty calibrated martingale measure set.
FilteredModel random_model(Rng& rng, const RandomModelOptions& options = {});

// Integer payoff per atom in [-3, 3].
Vector random_payoff(Rng& rng, const FilteredModel& model);

// Random jump per raw outcome: free tau, a first-passage time of S, or an initial enlargement.
SingleJump random_jump(Rng& rng, const FilteredModel& model);

// Positive rational weights on a random nonempty subset of allowed atoms.
Measure random_measure(Rng& rng, const std::vector<bool>& allowed);

// Strictly positive random convex combination.
Vector random_convex_combination(Rng& rng, const std::vector<Vector>& points);

}  // namespace semistatic
