#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "semistatic/hedging.hpp"
#include "semistatic/model.hpp"
#include "semistatic/polytope.hpp"

namespace semistatic {

struct SuperhedgeResult {
    bool unbounded = false;
    Rational price;
    SemiStaticStrategy strategy;
    Cell tight_atoms;  // allowed atoms where the strategy payoff equals the claim
};

// min x s.t. x + sum a_i psi_i + (H . S)_T >= payoff on every allowed atom.
SuperhedgeResult superhedge(const Vector& payoff, const FilteredModel& model);

struct RobustPriceResult {
    bool empty = false;  // no calibrated martingale measure: the value is -infinity
    Rational value;
    std::vector<Measure> argmax;  // canonical vertex order
};

RobustPriceResult robust_price(const Vector& payoff, const FilteredModel& model);
RobustPriceResult robust_price(const Vector& payoff, const VertexSet& vertices);

struct DualityReport {
    Rational primal;
    Rational dual;
    Rational gap;
    SemiStaticStrategy strategy;
    Measure argmax;
    Cell tight_atoms;
    bool dominates = false;                 // strategy payoff >= payoff on allowed atoms
    bool complementary_slackness = false;   // argmax charges only tight atoms
    bool holds() const { return sgn(gap) == 0 && dominates && complementary_slackness; }
};

// Throws EmptyMeasureSet when the model admits no calibrated martingale measure.
DualityReport verify_duality(const Vector& payoff, const FilteredModel& model);

struct ArbitrageResult {
    bool arbitrage = false;
    std::size_t vertex_count = 0;
    std::optional<SemiStaticStrategy> certificate;  // zero cost, payoff >= 0 and somewhere > 0 on allowed atoms
    Vector certificate_payoff;
};

ArbitrageResult detect_arbitrage(const FilteredModel& model);

}  // namespace semistatic
