#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "semistatic/model.hpp"
#include "semistatic/polytope.hpp"

namespace semistatic {

// Predictable integrand: value(k, cell of P_{k-1}, asset) for k = 1..K.
class DynamicPosition {
public:
    DynamicPosition() = default;
    static DynamicPosition zero(const FilteredModel& model);

    std::size_t steps() const { return values_.size(); }
    Rational& at(std::size_t k, std::size_t cell, std::size_t asset) { return values_.at(k - 1).at(cell).at(asset); }
    const Rational& at(std::size_t k, std::size_t cell, std::size_t asset) const
    {
        return values_.at(k - 1).at(cell).at(asset);
    }
    // [k-1][cell][asset]
    std::vector<std::vector<Vector>>& raw() { return values_; }
    const std::vector<std::vector<Vector>>& raw() const { return values_; }
    bool is_zero() const;

    bool operator==(const DynamicPosition&) const = default;

private:
    std::vector<std::vector<Vector>> values_;
};

struct SemiStaticStrategy {
    Rational cash;
    Vector statics;
    DynamicPosition dynamic;

    bool operator==(const SemiStaticStrategy&) const = default;
};

// sum_k H_k . (S_k - S_{k-1}) per atom. Throws ShapeMismatch on a malformed H.
Vector terminal_gain(const DynamicPosition& h, const FilteredModel& model);
Vector strategy_payoff(const SemiStaticStrategy& s, const FilteredModel& model);

struct GainLabel {
    std::size_t k;
    std::size_t cell;
    std::size_t asset;
};

// Elementary gains 1_A (S^j_k - S^j_{k-1}) in (k, cell, asset) order.
std::vector<Vector> elementary_gains(const FilteredModel& model, std::vector<GainLabel>* labels = nullptr);
DynamicPosition position_from_gain_coefficients(const FilteredModel& model, const Vector& coefficients);

struct HedgingSpan {
    std::vector<Vector> basis;  // over all atoms: 1, psi_i, then the elementary gains
    std::vector<std::string> labels;
    Cell support;
    std::size_t rank = 0;       // rank restricted to support
};

HedgingSpan hedging_span(const Measure& q, const FilteredModel& model);

struct CompletenessReport {
    bool complete = false;
    std::size_t rank = 0;
    std::size_t support_size = 0;
    std::size_t basis_size = 0;
};

// Throws NotCalibrated unless q is a calibrated martingale measure.
CompletenessReport is_semistatically_complete(const Measure& q, const FilteredModel& model);

struct ReplicationResult {
    std::optional<SemiStaticStrategy> strategy;
    Vector residual;  // Q-orthogonal component outside the span; zero on null atoms
    bool replicable() const { return strategy.has_value(); }
};

// Minimum-norm coefficients over (1, psi, gains) when X is replicable on the support.
ReplicationResult replicate(const Vector& payoff, const Measure& q, const FilteredModel& model);

struct JacodYorCheck {
    std::string subject;
    Measure measure;
    bool vertex = false;  // whether the measure came from the vertex list
    bool extreme = false;
    bool complete = false;
    bool passed() const { return extreme == complete && extreme == vertex; }
};

struct JacodYorReport {
    std::size_t vertex_count = 0;
    std::vector<JacodYorCheck> checks;
    bool passed() const;
};

// Throws EmptyMeasureSet when there is no calibrated martingale measure.
JacodYorReport verify_jacod_yor(const FilteredModel& model);

struct UnhedgeableBlock {
    std::size_t k = 0;                              // jump index
    std::vector<Vector> terminal;                   // orthogonal, unnormalized
    std::vector<std::vector<Vector>> martingales;   // per vector: [l][atom]
    std::vector<Cell> atoms;                        // charged cells of P_{max(k-1,0)} carrying the block
    bool single_jump = false;                       // 0 before k, constant from k on
};

struct UnhedgeableDecomposition {
    std::vector<Vector> residuals;                          // V^i_T over atoms, 0 off support
    std::vector<std::vector<Vector>> residual_martingales;  // [i][l][atom]
    std::vector<DynamicPosition> hedges;                    // psi_i = V^i_T + (H^i . S)_T on support
    std::vector<UnhedgeableBlock> blocks;
    bool orthogonal = false;   // every V^i_T is Q-orthogonal to every elementary gain
    bool martingale = false;   // residual arrays are Q-martingales
};

// Throws NotCalibrated or NotComplete.
UnhedgeableDecomposition decompose_unhedgeable(const Measure& q, const FilteredModel& model);

// Q restricted to its support, used for masking.
Vector restrict_to(const Vector& v, const Cell& support);

}  // namespace semistatic
