#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "semistatic/duality.hpp"
#include "semistatic/model.hpp"
#include "semistatic/polytope.hpp"

namespace semistatic {

using Time = std::optional<std::size_t>;  // nullopt is infinity

// X 1_{tau <= k}, given per raw outcome.
struct SingleJump {
    std::vector<Time> tau;
    Vector mark;
};

// The same data per atom of some finite space.
struct AtomJump {
    std::vector<Time> tau;
    Vector mark;
};

// Partition of atoms per time index 0..K.
using AtomFiltration = std::vector<std::vector<Cell>>;

AtomFiltration atom_filtration(const FilteredModel& model);

// Throws InvalidModel unless tau = inf exactly where X = 0, X >= 0 and tau <= K.
void validate_jump(const SingleJump& jump, const FilteredModel& model);
// Throws NotMeasurable if the jump is not constant on atoms.
AtomJump jump_on_atoms(const SingleJump& jump, const FilteredModel& model);

struct EnlargedModel {
    FilteredModel base;
    std::vector<SingleJump> jumps;
    FilteredModel enlarged;              // G over the raw outcomes
    AtomFiltration base_cells;           // F_k over atoms of G
    std::vector<std::size_t> base_atom;  // atom of F containing each atom of G

    AtomJump jump(std::size_t i) const { return jump_on_atoms(jumps.at(i), enlarged); }
    // Progressive enlargement of F by jump i alone, over atoms of G.
    AtomFiltration single_jump_cells(std::size_t i) const;
};

EnlargedModel enlarge(const FilteredModel& model, std::vector<SingleJump> jumps);

// min{k : S_k != 0} per atom.
std::vector<Time> first_move_time(const FilteredModel& model);

// Z_k = Q(tau > k | F_k), arrays [k][atom].
std::vector<Vector> azema(const Measure& q, const std::vector<Time>& tau, const AtomFiltration& f);
std::vector<Vector> azema(const Measure& q, const SingleJump& jump, const FilteredModel& model);

// Cumulative A_k with dA_0 = E[X 1_{tau=0} | F_0], dA_k = E[X 1_{tau=k} | F_{k-1}].
std::vector<Vector> compensator(const Measure& q, const AtomJump& jump, const AtomFiltration& f);
std::vector<Vector> compensator(const Measure& q, const SingleJump& jump, const FilteredModel& model);

struct CompensatorCheck {
    bool predictable = false;  // dA_k constant on F_{k-1} cells (F_0 for k = 0)
    bool increasing = false;
    bool martingale = false;   // E[X 1_{tau<=k} | F_k] - A_k is an F-martingale on the support
    bool passed() const { return predictable && increasing && martingale; }
};
CompensatorCheck check_compensator(const Measure& q, const AtomJump& jump, const AtomFiltration& f,
                                   const std::vector<Vector>& a);

// M_k = X 1_{tau<=k} - sum_{l <= k ^ tau} dA_l / Z_{l-1}, Z_{-1} = 1.
// Throws SingularCompensator when dA_l > 0 meets Z_{l-1} = 0 on a charged atom still alive at l.
std::vector<Vector> jeulin_yor_from(const Measure& q, const AtomJump& jump, const std::vector<Vector>& a,
                                    const std::vector<Vector>& z);
std::vector<Vector> jeulin_yor(const Measure& q, const AtomJump& jump, const AtomFiltration& f);
std::vector<Vector> jeulin_yor(const Measure& q, const SingleJump& jump, const FilteredModel& model);

// E[dM_k | G_{k-1}] = 0 on charged cells for k >= 1, and E[M_0 | F_0] = 0.
bool check_jeulin_yor(const Measure& q, const std::vector<Vector>& m, const AtomFiltration& f,
                      const AtomFiltration& g);

// h[k-1] per atom, constant on G_{k-1} cells; result constant on F_{k-1} cells and equal to h on {tau >= k}.
std::vector<Vector> predictable_reduction(const std::vector<Vector>& h, const std::vector<Time>& tau,
                                          const AtomFiltration& f, const AtomFiltration& g);

// Every charged F_k cell holds exactly one charged G_k cell, for all k.
bool filtrations_coincide(const Measure& q, const AtomFiltration& f, const AtomFiltration& g);

// Traces of F_k and G_k on {tau > k} agree as cell systems.
bool traces_agree(const std::vector<Time>& tau, const AtomFiltration& f, const AtomFiltration& g);

struct PriceComparison {
    std::string payoff;
    RobustPriceResult base;
    RobustPriceResult enlarged;
};

struct InformedComparison {
    VertexSet base_vertices;
    VertexSet enlarged_vertices;
    std::vector<bool> enlarged_coincide;      // per G vertex
    std::vector<Measure> base_pushforward;    // G vertices mapped onto F atoms
    bool claims_free = false;
    std::vector<Measure> predicted;           // coinciding lifts of F vertices, canonical order
    std::optional<bool> corollary_holds;      // asserted only without claims
    std::vector<PriceComparison> prices;
    ArbitrageResult arbitrage;                // under G
};

InformedComparison informed_compare(const FilteredModel& model, const std::vector<SingleJump>& jumps,
                                    const std::vector<std::pair<std::string, Vector>>& payoffs = {});
InformedComparison informed_compare(const EnlargedModel& e,
                                    const std::vector<std::pair<std::string, Vector>>& payoffs = {});

}  // namespace semistatic
