#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "semistatic/hedging.hpp"
#include "semistatic/model.hpp"

namespace semistatic {

struct TreeNode {
    Cell cell;  // atoms of the model
    std::size_t birth = 0;
    std::optional<std::size_t> parent;

    bool operator==(const TreeNode&) const = default;
};

// Nested family of filtration atoms; several roots are allowed (a split at time 0).
class AtomicTree {
public:
    AtomicTree() = default;
    explicit AtomicTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

    const std::vector<TreeNode>& nodes() const { return nodes_; }
    std::size_t add(TreeNode node);
    std::vector<std::size_t> children(std::size_t node) const;
    std::vector<std::size_t> leaves() const;
    std::size_t dim() const { return leaves().size(); }
    // Birth time of the leaf containing each atom, nullopt for atoms outside every leaf.
    std::vector<std::optional<std::size_t>> zeta(std::size_t atom_count) const;

    bool operator==(const AtomicTree&) const = default;

private:
    std::vector<TreeNode> nodes_;
};

// First k at which the atom set is a union of cells of P_k.
std::size_t birth_time(const Cell& atoms, const FilteredModel& model);
// Same for a set of raw outcomes; throws NotMeasurable if it is not F_T-measurable.
std::size_t birth_time_of_outcomes(const Cell& outcomes, const FilteredModel& model);

struct TreeValidation {
    std::vector<std::string> issues;
    bool ok() const { return issues.empty(); }
};

TreeValidation validate_atomic_tree(const AtomicTree& tree, const Measure& q, const FilteredModel& model);
bool is_full(const AtomicTree& tree, const Measure& q, const FilteredModel& model);

Vector sigma_tree_expectation(const Vector& x, const AtomicTree& tree, const Measure& q);
// E_Q[X | F_zeta] atomwise, with zeta taken from the tree.
Vector stopped_expectation(const Vector& x, const AtomicTree& tree, const Measure& q, const FilteredModel& model);

struct LeafCompleteness {
    std::size_t leaf = 0;
    std::size_t rank = 0;
    std::size_t charged = 0;
    bool complete() const { return rank == charged; }
};

struct TheoremConditions {
    bool valid = false;  // atomic tree axioms hold
    bool full = false;
    std::vector<LeafCompleteness> leaves;
    std::size_t claims_rank = 0;
    std::size_t required_rank = 0;
    bool prices_constant = false;

    bool leaf_completeness() const;
    bool claims_span() const { return claims_rank == required_rank; }
    bool passed() const { return valid && full && leaf_completeness() && claims_span() && prices_constant; }
    std::string first_failure() const;
};

TheoremConditions check_theorem_conditions(const AtomicTree& tree, const Measure& q, const FilteredModel& model);

struct TreeExtraction {
    std::optional<AtomicTree> tree;
    std::string diagnostic;                // reason for NoTree
    std::vector<DynamicPosition> hedges;   // psi_i = E[psi_i | sigma(T)] + (H^i . S)_T on support
    bool found() const { return tree.has_value(); }
};

// Throws NotComplete when the measure does not give semi-static completeness.
TreeExtraction extract_tree(const Measure& q, const FilteredModel& model);

}  // namespace semistatic
