#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "semistatic/rational.hpp"

namespace semistatic {

using Cell = std::vector<std::size_t>;  // sorted indices

struct Partition {
    std::vector<Cell> cells;

    // Cells sorted internally and ordered by their smallest element.
    static Partition canonical(std::vector<Cell> cells);
    bool operator==(const Partition&) const = default;
};

using Filtration = std::vector<Partition>;  // P_0 .. P_K

struct TimeGrid {
    std::vector<Rational> times;  // t_0 = 0 < ... < t_K
    std::size_t steps() const { return times.empty() ? 0 : times.size() - 1; }
};

struct PriceProcess {
    std::vector<std::vector<Vector>> values;  // [asset][k][outcome]
    std::size_t assets() const { return values.size(); }
};

// Raw model description over outcomes, possibly invalid.
struct ModelSpec {
    std::vector<std::string> outcomes;
    TimeGrid grid;
    Filtration filtration;
    PriceProcess prices;
    std::vector<Vector> claims;       // [claim][outcome]
    std::vector<bool> allowed;        // [outcome]; empty means every outcome allowed
};

struct ValidationIssue {
    std::string check;
    std::optional<std::size_t> index;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    bool has(const std::string& check) const;
    std::string summary() const;
};

ValidationReport validate_model(const ModelSpec& spec);

// Coarsest refining partitions over which S_0..S_k are constant.
Filtration natural_filtration(const PriceProcess& prices, std::size_t outcome_count);
// Same, with an explicit step count (needed when there are no assets).
Filtration natural_filtration(const PriceProcess& prices, std::size_t outcome_count, std::size_t steps);

// Model quotiented onto the cells of P_K ("atoms"). Immutable after construction.
class FilteredModel {
public:
    explicit FilteredModel(ModelSpec spec);  // throws InvalidModel

    const ModelSpec& spec() const { return spec_; }
    std::size_t steps() const { return spec_.grid.steps(); }
    std::size_t assets() const { return spec_.prices.assets(); }
    std::size_t claim_count() const { return claims_.size(); }
    std::size_t atom_count() const { return atoms_.size(); }

    // Raw outcomes composing each atom.
    const std::vector<Cell>& atoms() const { return atoms_; }
    std::size_t atom_of_outcome(std::size_t outcome) const { return atom_of_outcome_[outcome]; }
    const std::vector<std::string>& atom_labels() const { return labels_; }

    // Partition of atoms at time k.
    const std::vector<Cell>& cells(std::size_t k) const { return cells_[k]; }
    std::size_t cell_of(std::size_t k, std::size_t atom) const { return cell_of_[k][atom]; }

    // S^asset_k per atom.
    const Vector& price(std::size_t asset, std::size_t k) const { return prices_[asset][k]; }
    Vector increment(std::size_t asset, std::size_t k) const;  // S_k - S_{k-1}, k >= 1
    const std::vector<Vector>& claims() const { return claims_; }
    const std::vector<bool>& allowed() const { return allowed_; }

    // Lift a per-outcome vector that is constant on atoms; throws NotMeasurable otherwise.
    Vector to_atoms(const Vector& per_outcome) const;
    Vector to_outcomes(const Vector& per_atom) const;
    // Atom set that a set of raw outcomes covers exactly; throws NotMeasurable otherwise.
    Cell atoms_of_outcomes(const Cell& outcomes) const;

private:
    ModelSpec spec_;
    std::vector<Cell> atoms_;
    std::vector<std::size_t> atom_of_outcome_;
    std::vector<std::string> labels_;
    std::vector<std::vector<Cell>> cells_;
    std::vector<std::vector<std::size_t>> cell_of_;
    std::vector<std::vector<Vector>> prices_;
    std::vector<Vector> claims_;
    std::vector<bool> allowed_;
};

// Probability vector over the atoms of a model.
class Measure {
public:
    explicit Measure(Vector weights);  // throws InvalidMeasure unless nonnegative and summing to 1

    const Vector& weights() const { return weights_; }
    std::size_t size() const { return weights_.size(); }
    const Rational& operator[](std::size_t i) const { return weights_[i]; }
    Cell support() const;
    bool charges(std::size_t atom) const { return sgn(weights_[atom]) > 0; }
    Rational mass(const Cell& atoms) const;
    Rational expectation(const Vector& x) const;

    bool operator==(const Measure& other) const { return weights_ == other.weights_; }

private:
    Vector weights_;
};

// Throws InvalidMeasure if the measure has the wrong length or charges a forbidden atom.
void check_measure(const Measure& q, const FilteredModel& model);

// E_Q[X | F_k] per atom; cells of zero mass get 0.
Vector conditional_expectation(const FilteredModel& model, const Vector& x, std::size_t k, const Measure& q);
Vector conditional_expectation(const std::vector<Cell>& cells, const Vector& x, const Measure& q);

std::string join_labels(const std::vector<std::string>& labels, const Cell& indices, const std::string& sep = "+");

}  // namespace semistatic
