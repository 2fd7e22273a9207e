#include "semistatic/model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "semistatic/errors.hpp"

namespace semistatic {

Partition Partition::canonical(std::vector<Cell> cells)
{
    for (auto& c : cells) std::sort(c.begin(), c.end());
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        if (a.empty() || b.empty()) return a.size() < b.size();
        return a.front() < b.front();
    });
    return Partition{std::move(cells)};
}

bool ValidationReport::has(const std::string& check) const
{
    return std::any_of(issues.begin(), issues.end(), [&](const ValidationIssue& i) { return i.check == check; });
}

std::string ValidationReport::summary() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < issues.size(); ++i) {
        if (i) os << "; ";
        os << issues[i].check;
        if (issues[i].index) os << " at k=" << *issues[i].index;
        os << ": " << issues[i].detail;
    }
    return os.str();
}

namespace {

void issue(ValidationReport& r, std::string check, std::optional<std::size_t> index, std::string detail)
{
    r.issues.push_back(ValidationIssue{std::move(check), index, std::move(detail)});
}

// cell index per outcome, or nullopt if the partition is broken
std::optional<std::vector<std::size_t>> cell_lookup(const Partition& p, std::size_t n)
{
    std::vector<std::size_t> owner(n, static_cast<std::size_t>(-1));
    for (std::size_t c = 0; c < p.cells.size(); ++c) {
        for (auto o : p.cells[c]) {
            if (o >= n || owner[o] != static_cast<std::size_t>(-1)) return std::nullopt;
            owner[o] = c;
        }
    }
    for (auto o : owner)
        if (o == static_cast<std::size_t>(-1)) return std::nullopt;
    return owner;
}

bool constant_on_cells(const Partition& p, const Vector& v)
{
    for (const auto& cell : p.cells)
        for (auto o : cell)
            if (v[o] != v[cell.front()]) return false;
    return true;
}

}  // namespace

ValidationReport validate_model(const ModelSpec& spec)
{
    ValidationReport r;
    const std::size_t n = spec.outcomes.size();
    if (n == 0) issue(r, "outcomes", std::nullopt, "outcome set is empty");
    {
        std::set<std::string> seen;
        for (const auto& label : spec.outcomes)
            if (!seen.insert(label).second) issue(r, "outcomes", std::nullopt, "duplicate label '" + label + "'");
    }

    const auto& times = spec.grid.times;
    if (times.size() < 2) issue(r, "times", std::nullopt, "need at least one step");
    if (!times.empty() && sgn(times.front()) != 0) issue(r, "times", 0, "t_0 must be 0");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (times[k] <= times[k - 1]) issue(r, "times", k, "times must be strictly increasing");
    const std::size_t steps = times.empty() ? 0 : times.size() - 1;

    bool partitions_ok = spec.filtration.size() == steps + 1;
    if (!partitions_ok)
        issue(r, "filtration", std::nullopt,
              "expected " + std::to_string(steps + 1) + " partitions, got " + std::to_string(spec.filtration.size()));
    std::vector<std::vector<std::size_t>> owners;
    for (std::size_t k = 0; k < spec.filtration.size(); ++k) {
        const auto& p = spec.filtration[k];
        bool empty_cell = false;
        for (const auto& c : p.cells) empty_cell |= c.empty();
        auto owner = cell_lookup(p, n);
        if (empty_cell) issue(r, "partition", k, "empty cell");
        if (!owner) issue(r, "partition", k, "cells are not disjoint or do not cover every outcome");
        if (empty_cell || !owner) {
            partitions_ok = false;
            continue;
        }
        owners.push_back(*owner);
    }
    if (partitions_ok) {
        for (std::size_t k = 1; k < spec.filtration.size(); ++k) {
            for (const auto& c : spec.filtration[k].cells) {
                const auto parent = owners[k - 1][c.front()];
                if (!std::all_of(c.begin(), c.end(), [&](std::size_t o) { return owners[k - 1][o] == parent; })) {
                    issue(r, "refinement", k, "P_k does not refine P_{k-1}");
                    break;
                }
            }
        }
    }

    bool prices_ok = true;
    for (std::size_t j = 0; j < spec.prices.values.size(); ++j) {
        const auto& asset = spec.prices.values[j];
        if (asset.size() != steps + 1) {
            issue(r, "prices", std::nullopt, "asset " + std::to_string(j) + " has wrong number of time slices");
            prices_ok = false;
            continue;
        }
        for (std::size_t k = 0; k < asset.size(); ++k) {
            if (asset[k].size() != n) {
                issue(r, "prices", k, "asset " + std::to_string(j) + " has wrong number of outcomes");
                prices_ok = false;
            }
        }
    }
    if (prices_ok) {
        for (std::size_t j = 0; j < spec.prices.values.size(); ++j) {
            const auto& s0 = spec.prices.values[j][0];
            if (!is_zero(s0)) issue(r, "initial-price", 0, "S_0 of asset " + std::to_string(j) + " must be 0");
            if (!partitions_ok) continue;
            for (std::size_t k = 0; k <= steps; ++k)
                if (!constant_on_cells(spec.filtration[k], spec.prices.values[j][k]))
                    issue(r, "adaptedness", k, "asset " + std::to_string(j) + " is not constant on cells of P_k");
        }
    }

    for (std::size_t i = 0; i < spec.claims.size(); ++i) {
        if (spec.claims[i].size() != n) {
            issue(r, "claims", std::nullopt, "claim " + std::to_string(i) + " has wrong length");
            continue;
        }
        if (partitions_ok && !constant_on_cells(spec.filtration[steps], spec.claims[i]))
            issue(r, "claims", steps, "claim " + std::to_string(i) + " is not F_T-measurable");
    }

    if (!spec.allowed.empty()) {
        if (spec.allowed.size() != n)
            issue(r, "prior-support", std::nullopt, "mask has wrong length");
        else if (std::none_of(spec.allowed.begin(), spec.allowed.end(), [](bool b) { return b; }))
            issue(r, "prior-support", std::nullopt, "prior support is empty");
    }
    return r;
}

Filtration natural_filtration(const PriceProcess& prices, std::size_t outcome_count)
{
    std::size_t steps = 0;
    for (const auto& asset : prices.values) steps = std::max(steps, asset.size() ? asset.size() - 1 : 0);
    return natural_filtration(prices, outcome_count, steps);
}

Filtration natural_filtration(const PriceProcess& prices, std::size_t outcome_count, std::size_t steps)
{
    Filtration f;
    for (std::size_t k = 0; k <= steps; ++k) {
        std::map<std::vector<Rational>, Cell> groups;
        for (std::size_t o = 0; o < outcome_count; ++o) {
            std::vector<Rational> key;
            for (const auto& asset : prices.values)
                for (std::size_t l = 0; l <= k && l < asset.size(); ++l) key.push_back(asset[l][o]);
            groups[key].push_back(o);
        }
        std::vector<Cell> cells;
        for (auto& [key, cell] : groups) cells.push_back(std::move(cell));
        f.push_back(Partition::canonical(std::move(cells)));
    }
    return f;
}

FilteredModel::FilteredModel(ModelSpec spec) : spec_(std::move(spec))
{
    const ValidationReport report = validate_model(spec_);
    if (!report.ok()) throw InvalidModel(report.summary());
    for (auto& p : spec_.filtration) p = Partition::canonical(std::move(p.cells));
    const std::size_t n = spec_.outcomes.size();
    if (spec_.allowed.empty()) spec_.allowed.assign(n, true);

    atoms_ = spec_.filtration.back().cells;
    atom_of_outcome_.assign(n, 0);
    for (std::size_t a = 0; a < atoms_.size(); ++a) {
        for (auto o : atoms_[a]) atom_of_outcome_[o] = a;
        labels_.push_back(join_labels(spec_.outcomes, atoms_[a]));
    }

    cells_.resize(spec_.filtration.size());
    cell_of_.resize(spec_.filtration.size());
    for (std::size_t k = 0; k < spec_.filtration.size(); ++k) {
        cell_of_[k].assign(atoms_.size(), 0);
        for (const auto& cell : spec_.filtration[k].cells) {
            Cell atoms;
            for (auto o : cell) atoms.push_back(atom_of_outcome_[o]);
            std::sort(atoms.begin(), atoms.end());
            atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
            for (auto a : atoms) cell_of_[k][a] = cells_[k].size();
            cells_[k].push_back(std::move(atoms));
        }
    }

    for (const auto& asset : spec_.prices.values) {
        std::vector<Vector> per_k;
        for (const auto& slice : asset) per_k.push_back(to_atoms(slice));
        prices_.push_back(std::move(per_k));
    }
    for (const auto& c : spec_.claims) claims_.push_back(to_atoms(c));
    allowed_.assign(atoms_.size(), false);
    for (std::size_t o = 0; o < n; ++o)
        if (spec_.allowed[o]) allowed_[atom_of_outcome_[o]] = true;
}

Vector FilteredModel::increment(std::size_t asset, std::size_t k) const
{
    return subtract(prices_.at(asset).at(k), prices_.at(asset).at(k - 1));
}

Vector FilteredModel::to_atoms(const Vector& per_outcome) const
{
    if (per_outcome.size() != spec_.outcomes.size()) throw ShapeMismatch("per-outcome vector has wrong length");
    Vector v(atoms_.size());
    for (std::size_t a = 0; a < atoms_.size(); ++a) {
        v[a] = per_outcome[atoms_[a].front()];
        for (auto o : atoms_[a])
            if (per_outcome[o] != v[a]) throw NotMeasurable("vector is not constant on atom " + labels_[a]);
    }
    return v;
}

Vector FilteredModel::to_outcomes(const Vector& per_atom) const
{
    if (per_atom.size() != atoms_.size()) throw ShapeMismatch("per-atom vector has wrong length");
    Vector v(spec_.outcomes.size());
    for (std::size_t o = 0; o < v.size(); ++o) v[o] = per_atom[atom_of_outcome_[o]];
    return v;
}

Cell FilteredModel::atoms_of_outcomes(const Cell& outcomes) const
{
    std::vector<bool> in(spec_.outcomes.size(), false);
    for (auto o : outcomes) {
        if (o >= in.size()) throw NotMeasurable("outcome index out of range");
        in[o] = true;
    }
    Cell result;
    for (std::size_t a = 0; a < atoms_.size(); ++a) {
        const auto hits = std::count_if(atoms_[a].begin(), atoms_[a].end(), [&](std::size_t o) { return in[o]; });
        if (hits == 0) continue;
        if (static_cast<std::size_t>(hits) != atoms_[a].size())
            throw NotMeasurable("set splits atom " + labels_[a]);
        result.push_back(a);
    }
    return result;
}

Measure::Measure(Vector weights) : weights_(std::move(weights))
{
    Rational total = 0;
    for (const auto& w : weights_) {
        if (sgn(w) < 0) throw InvalidMeasure("negative weight " + to_string(w));
        total += w;
    }
    if (total != 1) throw InvalidMeasure("weights sum to " + to_string(total) + ", not 1");
}

Cell Measure::support() const
{
    Cell s;
    for (std::size_t i = 0; i < weights_.size(); ++i)
        if (sgn(weights_[i]) > 0) s.push_back(i);
    return s;
}

Rational Measure::mass(const Cell& atoms) const
{
    Rational m = 0;
    for (auto a : atoms) m += weights_.at(a);
    return m;
}

Rational Measure::expectation(const Vector& x) const { return dot(weights_, x); }

void check_measure(const Measure& q, const FilteredModel& model)
{
    if (q.size() != model.atom_count())
        throw InvalidMeasure("measure has " + std::to_string(q.size()) + " weights, model has " +
                             std::to_string(model.atom_count()) + " atoms");
    for (std::size_t a = 0; a < q.size(); ++a)
        if (q.charges(a) && !model.allowed()[a])
            throw InvalidMeasure("measure charges atom " + model.atom_labels()[a] + " outside the prior support");
}

Vector conditional_expectation(const std::vector<Cell>& cells, const Vector& x, const Measure& q)
{
    if (x.size() != q.size()) throw ShapeMismatch("conditional_expectation: length mismatch");
    Vector out = zeros(x.size());
    for (const auto& cell : cells) {
        Rational mass = 0;
        Rational total = 0;
        for (auto a : cell) {
            mass += q[a];
            total += q[a] * x[a];
        }
        if (sgn(mass) == 0) continue;
        const Rational avg = total / mass;
        for (auto a : cell) out[a] = avg;
    }
    return out;
}

Vector conditional_expectation(const FilteredModel& model, const Vector& x, std::size_t k, const Measure& q)
{
    if (k > model.steps()) throw ShapeMismatch("time index out of range");
    return conditional_expectation(model.cells(k), x, q);
}

std::string join_labels(const std::vector<std::string>& labels, const Cell& indices, const std::string& sep)
{
    std::string s;
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i) s += sep;
        s += labels.at(indices[i]);
    }
    return s;
}

}  // namespace semistatic
