#include "semistatic/tree.hpp"

#include <algorithm>

#include "semistatic/errors.hpp"
#include "semistatic/linalg.hpp"

namespace semistatic {

std::size_t AtomicTree::add(TreeNode node)
{
    nodes_.push_back(std::move(node));
    return nodes_.size() - 1;
}

std::vector<std::size_t> AtomicTree::children(std::size_t node) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].parent == node) out.push_back(i);
    return out;
}

std::vector<std::size_t> AtomicTree::leaves() const
{
    std::vector<bool> has_child(nodes_.size(), false);
    for (const auto& n : nodes_)
        if (n.parent && *n.parent < nodes_.size()) has_child[*n.parent] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (!has_child[i]) out.push_back(i);
    return out;
}

std::vector<std::optional<std::size_t>> AtomicTree::zeta(std::size_t atom_count) const
{
    std::vector<std::optional<std::size_t>> z(atom_count);
    for (auto leaf : leaves())
        for (auto a : nodes_[leaf].cell)
            if (a < atom_count) z[a] = nodes_[leaf].birth;
    return z;
}

namespace {

bool is_union_of_cells(const Cell& atoms, const std::vector<Cell>& cells, std::size_t atom_count)
{
    std::vector<bool> in(atom_count, false);
    for (auto a : atoms) in.at(a) = true;
    for (const auto& c : cells) {
        const auto hits = std::count_if(c.begin(), c.end(), [&](std::size_t a) { return in[a]; });
        if (hits != 0 && static_cast<std::size_t>(hits) != c.size()) return false;
    }
    return true;
}

bool subset(const Cell& a, const Cell& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

bool disjoint(const Cell& a, const Cell& b)
{
    Cell common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    return common.empty();
}

Cell charged_part(const Cell& c, const Measure& q)
{
    Cell out;
    for (auto a : c)
        if (q.charges(a)) out.push_back(a);
    return out;
}

Cell difference(const Cell& a, const Cell& b)
{
    Cell out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Charged cells of P_k contained in the atom set.
std::size_t charged_cells_inside(const Cell& atoms, std::size_t k, const Measure& q, const FilteredModel& model)
{
    std::size_t count = 0;
    for (const auto& c : model.cells(k))
        if (subset(c, atoms) && sgn(q.mass(c)) > 0) ++count;
    return count;
}

}  // namespace

std::size_t birth_time(const Cell& atoms, const FilteredModel& model)
{
    Cell sorted = atoms;
    std::sort(sorted.begin(), sorted.end());
    for (auto a : sorted)
        if (a >= model.atom_count()) throw NotMeasurable("atom index out of range");
    for (std::size_t k = 0; k <= model.steps(); ++k)
        if (is_union_of_cells(sorted, model.cells(k), model.atom_count())) return k;
    return model.steps();
}

std::size_t birth_time_of_outcomes(const Cell& outcomes, const FilteredModel& model)
{
    return birth_time(model.atoms_of_outcomes(outcomes), model);
}

TreeValidation validate_atomic_tree(const AtomicTree& tree, const Measure& q, const FilteredModel& model)
{
    TreeValidation v;
    const auto& nodes = tree.nodes();
    auto name = [](std::size_t i) { return "node " + std::to_string(i); };
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& n = nodes[i];
        if (n.cell.empty() || !std::is_sorted(n.cell.begin(), n.cell.end()) || n.cell.back() >= model.atom_count()) {
            v.issues.push_back(name(i) + ": malformed cell");
            continue;
        }
        if (n.parent && *n.parent >= nodes.size()) {
            v.issues.push_back(name(i) + ": parent out of range");
            continue;
        }
        if (sgn(q.mass(n.cell)) == 0) v.issues.push_back(name(i) + ": (i) null node");
        if (n.birth > model.steps() || birth_time(n.cell, model) != n.birth) {
            v.issues.push_back(name(i) + ": (i) birth is not the first time the node is measurable");
        } else if (charged_cells_inside(n.cell, n.birth, q, model) != 1) {
            v.issues.push_back(name(i) + ": (i) not an atom of F_t(A) under Q");
        }
        if (n.parent) {
            const auto& p = nodes[*n.parent];
            if (!subset(n.cell, p.cell)) v.issues.push_back(name(i) + ": (ii) not contained in its parent");
            if (p.birth >= n.birth) v.issues.push_back(name(i) + ": (ii) born no later than its parent");
            if (sgn(q.mass(difference(p.cell, n.cell))) == 0)
                v.issues.push_back(name(i) + ": (iii) no mass drop from its parent");
        }
    }
    if (!v.ok()) return v;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            if (i == j || nodes[i].birth >= nodes[j].birth) continue;
            if (!subset(nodes[j].cell, nodes[i].cell) && !disjoint(nodes[i].cell, nodes[j].cell))
                v.issues.push_back(name(i) + " and " + name(j) + ": (ii) neither nested nor disjoint");
            else if (subset(nodes[j].cell, nodes[i].cell) && sgn(q.mass(difference(nodes[i].cell, nodes[j].cell))) == 0)
                v.issues.push_back(name(i) + " and " + name(j) + ": (iii) no mass drop");
        }
    return v;
}

bool is_full(const AtomicTree& tree, const Measure& q, const FilteredModel& model)
{
    const auto leaves = tree.leaves();
    std::vector<int> cover(model.atom_count(), 0);
    for (auto l : leaves)
        for (auto a : tree.nodes()[l].cell) cover.at(a) += 1;
    for (std::size_t a = 0; a < cover.size(); ++a)
        if (q.charges(a) && cover[a] != 1) return false;
    for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
        const auto& child = tree.nodes()[i];
        if (!child.parent) continue;
        const auto& parent = tree.nodes()[*child.parent];
        if (child.birth == 0) return false;
        const std::size_t level = child.birth - 1;
        if (parent.birth > level || charged_cells_inside(parent.cell, level, q, model) != 1) return false;
    }
    return true;
}

Vector sigma_tree_expectation(const Vector& x, const AtomicTree& tree, const Measure& q)
{
    std::vector<Cell> cells;
    for (auto l : tree.leaves()) cells.push_back(tree.nodes()[l].cell);
    return conditional_expectation(cells, x, q);
}

Vector stopped_expectation(const Vector& x, const AtomicTree& tree, const Measure& q, const FilteredModel& model)
{
    const auto z = tree.zeta(model.atom_count());
    Vector out = zeros(x.size());
    std::vector<Vector> levels;
    for (std::size_t k = 0; k <= model.steps(); ++k) levels.push_back(conditional_expectation(model, x, k, q));
    for (std::size_t a = 0; a < x.size(); ++a)
        if (z[a] && q.charges(a)) out[a] = levels[*z[a]][a];
    return out;
}

bool TheoremConditions::leaf_completeness() const
{
    return std::all_of(leaves.begin(), leaves.end(), [](const LeafCompleteness& l) { return l.complete(); });
}

std::string TheoremConditions::first_failure() const
{
    if (!valid) return "atomic tree axioms fail";
    if (!full) return "tree is not full";
    for (const auto& l : leaves)
        if (!l.complete())
            return "leaf " + std::to_string(l.leaf) + " is not complete after its birth (rank " +
                   std::to_string(l.rank) + " < " + std::to_string(l.charged) + ")";
    if (!claims_span())
        return "claims give rank " + std::to_string(claims_rank) + " on sigma(T), need " +
               std::to_string(required_rank);
    if (!prices_constant) return "S moves before the end of the tree";
    return "";
}

TheoremConditions check_theorem_conditions(const AtomicTree& tree, const Measure& q, const FilteredModel& model)
{
    TheoremConditions r;
    r.valid = validate_atomic_tree(tree, q, model).ok();
    r.full = r.valid && is_full(tree, q, model);
    const auto leaves = tree.leaves();

    std::vector<GainLabel> labels;
    const auto gains = elementary_gains(model, &labels);
    for (auto l : leaves) {
        const auto& node = tree.nodes()[l];
        const Cell charged = charged_part(node.cell, q);
        std::vector<Vector> family;
        family.push_back(Vector(charged.size(), Rational(1)));
        for (std::size_t g = 0; g < gains.size(); ++g) {
            if (labels[g].k <= node.birth) continue;
            if (!subset(model.cells(labels[g].k - 1)[labels[g].cell], node.cell)) continue;
            family.push_back(restrict_to(gains[g], charged));
        }
        r.leaves.push_back(LeafCompleteness{l, rank_of(family), charged.size()});
    }

    const Cell support = q.support();
    std::vector<Vector> projected;
    for (const auto& psi : model.claims()) projected.push_back(restrict_to(sigma_tree_expectation(psi, tree, q), support));
    r.claims_rank = rank_of(projected);
    r.required_rank = leaves.empty() ? 0 : leaves.size() - 1;

    r.prices_constant = true;
    const auto z = tree.zeta(model.atom_count());
    for (auto a : support) {
        if (!z[a]) {
            r.prices_constant = false;
            continue;
        }
        for (std::size_t j = 0; j < model.assets(); ++j)
            for (std::size_t l = 0; l <= *z[a]; ++l)
                if (sgn(model.price(j, l)[a]) != 0) r.prices_constant = false;
    }
    return r;
}

TreeExtraction extract_tree(const Measure& q, const FilteredModel& model)
{
    const UnhedgeableDecomposition d = decompose_unhedgeable(q, model);
    TreeExtraction out;
    AtomicTree tree;
    std::vector<Cell> all_atoms;
    Cell omega(model.atom_count());
    for (std::size_t a = 0; a < omega.size(); ++a) omega[a] = a;

    std::size_t first_block = 0;
    if (!d.blocks.empty() && d.blocks.front().k == 0) {
        Cell rest = omega;
        for (const auto& b : d.blocks.front().atoms) {
            tree.add(TreeNode{b, 0, std::nullopt});
            rest = difference(rest, b);
        }
        if (sgn(q.mass(rest)) > 0) tree.add(TreeNode{rest, 0, std::nullopt});
        first_block = 1;
    } else {
        tree.add(TreeNode{omega, 0, std::nullopt});
    }

    for (std::size_t bi = first_block; bi < d.blocks.size(); ++bi) {
        const auto& block = d.blocks[bi];
        for (const auto& b : block.atoms) {
            const Cell charged_b = charged_part(b, q);
            std::optional<std::size_t> leaf;
            for (auto l : tree.leaves())
                if (!disjoint(charged_part(tree.nodes()[l].cell, q), charged_b)) leaf = l;
            if (!leaf || charged_part(tree.nodes()[*leaf].cell, q) != charged_b) {
                out.diagnostic = "block at k=" + std::to_string(block.k) + " is carried by cell {" +
                                 join_labels(model.atom_labels(), b) + "}, which is not a leaf of the tree built so far";
                return out;
            }
            const Cell parent_cell = tree.nodes()[*leaf].cell;
            for (const auto& c : model.cells(block.k))
                if (subset(c, parent_cell) && sgn(q.mass(c)) > 0) tree.add(TreeNode{c, block.k, *leaf});
        }
    }

    const Cell support = q.support();
    const auto gains = elementary_gains(model);
    const Matrix g = Matrix::from_columns(
        [&] {
            std::vector<Vector> cols;
            for (const auto& v : gains) cols.push_back(restrict_to(v, support));
            return cols;
        }(),
        support.size());
    for (std::size_t i = 0; i < model.claim_count(); ++i) {
        const Vector rest = subtract(model.claims()[i], sigma_tree_expectation(model.claims()[i], tree, q));
        auto coeffs = solve(g, restrict_to(rest, support));
        if (!coeffs) {
            out.diagnostic = "claim " + std::to_string(i) + " minus its sigma(T) expectation is not a dynamic gain";
            return out;
        }
        out.hedges.push_back(position_from_gain_coefficients(model, *coeffs));
    }
    const TheoremConditions cond = check_theorem_conditions(tree, q, model);
    if (!cond.passed()) {
        out.diagnostic = cond.first_failure();
        out.hedges.clear();
        return out;
    }
    out.tree = std::move(tree);
    return out;
}

}  // namespace semistatic
