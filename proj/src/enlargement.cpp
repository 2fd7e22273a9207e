#include "semistatic/enlargement.hpp"

#include <algorithm>
#include <map>

#include "semistatic/errors.hpp"

namespace semistatic {

AtomFiltration atom_filtration(const FilteredModel& model)
{
    AtomFiltration f;
    for (std::size_t k = 0; k <= model.steps(); ++k) f.push_back(model.cells(k));
    return f;
}

void validate_jump(const SingleJump& jump, const FilteredModel& model)
{
    const std::size_t n = model.spec().outcomes.size();
    if (jump.tau.size() != n || jump.mark.size() != n) throw InvalidModel("jump has wrong length");
    for (std::size_t o = 0; o < n; ++o) {
        if (sgn(jump.mark[o]) < 0) throw InvalidModel("jump mark must be nonnegative");
        if (jump.tau[o] && *jump.tau[o] > model.steps()) throw InvalidModel("jump time beyond the horizon");
        if (jump.tau[o].has_value() != (sgn(jump.mark[o]) > 0))
            throw InvalidModel("tau must be infinite exactly where the mark is zero (outcome " +
                               model.spec().outcomes[o] + ")");
    }
}

AtomJump jump_on_atoms(const SingleJump& jump, const FilteredModel& model)
{
    validate_jump(jump, model);
    AtomJump out;
    for (const auto& atom : model.atoms()) {
        const auto first = atom.front();
        for (auto o : atom)
            if (jump.tau[o] != jump.tau[first] || jump.mark[o] != jump.mark[first])
                throw NotMeasurable("jump is not constant on atoms of the model");
        out.tau.push_back(jump.tau[first]);
        out.mark.push_back(jump.mark[first]);
    }
    return out;
}

namespace {

using JumpKey = std::vector<std::pair<long, Rational>>;

// Information revealed by the listed jumps up to time k.
JumpKey jump_key(const std::vector<const SingleJump*>& jumps, std::size_t outcome, std::size_t k)
{
    JumpKey key;
    for (const auto* j : jumps) {
        const Time& t = j->tau[outcome];
        if (t && *t <= k) key.emplace_back(static_cast<long>(*t), j->mark[outcome]);
        else key.emplace_back(-1, Rational(0));
    }
    return key;
}

Filtration refine(const FilteredModel& base, const std::vector<const SingleJump*>& jumps)
{
    Filtration g;
    for (std::size_t k = 0; k <= base.steps(); ++k) {
        std::vector<Cell> cells;
        for (const auto& cell : base.spec().filtration[k].cells) {
            std::map<JumpKey, Cell> split;
            for (auto o : cell) split[jump_key(jumps, o, k)].push_back(o);
            for (auto& [key, part] : split) cells.push_back(std::move(part));
        }
        g.push_back(Partition::canonical(std::move(cells)));
    }
    return g;
}

AtomFiltration cells_over_atoms(const Filtration& f, const FilteredModel& atoms_model)
{
    AtomFiltration out;
    for (const auto& p : f) {
        std::vector<Cell> cells;
        for (const auto& c : p.cells) cells.push_back(atoms_model.atoms_of_outcomes(c));
        out.push_back(std::move(cells));
    }
    return out;
}

}  // namespace

EnlargedModel enlarge(const FilteredModel& model, std::vector<SingleJump> jumps)
{
    for (const auto& j : jumps) validate_jump(j, model);
    std::vector<const SingleJump*> ptrs;
    for (const auto& j : jumps) ptrs.push_back(&j);
    ModelSpec spec = model.spec();
    spec.filtration = refine(model, ptrs);
    FilteredModel g(std::move(spec));
    AtomFiltration base_cells = cells_over_atoms(model.spec().filtration, g);
    std::vector<std::size_t> base_atom;
    for (const auto& atom : g.atoms()) base_atom.push_back(model.atom_of_outcome(atom.front()));
    return EnlargedModel{model, std::move(jumps), std::move(g), std::move(base_cells), std::move(base_atom)};
}

AtomFiltration EnlargedModel::single_jump_cells(std::size_t i) const
{
    return cells_over_atoms(refine(base, {&jumps.at(i)}), enlarged);
}

std::vector<Time> first_move_time(const FilteredModel& model)
{
    std::vector<Time> out(model.atom_count());
    for (std::size_t a = 0; a < model.atom_count(); ++a)
        for (std::size_t k = 0; k <= model.steps() && !out[a]; ++k)
            for (std::size_t j = 0; j < model.assets(); ++j)
                if (sgn(model.price(j, k)[a]) != 0) {
                    out[a] = k;
                    break;
                }
    return out;
}

namespace {

Vector indicator(const std::vector<Time>& tau, auto pred)
{
    Vector v(tau.size());
    for (std::size_t a = 0; a < tau.size(); ++a) v[a] = pred(tau[a]) ? 1 : 0;
    return v;
}

Vector jump_at(const AtomJump& jump, std::size_t k)
{
    Vector v = zeros(jump.tau.size());
    for (std::size_t a = 0; a < v.size(); ++a)
        if (jump.tau[a] == k) v[a] = jump.mark[a];
    return v;
}

Vector jump_by(const AtomJump& jump, std::size_t k)
{
    Vector v = zeros(jump.tau.size());
    for (std::size_t a = 0; a < v.size(); ++a)
        if (jump.tau[a] && *jump.tau[a] <= k) v[a] = jump.mark[a];
    return v;
}

bool constant_on(const std::vector<Cell>& cells, const Vector& v)
{
    for (const auto& c : cells)
        for (auto a : c)
            if (v[a] != v[c.front()]) return false;
    return true;
}

bool zero_on_charged(const std::vector<Cell>& cells, const Vector& v, const Measure& q)
{
    const Vector e = conditional_expectation(cells, v, q);
    for (std::size_t a = 0; a < e.size(); ++a)
        if (q.charges(a) && sgn(e[a]) != 0) return false;
    return true;
}

}  // namespace

std::vector<Vector> azema(const Measure& q, const std::vector<Time>& tau, const AtomFiltration& f)
{
    std::vector<Vector> z;
    for (std::size_t k = 0; k < f.size(); ++k)
        z.push_back(conditional_expectation(f[k], indicator(tau, [k](const Time& t) { return !t || *t > k; }), q));
    return z;
}

std::vector<Vector> azema(const Measure& q, const SingleJump& jump, const FilteredModel& model)
{
    check_measure(q, model);
    return azema(q, jump_on_atoms(jump, model).tau, atom_filtration(model));
}

std::vector<Vector> compensator(const Measure& q, const AtomJump& jump, const AtomFiltration& f)
{
    std::vector<Vector> a;
    Vector acc = conditional_expectation(f[0], jump_at(jump, 0), q);
    a.push_back(acc);
    for (std::size_t k = 1; k < f.size(); ++k) {
        acc = add(acc, conditional_expectation(f[k - 1], jump_at(jump, k), q));
        a.push_back(acc);
    }
    return a;
}

std::vector<Vector> compensator(const Measure& q, const SingleJump& jump, const FilteredModel& model)
{
    check_measure(q, model);
    return compensator(q, jump_on_atoms(jump, model), atom_filtration(model));
}

CompensatorCheck check_compensator(const Measure& q, const AtomJump& jump, const AtomFiltration& f,
                                   const std::vector<Vector>& a)
{
    CompensatorCheck c{true, true, true};
    for (std::size_t k = 0; k < f.size(); ++k) {
        const Vector da = k == 0 ? a[0] : subtract(a[k], a[k - 1]);
        if (!constant_on(f[k == 0 ? 0 : k - 1], da)) c.predictable = false;
        for (const auto& x : da)
            if (sgn(x) < 0) c.increasing = false;
        // optional projection minus compensator
        const Vector y = subtract(conditional_expectation(f[k], jump_by(jump, k), q), a[k]);
        if (k == 0) {
            if (!zero_on_charged(f[0], y, q)) c.martingale = false;
        } else {
            const Vector y_prev = subtract(conditional_expectation(f[k - 1], jump_by(jump, k - 1), q), a[k - 1]);
            if (!zero_on_charged(f[k - 1], subtract(y, y_prev), q)) c.martingale = false;
        }
    }
    return c;
}

std::vector<Vector> jeulin_yor_from(const Measure& q, const AtomJump& jump, const std::vector<Vector>& a,
                                    const std::vector<Vector>& z)
{
    const std::size_t n = jump.tau.size();
    std::vector<Vector> m;
    Vector drift = zeros(n);
    for (std::size_t k = 0; k < a.size(); ++k) {
        const Vector da = k == 0 ? a[0] : subtract(a[k], a[k - 1]);
        for (std::size_t x = 0; x < n; ++x) {
            const bool alive = !jump.tau[x] || *jump.tau[x] >= k;
            if (!alive || sgn(da[x]) == 0) continue;
            const Rational zprev = k == 0 ? Rational(1) : z[k - 1][x];
            if (sgn(zprev) == 0) {
                if (q.charges(x))
                    throw SingularCompensator("compensator charges time " + std::to_string(k) +
                                              " where the Azema supermartingale vanishes");
                continue;
            }
            drift[x] += da[x] / zprev;
        }
        m.push_back(subtract(jump_by(jump, k), drift));
    }
    return m;
}

std::vector<Vector> jeulin_yor(const Measure& q, const AtomJump& jump, const AtomFiltration& f)
{
    return jeulin_yor_from(q, jump, compensator(q, jump, f), azema(q, jump.tau, f));
}

std::vector<Vector> jeulin_yor(const Measure& q, const SingleJump& jump, const FilteredModel& model)
{
    check_measure(q, model);
    return jeulin_yor(q, jump_on_atoms(jump, model), atom_filtration(model));
}

bool check_jeulin_yor(const Measure& q, const std::vector<Vector>& m, const AtomFiltration& f,
                      const AtomFiltration& g)
{
    if (m.empty()) return true;
    if (!zero_on_charged(f[0], m[0], q)) return false;
    for (std::size_t k = 1; k < m.size(); ++k)
        if (!zero_on_charged(g[k - 1], subtract(m[k], m[k - 1]), q)) return false;
    return true;
}

std::vector<Vector> predictable_reduction(const std::vector<Vector>& h, const std::vector<Time>& tau,
                                          const AtomFiltration& f, const AtomFiltration& g)
{
    std::vector<Vector> j;
    for (std::size_t k = 1; k <= h.size(); ++k) {
        const Vector& hk = h[k - 1];
        if (hk.size() != tau.size()) throw ShapeMismatch("predictable_reduction: wrong length");
        if (!constant_on(g.at(k - 1), hk)) throw ShapeMismatch("integrand is not G-predictable");
        Vector jk = zeros(tau.size());
        for (const auto& cell : f.at(k - 1)) {
            std::optional<Rational> value;
            for (auto a : cell)
                if (!tau[a] || *tau[a] >= k) {
                    value = hk[a];
                    break;
                }
            if (value)
                for (auto a : cell) jk[a] = *value;
        }
        j.push_back(std::move(jk));
    }
    return j;
}

bool filtrations_coincide(const Measure& q, const AtomFiltration& f, const AtomFiltration& g)
{
    if (f.size() != g.size()) throw ShapeMismatch("filtrations have different horizons");
    for (std::size_t k = 0; k < f.size(); ++k) {
        std::vector<std::size_t> f_of(q.size());
        for (std::size_t c = 0; c < f[k].size(); ++c)
            for (auto a : f[k][c]) f_of[a] = c;
        std::vector<std::size_t> charged(f[k].size(), 0);
        for (const auto& cell : g[k])
            if (sgn(q.mass(cell)) > 0) ++charged[f_of[cell.front()]];
        for (std::size_t c = 0; c < f[k].size(); ++c)
            if (sgn(q.mass(f[k][c])) > 0 && charged[c] != 1) return false;
    }
    return true;
}

bool traces_agree(const std::vector<Time>& tau, const AtomFiltration& f, const AtomFiltration& g)
{
    for (std::size_t k = 0; k < f.size(); ++k) {
        auto trace = [&](const std::vector<Cell>& cells) {
            std::vector<Cell> out;
            for (const auto& c : cells) {
                Cell t;
                for (auto a : c)
                    if (!tau[a] || *tau[a] > k) t.push_back(a);
                if (!t.empty()) out.push_back(std::move(t));
            }
            std::sort(out.begin(), out.end());
            return out;
        };
        if (trace(f[k]) != trace(g[k])) return false;
    }
    return true;
}

InformedComparison informed_compare(const EnlargedModel& e, const std::vector<std::pair<std::string, Vector>>& payoffs)
{
    InformedComparison r;
    const FilteredModel& f = e.base;
    const FilteredModel& g = e.enlarged;
    r.base_vertices = enumerate_extreme_points(build_constraints(f));
    r.enlarged_vertices = enumerate_extreme_points(build_constraints(g));
    const AtomFiltration g_cells = atom_filtration(g);

    for (const auto& v : r.enlarged_vertices.vertices) {
        r.enlarged_coincide.push_back(filtrations_coincide(v.measure, e.base_cells, g_cells));
        Vector push = zeros(f.atom_count());
        for (std::size_t a = 0; a < g.atom_count(); ++a) push[e.base_atom[a]] += v.measure[a];
        r.base_pushforward.emplace_back(std::move(push));
    }

    r.claims_free = f.claim_count() == 0;
    std::vector<std::vector<std::size_t>> inside(f.atom_count());
    for (std::size_t a = 0; a < g.atom_count(); ++a)
        if (g.allowed()[a]) inside[e.base_atom[a]].push_back(a);
    for (const auto& v : r.base_vertices.vertices) {
        const Cell support = v.measure.support();
        std::vector<std::size_t> choice(support.size(), 0);
        bool feasible = std::all_of(support.begin(), support.end(), [&](std::size_t a) { return !inside[a].empty(); });
        while (feasible) {
            Vector lift = zeros(g.atom_count());
            for (std::size_t i = 0; i < support.size(); ++i) lift[inside[support[i]][choice[i]]] = v.measure[support[i]];
            Measure m(std::move(lift));
            if (filtrations_coincide(m, e.base_cells, g_cells)) r.predicted.push_back(std::move(m));
            std::size_t i = 0;
            while (i < support.size() && ++choice[i] == inside[support[i]].size()) choice[i++] = 0;
            if (i == support.size()) break;
        }
    }
    std::sort(r.predicted.begin(), r.predicted.end(),
              [](const Measure& a, const Measure& b) { return canonical_less(a.weights(), b.weights()); });
    r.predicted.erase(std::unique(r.predicted.begin(), r.predicted.end()), r.predicted.end());
    if (r.claims_free) r.corollary_holds = r.predicted == r.enlarged_vertices.measures();

    for (const auto& [name, per_outcome] : payoffs)
        r.prices.push_back(PriceComparison{name, robust_price(f.to_atoms(per_outcome), r.base_vertices),
                                           robust_price(g.to_atoms(per_outcome), r.enlarged_vertices)});
    r.arbitrage = detect_arbitrage(g);
    return r;
}

InformedComparison informed_compare(const FilteredModel& model, const std::vector<SingleJump>& jumps,
                                    const std::vector<std::pair<std::string, Vector>>& payoffs)
{
    return informed_compare(enlarge(model, jumps), payoffs);
}

}  // namespace semistatic
