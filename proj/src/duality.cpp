#include "semistatic/duality.hpp"

#include "semistatic/errors.hpp"
#include "semistatic/lp.hpp"

namespace semistatic {

namespace {

// Columns: cash, statics, gains. Row per allowed atom.
std::vector<Vector> strategy_columns(const FilteredModel& model)
{
    std::vector<Vector> cols;
    cols.emplace_back(model.atom_count(), Rational(1));
    for (const auto& psi : model.claims()) cols.push_back(psi);
    for (auto& g : elementary_gains(model)) cols.push_back(std::move(g));
    return cols;
}

SemiStaticStrategy strategy_from(const Vector& x, const FilteredModel& model)
{
    SemiStaticStrategy s;
    const auto n = static_cast<std::ptrdiff_t>(model.claim_count());
    s.cash = x[0];
    s.statics.assign(x.begin() + 1, x.begin() + 1 + n);
    s.dynamic = position_from_gain_coefficients(model, Vector(x.begin() + 1 + n, x.end()));
    return s;
}

}  // namespace

SuperhedgeResult superhedge(const Vector& payoff, const FilteredModel& model)
{
    if (payoff.size() != model.atom_count()) throw ShapeMismatch("payoff has wrong length");
    const auto cols = strategy_columns(model);
    LinearProgram lp(cols.size());
    lp.objective[0] = 1;
    lp.free.assign(cols.size(), true);
    for (std::size_t a = 0; a < model.atom_count(); ++a) {
        if (!model.allowed()[a]) continue;
        Vector row(cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) row[c] = cols[c][a];
        lp.add_row(std::move(row), RowSense::GreaterEqual, payoff[a]);
    }
    const LpSolution sol = solve_lp(lp);
    SuperhedgeResult r;
    if (sol.status == LpStatus::Unbounded) {
        r.unbounded = true;
        return r;
    }
    if (sol.status != LpStatus::Optimal) throw Error("superhedging program unexpectedly infeasible");
    r.price = sol.value;
    r.strategy = strategy_from(sol.x, model);
    const Vector p = strategy_payoff(r.strategy, model);
    for (std::size_t a = 0; a < model.atom_count(); ++a)
        if (model.allowed()[a] && p[a] == payoff[a]) r.tight_atoms.push_back(a);
    return r;
}

RobustPriceResult robust_price(const Vector& payoff, const VertexSet& vertices)
{
    RobustPriceResult r;
    if (vertices.empty()) {
        r.empty = true;
        return r;
    }
    bool first = true;
    for (const auto& v : vertices.vertices) {
        const Rational e = v.measure.expectation(payoff);
        if (first || e > r.value) {
            r.value = e;
            r.argmax.clear();
            first = false;
        }
        if (e == r.value) r.argmax.push_back(v.measure);
    }
    return r;
}

RobustPriceResult robust_price(const Vector& payoff, const FilteredModel& model)
{
    if (payoff.size() != model.atom_count()) throw ShapeMismatch("payoff has wrong length");
    return robust_price(payoff, enumerate_extreme_points(build_constraints(model)));
}

DualityReport verify_duality(const Vector& payoff, const FilteredModel& model)
{
    const RobustPriceResult dual = robust_price(payoff, model);
    if (dual.empty) throw EmptyMeasureSet("no calibrated martingale measure; the model admits arbitrage");
    const SuperhedgeResult primal = superhedge(payoff, model);
    if (primal.unbounded) throw Error("superhedging program unbounded despite a calibrated martingale measure");
    DualityReport r{primal.price, dual.value, primal.price - dual.value, primal.strategy, dual.argmax.front(),
                    primal.tight_atoms};
    const Vector p = strategy_payoff(primal.strategy, model);
    r.dominates = true;
    for (std::size_t a = 0; a < model.atom_count(); ++a)
        if (model.allowed()[a] && p[a] < payoff[a]) r.dominates = false;
    r.complementary_slackness = true;
    for (auto a : r.argmax.support())
        if (p[a] != payoff[a]) r.complementary_slackness = false;
    return r;
}

ArbitrageResult detect_arbitrage(const FilteredModel& model)
{
    ArbitrageResult r;
    const VertexSet vs = enumerate_extreme_points(build_constraints(model));
    r.vertex_count = vs.size();
    if (!vs.empty()) return r;

    // max t s.t. (sum a_i psi_i + H . S) - t >= 0 on allowed atoms, t <= 1.
    const auto cols = strategy_columns(model);
    const std::size_t n = cols.size() - 1;
    LinearProgram lp(n + 1);
    lp.free.assign(n + 1, true);
    lp.objective[n] = -1;
    for (std::size_t a = 0; a < model.atom_count(); ++a) {
        if (!model.allowed()[a]) continue;
        Vector row(n + 1);
        for (std::size_t c = 0; c < n; ++c) row[c] = cols[c + 1][a];
        row[n] = -1;
        lp.add_row(std::move(row), RowSense::GreaterEqual, Rational(0));
    }
    lp.add_row(unit(n + 1, n), RowSense::LessEqual, Rational(1));
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal || sgn(sol.x[n]) <= 0)
        throw Error("empty measure set but no arbitrage certificate found");
    Vector x(sol.x.begin(), sol.x.end() - 1);
    x.insert(x.begin(), Rational(0));
    SemiStaticStrategy s = strategy_from(x, model);
    r.arbitrage = true;
    r.certificate_payoff = strategy_payoff(s, model);
    r.certificate = std::move(s);
    return r;
}

}  // namespace semistatic
