#include "semistatic/hedging.hpp"

#include <algorithm>

#include "semistatic/errors.hpp"
#include "semistatic/linalg.hpp"

namespace semistatic {

DynamicPosition DynamicPosition::zero(const FilteredModel& model)
{
    DynamicPosition h;
    for (std::size_t k = 1; k <= model.steps(); ++k)
        h.values_.emplace_back(model.cells(k - 1).size(), zeros(model.assets()));
    return h;
}

bool DynamicPosition::is_zero() const
{
    for (const auto& step : values_)
        for (const auto& cell : step)
            if (!semistatic::is_zero(cell)) return false;
    return true;
}

Vector terminal_gain(const DynamicPosition& h, const FilteredModel& model)
{
    if (h.steps() != model.steps()) throw ShapeMismatch("dynamic position has wrong number of steps");
    Vector g = zeros(model.atom_count());
    for (std::size_t k = 1; k <= model.steps(); ++k) {
        const auto& step = h.raw()[k - 1];
        if (step.size() != model.cells(k - 1).size()) throw ShapeMismatch("dynamic position has wrong cell count");
        for (std::size_t j = 0; j < model.assets(); ++j) {
            const Vector inc = model.increment(j, k);
            for (std::size_t c = 0; c < step.size(); ++c) {
                if (step[c].size() != model.assets()) throw ShapeMismatch("dynamic position has wrong asset count");
                if (sgn(step[c][j]) == 0) continue;
                for (auto a : model.cells(k - 1)[c]) g[a] += step[c][j] * inc[a];
            }
        }
    }
    return g;
}

Vector strategy_payoff(const SemiStaticStrategy& s, const FilteredModel& model)
{
    if (s.statics.size() != model.claim_count()) throw ShapeMismatch("strategy has wrong number of static positions");
    Vector p = terminal_gain(s.dynamic, model);
    for (auto& x : p) x += s.cash;
    for (std::size_t i = 0; i < s.statics.size(); ++i)
        if (sgn(s.statics[i]) != 0) p = add(p, scale(model.claims()[i], s.statics[i]));
    return p;
}

std::vector<Vector> elementary_gains(const FilteredModel& model, std::vector<GainLabel>* labels)
{
    std::vector<Vector> gains;
    for (std::size_t k = 1; k <= model.steps(); ++k) {
        for (std::size_t c = 0; c < model.cells(k - 1).size(); ++c) {
            for (std::size_t j = 0; j < model.assets(); ++j) {
                const Vector inc = model.increment(j, k);
                Vector g = zeros(model.atom_count());
                for (auto a : model.cells(k - 1)[c]) g[a] = inc[a];
                gains.push_back(std::move(g));
                if (labels) labels->push_back(GainLabel{k, c, j});
            }
        }
    }
    return gains;
}

DynamicPosition position_from_gain_coefficients(const FilteredModel& model, const Vector& coefficients)
{
    DynamicPosition h = DynamicPosition::zero(model);
    std::size_t idx = 0;
    for (std::size_t k = 1; k <= model.steps(); ++k)
        for (std::size_t c = 0; c < model.cells(k - 1).size(); ++c)
            for (std::size_t j = 0; j < model.assets(); ++j) h.at(k, c, j) = coefficients.at(idx++);
    if (idx != coefficients.size()) throw ShapeMismatch("gain coefficient vector has wrong length");
    return h;
}

Vector restrict_to(const Vector& v, const Cell& support)
{
    Vector r;
    r.reserve(support.size());
    for (auto a : support) r.push_back(v.at(a));
    return r;
}

namespace {

std::vector<Vector> span_basis(const FilteredModel& model, std::vector<std::string>* labels)
{
    std::vector<Vector> basis;
    basis.emplace_back(model.atom_count(), Rational(1));
    if (labels) labels->push_back("1");
    for (std::size_t i = 0; i < model.claim_count(); ++i) {
        basis.push_back(model.claims()[i]);
        if (labels) labels->push_back("psi" + std::to_string(i));
    }
    std::vector<GainLabel> gl;
    for (auto& g : elementary_gains(model, &gl)) basis.push_back(std::move(g));
    if (labels)
        for (const auto& l : gl)
            labels->push_back("gain(k=" + std::to_string(l.k) + ",cell=" + std::to_string(l.cell) +
                              ",asset=" + std::to_string(l.asset) + ")");
    return basis;
}

void require_calibrated(const Measure& q, const FilteredModel& model)
{
    try {
        check_measure(q, model);
    } catch (const InvalidMeasure& e) {
        throw NotCalibrated(e.what());
    }
    if (!member(q, build_constraints(model)))
        throw NotCalibrated("measure is not a calibrated martingale measure");
}

std::vector<Vector> restricted(const std::vector<Vector>& family, const Cell& support)
{
    std::vector<Vector> out;
    for (const auto& v : family) out.push_back(restrict_to(v, support));
    return out;
}

}  // namespace

HedgingSpan hedging_span(const Measure& q, const FilteredModel& model)
{
    HedgingSpan span;
    span.basis = span_basis(model, &span.labels);
    span.support = q.support();
    span.rank = rank_of(restricted(span.basis, span.support));
    return span;
}

CompletenessReport is_semistatically_complete(const Measure& q, const FilteredModel& model)
{
    require_calibrated(q, model);
    const HedgingSpan span = hedging_span(q, model);
    CompletenessReport r;
    r.rank = span.rank;
    r.support_size = span.support.size();
    r.basis_size = span.basis.size();
    r.complete = r.rank == r.support_size;
    return r;
}

ReplicationResult replicate(const Vector& payoff, const Measure& q, const FilteredModel& model)
{
    require_calibrated(q, model);
    if (payoff.size() != model.atom_count()) throw ShapeMismatch("payoff has wrong length");
    const Cell support = q.support();
    const std::vector<Vector> basis = span_basis(model, nullptr);
    const Matrix a = Matrix::from_columns(restricted(basis, support), support.size());
    ReplicationResult result;
    // minimum-norm coefficients: x = A^T y with (A A^T) y = X on the support
    Matrix gram(support.size(), support.size());
    for (std::size_t i = 0; i < support.size(); ++i)
        for (std::size_t j = i; j < support.size(); ++j) gram(i, j) = gram(j, i) = dot(a.row(i), a.row(j));
    if (auto y = solve(gram, restrict_to(payoff, support))) {
        const Vector x = a.transpose().multiply(*y);
        const auto split = x.begin() + 1 + static_cast<std::ptrdiff_t>(model.claim_count());
        SemiStaticStrategy s;
        s.cash = x[0];
        s.statics.assign(x.begin() + 1, split);
        s.dynamic = position_from_gain_coefficients(model, Vector(split, x.end()));
        result.strategy = std::move(s);
        result.residual = zeros(model.atom_count());
        return result;
    }
    const Projection p = project(basis, payoff, q.weights());
    result.residual = zeros(model.atom_count());
    for (auto s : support) result.residual[s] = p.residual[s];
    return result;
}

bool JacodYorReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const JacodYorCheck& c) { return c.passed(); });
}

JacodYorReport verify_jacod_yor(const FilteredModel& model)
{
    const ConstraintSystem cs = build_constraints(model);
    const VertexSet vs = enumerate_extreme_points(cs);
    if (vs.empty()) throw EmptyMeasureSet("no calibrated martingale measure");
    JacodYorReport report;
    report.vertex_count = vs.size();
    auto run = [&](std::string subject, const Measure& q, bool vertex) {
        JacodYorCheck c{std::move(subject), q, vertex, is_extreme(q, cs).extreme,
                        is_semistatically_complete(q, model).complete};
        report.checks.push_back(std::move(c));
    };
    for (std::size_t i = 0; i < vs.size(); ++i) run("vertex " + std::to_string(i), vs.vertices[i].measure, true);
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            Measure mid(scale(add(vs.vertices[i].measure.weights(), vs.vertices[j].measure.weights()), ratio(1, 2)));
            run("midpoint " + std::to_string(i) + "-" + std::to_string(j), mid, false);
        }
    if (vs.size() >= 3) {
        Vector bary = zeros(model.atom_count());
        for (const auto& v : vs.vertices) bary = add(bary, v.measure.weights());
        run("barycenter", Measure(scale(bary, ratio(1, static_cast<long>(vs.size())))), false);
    }
    return report;
}

namespace {

// Basis of {v in span(family) : v constant on every cell, on the support}.
std::vector<Vector> measurable_subspace(const std::vector<Vector>& family, const std::vector<Cell>& cells,
                                        const Measure& q)
{
    if (family.empty()) return {};
    std::vector<Vector> rows;
    for (const auto& cell : cells) {
        std::optional<std::size_t> first;
        for (auto a : cell) {
            if (!q.charges(a)) continue;
            if (!first) {
                first = a;
                continue;
            }
            Vector row(family.size());
            for (std::size_t i = 0; i < family.size(); ++i) row[i] = family[i][a] - family[i][*first];
            rows.push_back(std::move(row));
        }
    }
    std::vector<Vector> coeffs;
    if (rows.empty()) {
        for (std::size_t i = 0; i < family.size(); ++i) coeffs.push_back(unit(family.size(), i));
    } else {
        coeffs = null_space(Matrix::from_rows(rows));
    }
    std::vector<Vector> out;
    for (const auto& c : coeffs) {
        Vector v = zeros(family.front().size());
        for (std::size_t i = 0; i < family.size(); ++i)
            if (sgn(c[i]) != 0) v = add(v, scale(family[i], c[i]));
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Vector> martingale_of(const FilteredModel& model, const Vector& terminal, const Measure& q)
{
    std::vector<Vector> path;
    for (std::size_t l = 0; l <= model.steps(); ++l) path.push_back(conditional_expectation(model, terminal, l, q));
    return path;
}

}  // namespace

UnhedgeableDecomposition decompose_unhedgeable(const Measure& q, const FilteredModel& model)
{
    if (!is_semistatically_complete(q, model).complete)
        throw NotComplete("semi-static completeness fails under the given measure");
    const Cell support = q.support();
    const std::vector<Vector> gains = elementary_gains(model);
    const Vector& w = q.weights();

    UnhedgeableDecomposition d;
    d.orthogonal = true;
    d.martingale = true;
    for (const auto& psi : model.claims()) {
        const Projection p = project(gains, psi, w);
        Vector v = zeros(model.atom_count());
        for (auto a : support) v[a] = p.residual[a];
        for (const auto& g : gains)
            if (sgn(weighted_dot(w, v, g)) != 0) d.orthogonal = false;
        auto path = martingale_of(model, v, q);
        for (std::size_t l = 0; l < model.steps(); ++l)
            if (conditional_expectation(model, path[l + 1], l, q) != path[l]) d.martingale = false;
        if (path.back() != v) d.martingale = false;
        d.residuals.push_back(std::move(v));
        d.residual_martingales.push_back(std::move(path));
        d.hedges.push_back(position_from_gain_coefficients(model, p.coefficients));
    }

    std::vector<Vector> span;
    for (const auto& v : d.residuals)
        if (!is_zero(v)) span.push_back(v);
    if (!span.empty()) {
        const EchelonForm e = reduced_row_echelon(Matrix::from_columns(span));
        std::vector<Vector> independent;
        for (auto p : e.pivots) independent.push_back(span[p]);
        span = std::move(independent);
    }

    std::vector<Vector> orthogonal;
    for (std::size_t k = 0; k <= model.steps() && orthogonal.size() < span.size(); ++k) {
        UnhedgeableBlock block;
        block.k = k;
        for (auto w_k : measurable_subspace(span, model.cells(k), q)) {
            for (const auto& o : orthogonal)
                w_k = subtract(w_k, scale(o, weighted_dot(w, w_k, o) / weighted_dot(w, o, o)));
            for (std::size_t a = 0; a < w_k.size(); ++a)
                if (!q.charges(a)) w_k[a] = 0;
            if (is_zero(w_k)) continue;
            w_k = primitive(w_k);
            orthogonal.push_back(w_k);
            block.terminal.push_back(std::move(w_k));
        }
        if (block.terminal.empty()) continue;
        block.single_jump = true;
        for (const auto& n : block.terminal) {
            auto path = martingale_of(model, n, q);
            for (std::size_t l = 0; l <= model.steps(); ++l) {
                const Vector expected = l < k ? zeros(n.size()) : n;
                if (restrict_to(path[l], support) != restrict_to(expected, support)) block.single_jump = false;
            }
            block.martingales.push_back(std::move(path));
        }
        const std::size_t level = k == 0 ? 0 : k - 1;
        for (const auto& cell : model.cells(level)) {
            bool carries = false;
            for (auto a : cell)
                for (const auto& n : block.terminal) carries |= q.charges(a) && sgn(n[a]) != 0;
            if (carries) block.atoms.push_back(cell);
        }
        d.blocks.push_back(std::move(block));
    }
    return d;
}

}  // namespace semistatic
