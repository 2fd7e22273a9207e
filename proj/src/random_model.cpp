#include "semistatic/random_model.hpp"

#include <algorithm>

#include "semistatic/polytope.hpp"

namespace semistatic {

long draw(Rng& rng, long lo, long hi)
{
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(rng() % span);
}

Rng trial_rng(std::uint64_t seed, std::uint64_t trial)
{
    std::uint64_t x = seed * 0x9E3779B97F4A7C15ULL + trial + 0x632BE59BD9B4E019ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return Rng(x ^ (x >> 31));
}

namespace {

struct Node {
    std::size_t level;
    std::vector<std::size_t> children;
    Vector increment;  // per asset, relative to the parent
    Rational weight;   // conditional probability under the reference measure
};

ModelSpec random_spec(Rng& rng, const RandomModelOptions& o)
{
    const auto steps = static_cast<std::size_t>(draw(rng, 1, static_cast<long>(o.max_steps)));
    const auto assets = static_cast<std::size_t>(draw(rng, 1, static_cast<long>(o.max_assets)));
    std::vector<Node> nodes{Node{0, {}, zeros(assets), Rational(1)}};
    std::vector<std::size_t> frontier{0};
    for (std::size_t k = 1; k <= steps; ++k) {
        std::vector<std::size_t> next;
        std::size_t count = frontier.size();
        for (auto parent : frontier) {
            long b = draw(rng, 1, 3);
            while (b > 1 && count + static_cast<std::size_t>(b) - 1 > o.max_atoms) --b;
            count += static_cast<std::size_t>(b) - 1;
            std::vector<long> p(static_cast<std::size_t>(b));
            for (auto& x : p) x = draw(rng, 1, 3);
            std::vector<Vector> inc(static_cast<std::size_t>(b), zeros(assets));
            if (b > 1) {
                for (std::size_t j = 0; j < assets; ++j) {
                    Rational acc = 0;
                    for (std::size_t c = 0; c + 1 < inc.size(); ++c) {
                        inc[c][j] = draw(rng, -2, 2);
                        acc += p[c] * inc[c][j];
                    }
                    inc.back()[j] = -acc / p.back();
                }
            }
            long total = 0;
            for (auto x : p) total += x;
            for (std::size_t c = 0; c < inc.size(); ++c) {
                nodes[parent].children.push_back(nodes.size());
                next.push_back(nodes.size());
                nodes.push_back(Node{k, {}, inc[c], ratio(p[c], total)});
            }
        }
        frontier = std::move(next);
    }

    // Raw outcomes per terminal node.
    std::vector<std::size_t> leaf_of_outcome;
    for (auto leaf : frontier) {
        long copies = 1;
        if (o.hidden_outcomes && leaf_of_outcome.size() + frontier.size() < o.max_atoms) copies = draw(rng, 1, 2);
        for (long c = 0; c < copies; ++c) leaf_of_outcome.push_back(leaf);
    }
    const std::size_t n = leaf_of_outcome.size();

    ModelSpec spec;
    for (std::size_t i = 0; i < n; ++i) spec.outcomes.push_back("w" + std::to_string(i));
    for (std::size_t k = 0; k <= steps; ++k) spec.grid.times.emplace_back(static_cast<long>(k));

    // ancestor at each level, prices along the path
    std::vector<std::size_t> parent_of(nodes.size(), 0);
    for (std::size_t v = 0; v < nodes.size(); ++v)
        for (auto c : nodes[v].children) parent_of[c] = v;
    spec.prices.values.assign(assets, std::vector<Vector>(steps + 1, zeros(n)));
    std::vector<std::vector<std::size_t>> ancestor(steps + 1, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t v = leaf_of_outcome[i];
        for (std::size_t k = steps + 1; k-- > 0;) {
            ancestor[k][i] = v;
            v = parent_of[v];
        }
        for (std::size_t k = 1; k <= steps; ++k)
            for (std::size_t j = 0; j < assets; ++j)
                spec.prices.values[j][k][i] = spec.prices.values[j][k - 1][i] + nodes[ancestor[k][i]].increment[j];
    }
    for (std::size_t k = 0; k <= steps; ++k) {
        std::vector<Cell> cells;
        std::vector<std::size_t> seen;
        for (std::size_t i = 0; i < n; ++i) {
            auto it = std::find(seen.begin(), seen.end(), ancestor[k][i]);
            if (it == seen.end()) {
                seen.push_back(ancestor[k][i]);
                cells.push_back({i});
            } else {
                cells[static_cast<std::size_t>(it - seen.begin())].push_back(i);
            }
        }
        spec.filtration.push_back(Partition::canonical(std::move(cells)));
    }
    spec.allowed.assign(n, true);
    if (o.thin_prior && n > 1 && draw(rng, 0, 3) == 0) spec.allowed[static_cast<std::size_t>(draw(rng, 0, static_cast<long>(n) - 1))] = false;
    return spec;
}

}  // namespace

Vector random_convex_combination(Rng& rng, const std::vector<Vector>& points)
{
    std::vector<long> w(points.size());
    long total = 0;
    for (auto& x : w) {
        x = draw(rng, 1, 5);
        total += x;
    }
    Vector out = zeros(points.front().size());
    for (std::size_t i = 0; i < points.size(); ++i) out = add(out, scale(points[i], ratio(w[i], total)));
    return out;
}

FilteredModel random_model(Rng& rng, const RandomModelOptions& options)
{
    for (;;) {
        ModelSpec spec = random_spec(rng, options);
        FilteredModel bare(spec);
        const VertexSet vs = enumerate_extreme_points(build_constraints(bare));
        if (vs.empty()) continue;
        const auto claims = static_cast<std::size_t>(draw(rng, 0, static_cast<long>(options.max_claims)));
        if (claims == 0) return bare;

        std::vector<Vector> chosen;
        for (const auto& v : vs.vertices)
            if (draw(rng, 0, 1) == 1) chosen.push_back(v.measure.weights());
        if (chosen.empty()) chosen.push_back(vs.vertices[static_cast<std::size_t>(draw(rng, 0, static_cast<long>(vs.size()) - 1))].measure.weights());
        const Vector reference = random_convex_combination(rng, chosen);
        for (std::size_t c = 0; c < claims; ++c) {
            const Vector f = random_payoff(rng, bare);
            const Rational mean = dot(reference, f);
            Vector psi(f.size());
            for (std::size_t a = 0; a < f.size(); ++a) psi[a] = f[a] - mean;
            spec.claims.push_back(bare.to_outcomes(psi));
        }
        return FilteredModel(std::move(spec));
    }
}

Vector random_payoff(Rng& rng, const FilteredModel& model)
{
    Vector v(model.atom_count());
    for (auto& x : v) x = draw(rng, -3, 3);
    return v;
}

SingleJump random_jump(Rng& rng, const FilteredModel& model)
{
    const std::size_t n = model.spec().outcomes.size();
    const auto steps = static_cast<long>(model.steps());
    SingleJump j{std::vector<Time>(n), zeros(n)};
    switch (draw(rng, 0, 2)) {
    case 0:
        for (std::size_t o = 0; o < n; ++o) {
            const long t = draw(rng, -1, steps);
            if (t < 0) continue;
            j.tau[o] = static_cast<std::size_t>(t);
            j.mark[o] = draw(rng, 1, 2);
        }
        break;
    case 1: {
        const auto asset = static_cast<std::size_t>(draw(rng, 0, static_cast<long>(model.assets()) - 1));
        const Rational level = Rational(draw(rng, -1, 1));
        for (std::size_t o = 0; o < n; ++o) {
            for (std::size_t k = 1; k <= model.steps(); ++k)
                if (model.spec().prices.values[asset][k][o] > level) {
                    j.tau[o] = k;
                    j.mark[o] = 1;
                    break;
                }
        }
        break;
    }
    default:
        for (std::size_t o = 0; o < n; ++o)
            if (draw(rng, 0, 1) == 1) {
                j.tau[o] = 0;
                j.mark[o] = 1;
            }
        break;
    }
    return j;
}

Measure random_measure(Rng& rng, const std::vector<bool>& allowed)
{
    std::vector<long> w(allowed.size(), 0);
    long total = 0;
    for (std::size_t a = 0; a < allowed.size(); ++a)
        if (allowed[a] && draw(rng, 0, 3) != 0) {
            w[a] = draw(rng, 1, 4);
            total += w[a];
        }
    if (total == 0) {
        for (std::size_t a = 0; a < allowed.size(); ++a)
            if (allowed[a]) {
                w[a] = 1;
                total = 1;
                break;
            }
    }
    Vector v(allowed.size());
    for (std::size_t a = 0; a < v.size(); ++a) v[a] = ratio(w[a], total);
    return Measure(std::move(v));
}

}  // namespace semistatic
