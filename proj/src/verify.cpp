#include "semistatic/verify.hpp"

#include <atomic>
#include <functional>
#include <map>
#include <thread>

#include "semistatic/bounds.hpp"
#include "semistatic/duality.hpp"
#include "semistatic/enlargement.hpp"
#include "semistatic/errors.hpp"
#include "semistatic/random_model.hpp"

namespace semistatic {

namespace {

struct Trial {
    std::size_t checks = 0;
    std::vector<std::string> failures;
    std::map<std::string, long> counts;

    void check(bool ok, std::size_t trial, const std::string& what)
    {
        ++checks;
        if (!ok) failures.push_back("trial " + std::to_string(trial) + ": " + what);
    }
};

using TrialFn = std::function<void(std::size_t, Rng&, Trial&)>;

SuiteResult run_trials(const std::string& suite, const SuiteOptions& o, const TrialFn& fn)
{
    std::vector<Trial> results(o.trials);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t t = next++; t < o.trials; t = next++) {
            Rng rng = trial_rng(o.seed, t);
            try {
                fn(t, rng, results[t]);
            } catch (const std::exception& e) {
                results[t].failures.push_back("trial " + std::to_string(t) + ": " + e.what());
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(o.threads, static_cast<unsigned>(o.trials)));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    SuiteResult r;
    r.suite = suite;
    r.trials = o.trials;
    std::map<std::string, long> counts;
    for (const auto& t : results) {
        r.checks += t.checks;
        r.failures.insert(r.failures.end(), t.failures.begin(), t.failures.end());
        for (const auto& [k, v] : t.counts) counts[k] += v;
    }
    for (const auto& [k, v] : counts) r.stats[k] = v;
    return r;
}

void jacod_yor_trial(std::size_t t, Rng& rng, Trial& out)
{
    const FilteredModel m = random_model(rng);
    const JacodYorReport rep = verify_jacod_yor(m);
    for (const auto& c : rep.checks)
        out.check(c.passed(), t,
                  c.subject + ": vertex=" + std::to_string(c.vertex) + " extreme=" + std::to_string(c.extreme) +
                      " complete=" + std::to_string(c.complete));
    out.counts["atoms"] += static_cast<long>(m.atom_count());
    out.counts["vertices"] += static_cast<long>(rep.vertex_count);
    out.counts["combinations"] += static_cast<long>(rep.checks.size() - rep.vertex_count);
}

void duality_trial(std::size_t t, Rng& rng, Trial& out)
{
    const FilteredModel m = random_model(rng);
    const VertexSet vs = enumerate_extreme_points(build_constraints(m));
    for (int i = 0; i < 5; ++i) {
        const Vector payoff = random_payoff(rng, m);
        const DualityReport d = verify_duality(payoff, m);
        const std::string tag = "payoff " + std::to_string(i);
        out.check(sgn(d.gap) == 0, t, tag + ": gap " + to_string(d.gap));
        out.check(d.primal == robust_price(payoff, vs).value, t, tag + ": superhedge price differs from vertex maximum");
        out.check(d.dominates, t, tag + ": strategy does not dominate the payoff");
        out.check(d.complementary_slackness, t, tag + ": complementary slackness fails");
        out.counts["payoffs"] += 1;
        out.counts["tight_atoms"] += static_cast<long>(d.tight_atoms.size());
    }
    out.counts["vertices"] += static_cast<long>(vs.size());
}

void jeulin_yor_trial(std::size_t t, Rng& rng, Trial& out)
{
    const FilteredModel m = random_model(rng);
    const EnlargedModel e = enlarge(m, {random_jump(rng, m)});
    const Measure q = random_measure(rng, e.enlarged.allowed());
    const AtomJump j = e.jump(0);
    const AtomFiltration& f = e.base_cells;
    const AtomFiltration g = e.single_jump_cells(0);
    const auto a = compensator(q, j, f);
    const CompensatorCheck cc = check_compensator(q, j, f, a);
    out.check(cc.predictable, t, "compensator is not predictable");
    out.check(cc.increasing, t, "compensator is not increasing");
    out.check(cc.martingale, t, "compensated jump is not an F-martingale");
    out.check(check_jeulin_yor(q, jeulin_yor(q, j, f), f, g), t, "Jeulin-Yor process is not a G-martingale");
    out.check(traces_agree(j.tau, f, g), t, "traces of F and G differ before the jump");
    for (auto x : q.support())
        if (j.tau[x]) out.counts["charged_jump_atoms"] += 1;
    out.counts["enlarged_atoms"] += static_cast<long>(e.enlarged.atom_count());
}

void corollary_trial(std::size_t t, Rng& rng, Trial& out)
{
    RandomModelOptions o;
    o.max_claims = 0;
    const FilteredModel m = random_model(rng, o);
    std::vector<SingleJump> jumps{random_jump(rng, m)};
    if (draw(rng, 0, 1) == 1) jumps.push_back(random_jump(rng, m));
    const InformedComparison c = informed_compare(m, jumps);
    out.check(c.corollary_holds.value_or(false), t,
              "ext M(G) has " + std::to_string(c.enlarged_vertices.size()) + " vertices, " +
                  std::to_string(c.predicted.size()) + " predicted");
    out.counts["jumps"] += static_cast<long>(jumps.size());
    out.counts["base_vertices"] += static_cast<long>(c.base_vertices.size());
    out.counts["enlarged_vertices"] += static_cast<long>(c.enlarged_vertices.size());
    if (c.enlarged_vertices.empty()) out.counts["empty_enlarged"] += 1;
}

SuiteResult multinomial_suite(const SuiteOptions& o)
{
    SuiteResult r;
    r.suite = "multinomial";
    long in_range = 0;
    for (const auto& b : verify_multinomial_inequality(o.p_max, o.m_max)) {
        ++r.checks;
        in_range += b.p_below_m;
        if (!b.holds())
            r.failures.push_back("p=" + std::to_string(b.p) + " m=" + std::to_string(b.m) + ": " + b.lhs.get_str() +
                                 " > " + b.rhs.get_str());
    }
    r.trials = r.checks;
    r.stats["pairs"] = static_cast<long>(r.checks);
    r.stats["p_below_m"] = in_range;
    r.stats["lhs_2_2"] = multinomial_lhs(2, 2).get_str();
    return r;
}

}  // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"jacod-yor", "duality", "jeulin-yor", "corollary54", "multinomial"};
    return names;
}

SuiteResult run_suite(const std::string& suite, const SuiteOptions& options)
{
    if (suite == "jacod-yor") return run_trials(suite, options, jacod_yor_trial);
    if (suite == "duality") return run_trials(suite, options, duality_trial);
    if (suite == "jeulin-yor") return run_trials(suite, options, jeulin_yor_trial);
    if (suite == "corollary54") return run_trials(suite, options, corollary_trial);
    if (suite == "multinomial") return multinomial_suite(options);
    throw ParseError("unknown suite '" + suite + "'");
}

Json suite_to_json(const SuiteResult& r)
{
    Json out;
    out["suite"] = r.suite;
    out["trials"] = r.trials;
    out["checks"] = r.checks;
    out["passed"] = r.passed();
    out["stats"] = r.stats;
    out["failures"] = r.failures;
    return out;
}

}  // namespace semistatic
