#include "semistatic/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include <CLI11.hpp>

#include "semistatic/duality.hpp"
#include "semistatic/enlargement.hpp"
#include "semistatic/errors.hpp"
#include "semistatic/hedging.hpp"
#include "semistatic/tree.hpp"
#include "semistatic/verify.hpp"

namespace semistatic {

namespace {

struct Options {
    std::string scenario;
    std::string payoff;
    std::string measure = "0";
    std::string format = "json";
    std::string suite = "all";
    long p_max = 5;
    long m_max = 6;
    std::uint64_t seed = 1;
    std::size_t trials = 200;
    bool measure_given = false;
};

struct Outcome {
    Json report;
    int code = Pass;
};

unsigned thread_count()
{
    const char* v = std::getenv("SEMISTATIC_THREADS");
    if (!v || !*v) return 1;
    char* end = nullptr;
    const unsigned long n = std::strtoul(v, &end, 10);
    if (*end != '\0' || n == 0) return 1;
    return static_cast<unsigned>(std::min(n, 256ul));
}

Json cells_json(const std::vector<Cell>& cells, const std::vector<std::string>& labels)
{
    Json out = Json::array();
    for (const auto& c : cells) {
        Json l = Json::array();
        for (auto i : c) l.push_back(labels[i]);
        out.push_back(l);
    }
    return out;
}

Json labels_json(const Cell& c, const std::vector<std::string>& labels)
{
    Json out = Json::array();
    for (auto i : c) out.push_back(labels[i]);
    return out;
}

Json rational_arrays(const std::vector<Vector>& xs)
{
    Json out = Json::array();
    for (const auto& x : xs) out.push_back(vector_to_json(x));
    return out;
}

Json robust_json(const RobustPriceResult& r, const FilteredModel& m)
{
    Json out;
    out["empty"] = r.empty;
    out["value"] = r.empty ? Json("-inf") : rational_to_json(r.value);
    Json arg = Json::array();
    for (const auto& q : r.argmax) arg.push_back(measure_to_json(q, m));
    out["argmax"] = arg;
    return out;
}

Json arbitrage_json(const ArbitrageResult& r, const FilteredModel& m)
{
    Json out;
    out["arbitrage"] = r.arbitrage;
    out["vertex_count"] = r.vertex_count;
    if (r.certificate) {
        out["certificate"] = strategy_to_json(*r.certificate);
        out["certificate_payoff"] = vector_to_json(r.certificate_payoff);
        out["certificate_atoms"] = m.atom_labels();
    }
    return out;
}

FilteredModel build_model(const Scenario& s)
{
    const ValidationReport r = validate_model(s.spec);
    if (!r.ok()) throw InvalidModel(r.summary());
    return FilteredModel(s.spec);
}

Json header(const std::string& command, const Scenario& s)
{
    Json out;
    out["command"] = command;
    out["scenario"] = s.name;
    return out;
}

Outcome cmd_validate(const Scenario& s)
{
    Outcome o{header("validate", s)};
    const ValidationReport r = validate_model(s.spec);
    o.report["ok"] = r.ok();
    Json issues = Json::array();
    for (const auto& i : r.issues)
        issues.push_back(Json{{"check", i.check}, {"index", i.index ? Json(*i.index) : Json(nullptr)}, {"detail", i.detail}});
    o.report["issues"] = issues;
    if (r.ok()) {
        const FilteredModel m(s.spec);
        o.report["outcomes"] = s.spec.outcomes.size();
        o.report["atoms"] = m.atom_labels();
        o.report["steps"] = m.steps();
        o.report["assets"] = m.assets();
        o.report["claims"] = m.claim_count();
        Json f = Json::array();
        for (std::size_t k = 0; k <= m.steps(); ++k) f.push_back(cells_json(m.cells(k), m.atom_labels()));
        o.report["filtration"] = f;
    }
    o.code = r.ok() ? Pass : PropertyFailure;
    return o;
}

Outcome cmd_extremes(const Scenario& s)
{
    const FilteredModel m = build_model(s);
    const ConstraintSystem cs = build_constraints(m);
    const VertexSet v = enumerate_extreme_points(cs);
    Outcome o{header("extremes", s)};
    o.report["atoms"] = m.atom_labels();
    Json rows = Json::array();
    for (const auto& l : cs.labels) rows.push_back(describe(l));
    o.report["constraints"] = rows;
    o.report["count"] = v.size();
    Json vs = Json::array();
    for (const auto& x : v.vertices) {
        Json j = measure_to_json(x.measure, m);
        j["rank"] = x.certificate.rank;
        Json w = Json::array();
        for (auto r : x.certificate.witness_rows) w.push_back(describe(cs.labels[r]));
        j["witness_rows"] = w;
        vs.push_back(j);
    }
    o.report["vertices"] = vs;
    return o;
}

Measure pick_measure(const Options& opt, const FilteredModel& m)
{
    return resolve_measure(opt.measure, enumerate_extreme_points(build_constraints(m)), m);
}

Outcome cmd_complete(const Scenario& s, const Options& opt)
{
    const FilteredModel m = build_model(s);
    const Measure q = pick_measure(opt, m);
    const ConstraintSystem cs = build_constraints(m);
    Outcome o{header("complete", s)};
    o.report["measure"] = measure_to_json(q, m);
    const ExtremalityCertificate ext = is_extreme(q, cs);
    const CompletenessReport c = is_semistatically_complete(q, m);
    o.report["extreme"] = ext.extreme;
    o.report["complete"] = c.complete;
    o.report["rank"] = c.rank;
    o.report["support_size"] = c.support_size;
    o.report["basis_size"] = c.basis_size;
    if (!ext.extreme) o.report["direction"] = vector_to_json(ext.direction);
    o.report["equivalence_holds"] = ext.extreme == c.complete;
    o.code = ext.extreme == c.complete ? Pass : PropertyFailure;
    return o;
}

Outcome cmd_replicate(const Scenario& s, const Options& opt)
{
    const FilteredModel m = build_model(s);
    const Vector payoff = m.to_atoms(resolve_payoff(s, opt.payoff));
    const Measure q = pick_measure(opt, m);
    const ReplicationResult r = replicate(payoff, q, m);
    Outcome o{header("replicate", s)};
    o.report["payoff"] = opt.payoff;
    o.report["measure"] = measure_to_json(q, m);
    o.report["replicable"] = r.replicable();
    if (r.strategy) {
        o.report["strategy"] = strategy_to_json(*r.strategy);
        o.report["strategy_payoff"] = vector_to_json(strategy_payoff(*r.strategy, m));
    }
    o.report["residual"] = vector_to_json(r.residual);
    return o;
}

Outcome cmd_price(const Scenario& s, const Options& opt)
{
    const FilteredModel m = build_model(s);
    const Vector payoff = m.to_atoms(resolve_payoff(s, opt.payoff));
    Outcome o{header("price", s)};
    o.report["payoff"] = opt.payoff;
    o.report["robust_price"] = robust_json(robust_price(payoff, m), m);
    return o;
}

Outcome cmd_superhedge(const Scenario& s, const Options& opt)
{
    const FilteredModel m = build_model(s);
    const Vector payoff = m.to_atoms(resolve_payoff(s, opt.payoff));
    const SuperhedgeResult r = superhedge(payoff, m);
    Outcome o{header("superhedge", s)};
    o.report["payoff"] = opt.payoff;
    o.report["unbounded"] = r.unbounded;
    if (r.unbounded) {
        o.report["price"] = "-inf";
        o.report["arbitrage"] = arbitrage_json(detect_arbitrage(m), m);
    } else {
        o.report["price"] = rational_to_json(r.price);
        o.report["strategy"] = strategy_to_json(r.strategy);
        o.report["tight_atoms"] = labels_json(r.tight_atoms, m.atom_labels());
    }
    return o;
}

Outcome cmd_duality(const Scenario& s, const Options& opt)
{
    const FilteredModel m = build_model(s);
    const Vector payoff = m.to_atoms(resolve_payoff(s, opt.payoff));
    Outcome o{header("duality", s)};
    o.report["payoff"] = opt.payoff;
    try {
        const DualityReport d = verify_duality(payoff, m);
        o.report["primal"] = rational_to_json(d.primal);
        o.report["dual"] = rational_to_json(d.dual);
        o.report["gap"] = rational_to_json(d.gap);
        o.report["strategy"] = strategy_to_json(d.strategy);
        o.report["argmax"] = measure_to_json(d.argmax, m);
        o.report["tight_atoms"] = labels_json(d.tight_atoms, m.atom_labels());
        o.report["dominates"] = d.dominates;
        o.report["complementary_slackness"] = d.complementary_slackness;
        o.report["holds"] = d.holds();
        o.code = d.holds() ? Pass : PropertyFailure;
    } catch (const EmptyMeasureSet&) {
        o.report["holds"] = false;
        o.report["arbitrage"] = arbitrage_json(detect_arbitrage(m), m);
        o.code = PropertyFailure;
    }
    return o;
}

Json conditions_json(const TheoremConditions& c)
{
    Json out;
    out["valid"] = c.valid;
    out["full"] = c.full;
    Json leaves = Json::array();
    for (const auto& l : c.leaves)
        leaves.push_back(Json{{"leaf", l.leaf}, {"rank", l.rank}, {"charged", l.charged}, {"complete", l.complete()}});
    out["leaves"] = leaves;
    out["claims_rank"] = c.claims_rank;
    out["required_rank"] = c.required_rank;
    out["prices_constant"] = c.prices_constant;
    out["passed"] = c.passed();
    return out;
}

Outcome cmd_tree(const Scenario& s, const Options& opt)
{
    const FilteredModel m = build_model(s);
    const Measure q = pick_measure(opt, m);
    Outcome o{header("tree", s)};
    o.report["measure"] = measure_to_json(q, m);
    const CompletenessReport c = is_semistatically_complete(q, m);
    o.report["complete"] = c.complete;
    if (!c.complete) {
        o.report["found"] = false;
        o.report["diagnostic"] = "measure is not semi-statically complete";
        return o;
    }
    const TreeExtraction e = extract_tree(q, m);
    o.report["found"] = e.found();
    if (e.found()) {
        o.report["tree"] = tree_to_json(*e.tree, m);
        o.report["render"] = render_tree(*e.tree, m);
        o.report["conditions"] = conditions_json(check_theorem_conditions(*e.tree, q, m));
        Json tree_values = Json::array();
        for (const auto& psi : m.claims()) tree_values.push_back(vector_to_json(sigma_tree_expectation(psi, *e.tree, q)));
        o.report["claims_on_tree"] = tree_values;
        Json hedges = Json::array();
        for (const auto& h : e.hedges)
            hedges.push_back(strategy_to_json(SemiStaticStrategy{Rational(0), zeros(m.claim_count()), h}));
        o.report["hedges"] = hedges;
    } else {
        o.report["diagnostic"] = e.diagnostic;
    }
    return o;
}

void require_jumps(const Scenario& s)
{
    if (s.jumps.empty()) throw ParseError("jumps: the scenario defines no jumps");
}

Outcome cmd_enlarge(const Scenario& s, const Options& opt)
{
    require_jumps(s);
    const FilteredModel m = build_model(s);
    for (const auto& j : s.jumps) validate_jump(j, m);
    const EnlargedModel e = enlarge(m, s.jumps);
    const FilteredModel& g = e.enlarged;
    Measure q = [&] {
        if (opt.measure_given) return resolve_measure(opt.measure, enumerate_extreme_points(build_constraints(g)), g);
        long n = 0;
        for (bool a : g.allowed()) n += a;
        Vector w(g.atom_count());
        for (std::size_t a = 0; a < w.size(); ++a)
            if (g.allowed()[a]) w[a] = ratio(1, n);
        return Measure(w);
    }();
    Outcome o{header("enlarge", s)};
    o.report["atoms"] = g.atom_labels();
    Json f = Json::array();
    for (std::size_t k = 0; k <= g.steps(); ++k) f.push_back(cells_json(g.cells(k), g.atom_labels()));
    o.report["enlarged_filtration"] = f;
    o.report["measure"] = measure_to_json(q, g);
    Json jumps = Json::array();
    bool ok = true;
    for (std::size_t i = 0; i < s.jumps.size(); ++i) {
        const AtomJump j = e.jump(i);
        const AtomFiltration gi = e.single_jump_cells(i);
        const auto a = compensator(q, j, e.base_cells);
        const auto cc = check_compensator(q, j, e.base_cells, a);
        Json jj;
        jj["azema"] = rational_arrays(azema(q, j.tau, e.base_cells));
        jj["compensator"] = rational_arrays(a);
        jj["compensator_predictable"] = cc.predictable;
        jj["compensator_increasing"] = cc.increasing;
        jj["compensator_martingale"] = cc.martingale;
        try {
            const auto mm = jeulin_yor(q, j, e.base_cells);
            const bool jy = check_jeulin_yor(q, mm, e.base_cells, gi);
            jj["jeulin_yor"] = rational_arrays(mm);
            jj["jeulin_yor_martingale"] = jy;
            ok = ok && jy;
        } catch (const SingularCompensator& ex) {
            jj["jeulin_yor"] = nullptr;
            jj["singular"] = ex.what();
            ok = false;
        }
        jj["traces_agree"] = traces_agree(j.tau, e.base_cells, gi);
        ok = ok && cc.passed();
        jumps.push_back(jj);
    }
    o.report["jumps"] = jumps;
    o.report["filtrations_coincide"] = filtrations_coincide(q, e.base_cells, atom_filtration(g));
    o.report["passed"] = ok;
    o.code = ok ? Pass : PropertyFailure;
    return o;
}

Outcome cmd_informed(const Scenario& s)
{
    require_jumps(s);
    const FilteredModel m = build_model(s);
    for (const auto& j : s.jumps) validate_jump(j, m);
    const EnlargedModel e = enlarge(m, s.jumps);
    const InformedComparison c = informed_compare(e, s.payoffs);
    Outcome o{header("informed-compare", s)};
    o.report["ext_F"] = vertex_set_to_json(c.base_vertices, m);
    o.report["ext_G"] = vertex_set_to_json(c.enlarged_vertices, e.enlarged);
    o.report["coincide_flags"] = c.enlarged_coincide;
    Json push = Json::array();
    for (const auto& q : c.base_pushforward) push.push_back(measure_to_json(q, m));
    o.report["ext_G_on_F"] = push;
    Json pred = Json::array();
    for (const auto& q : c.predicted) pred.push_back(measure_to_json(q, e.enlarged));
    o.report["predicted"] = pred;
    o.report["claims_free"] = c.claims_free;
    o.report["corollary_holds"] = c.corollary_holds ? Json(*c.corollary_holds) : Json(nullptr);
    Json prices = Json::array();
    for (const auto& p : c.prices)
        prices.push_back(Json{{"payoff", p.payoff}, {"F", robust_json(p.base, m)}, {"G", robust_json(p.enlarged, e.enlarged)}});
    o.report["prices"] = prices;
    o.report["arbitrage"] = arbitrage_json(c.arbitrage, e.enlarged);
    o.code = c.corollary_holds.value_or(true) ? Pass : PropertyFailure;
    return o;
}

Outcome cmd_verify(const Options& opt)
{
    SuiteOptions so;
    so.seed = opt.seed;
    so.trials = opt.trials;
    so.p_max = opt.p_max;
    so.m_max = opt.m_max;
    so.threads = thread_count();
    std::vector<std::string> suites;
    if (opt.suite == "all")
        suites = suite_names();
    else
        suites = {opt.suite};
    Outcome o;
    o.report["command"] = "verify";
    o.report["seed"] = opt.seed;
    o.report["trials"] = opt.trials;
    Json rs = Json::array();
    bool ok = true;
    for (const auto& name : suites) {
        const SuiteResult r = run_suite(name, so);
        ok = ok && r.passed();
        rs.push_back(suite_to_json(r));
    }
    o.report["suites"] = rs;
    o.report["passed"] = ok;
    o.code = ok ? Pass : PropertyFailure;
    return o;
}

bool scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void render(const Json& j, const std::string& indent, std::ostringstream& out)
{
    const auto line = [&](const std::string& head, const Json& v) {
        if (scalar(v)) {
            const std::string text = scalar_text(v);
            if (text.find('\n') == std::string::npos) {
                out << indent << head << " " << text << "\n";
            } else {
                out << indent << head << "\n";
                std::istringstream in(text);
                for (std::string l; std::getline(in, l);) out << indent << "  " << l << "\n";
            }
        } else if (v.is_array() && std::all_of(v.begin(), v.end(), scalar)) {
            std::string items;
            for (const auto& x : v) items += (items.empty() ? "" : ", ") + scalar_text(x);
            out << indent << head << " [" << items << "]\n";
        } else {
            out << indent << head << "\n";
            render(v, indent + "  ", out);
        }
    };
    if (j.is_object())
        for (const auto& [k, v] : j.items()) line(k + ":", v);
    else if (j.is_array())
        for (const auto& v : j) line("-", v);
    else
        out << indent << scalar_text(j) << "\n";
}

}  // namespace

std::string render_text(const Json& report)
{
    std::ostringstream out;
    render(report, "", out);
    return out.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Semi-static completeness, hedging and enlargement on finite models", "semistatic"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"json", "text"}));

    const auto scenario = [&](CLI::App* sub) {
        sub->add_option("scenario", opt.scenario, "Scenario JSON file")->required();
    };
    const auto payoff = [&](CLI::App* sub) {
        sub->add_option("--payoff", opt.payoff, "Payoff name in the scenario, or comma-separated values per outcome")
            ->required();
    };
    const auto measure = [&](CLI::App* sub, bool required) {
        auto* m = sub->add_option("--measure", opt.measure,
                                  "Vertex index in canonical order, or comma-separated weights per atom");
        if (required) m->required();
    };

    auto* validate = app.add_subcommand("validate", "Check the model invariants");
    scenario(validate);
    auto* extremes = app.add_subcommand("extremes", "Enumerate the extreme calibrated martingale measures");
    scenario(extremes);
    auto* complete = app.add_subcommand("complete", "Test semi-static completeness under a measure");
    scenario(complete);
    measure(complete, true);
    auto* repl = app.add_subcommand("replicate", "Replicate a payoff under a measure");
    scenario(repl);
    payoff(repl);
    measure(repl, false);
    auto* price = app.add_subcommand("price", "Robust price over the extreme measures");
    scenario(price);
    payoff(price);
    auto* sh = app.add_subcommand("superhedge", "Quasi-sure superhedging price and strategy");
    scenario(sh);
    payoff(sh);
    auto* dual = app.add_subcommand("duality", "Certify superhedging duality");
    scenario(dual);
    payoff(dual);
    auto* tree = app.add_subcommand("tree", "Extract an atomic tree for a complete measure");
    scenario(tree);
    measure(tree, true);
    auto* enl = app.add_subcommand("enlarge", "Azema, compensator and Jeulin-Yor processes for the scenario jumps");
    scenario(enl);
    measure(enl, false);
    auto* inf = app.add_subcommand("informed-compare", "Compare measure sets and prices under F and the enlarged G");
    scenario(inf);
    auto* ver = app.add_subcommand("verify", "Randomized and exhaustive property suites");
    std::vector<std::string> suites = suite_names();
    suites.push_back("all");
    ver->add_option("--suite", opt.suite, "Suite to run")->check(CLI::IsMember(suites));
    ver->add_option("--pmax", opt.p_max, "Largest p for the multinomial suite")->check(CLI::PositiveNumber);
    ver->add_option("--mmax", opt.m_max, "Largest m for the multinomial suite")->check(CLI::PositiveNumber);
    ver->add_option("--seed", opt.seed, "Seed for the randomized suites");
    ver->add_option("--trials", opt.trials, "Trials per randomized suite");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Pass : InputError;
    }
    for (auto* sub : {repl, enl})
        if (sub->parsed() && sub->count("--measure") > 0) opt.measure_given = true;

    Outcome result;
    try {
        if (ver->parsed()) {
            result = cmd_verify(opt);
        } else {
            const Scenario s = load_scenario(opt.scenario);
            if (validate->parsed())
                result = cmd_validate(s);
            else if (extremes->parsed())
                result = cmd_extremes(s);
            else if (complete->parsed())
                result = cmd_complete(s, opt);
            else if (repl->parsed())
                result = cmd_replicate(s, opt);
            else if (price->parsed())
                result = cmd_price(s, opt);
            else if (sh->parsed())
                result = cmd_superhedge(s, opt);
            else if (dual->parsed())
                result = cmd_duality(s, opt);
            else if (tree->parsed())
                result = cmd_tree(s, opt);
            else if (enl->parsed())
                result = cmd_enlarge(s, opt);
            else
                result = cmd_informed(s);
        }
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return InputError;
    } catch (const InvalidModel& e) {
        err << "invalid model: " << e.what() << "\n";
        return InputError;
    } catch (const InvalidMeasure& e) {
        err << "invalid measure: " << e.what() << "\n";
        return InputError;
    } catch (const ConstraintViolation& e) {
        err << "measure is not calibrated: " << e.what() << "\n";
        return InputError;
    } catch (const NotCalibrated& e) {
        err << "measure is not calibrated: " << e.what() << "\n";
        return InputError;
    } catch (const NotMeasurable& e) {
        err << "not measurable: " << e.what() << "\n";
        return InputError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return PropertyFailure;
    }

    if (opt.format == "text")
        out << render_text(result.report);
    else
        out << result.report.dump(2) << "\n";
    return result.code;
}

}  // namespace semistatic
