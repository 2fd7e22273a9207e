#include "semistatic/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "semistatic/errors.hpp"

namespace semistatic {

namespace {

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
std::string dot(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ParseError(path + ": " + what); }

const Json& array_at(const Json& j, const std::string& path)
{
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

std::string string_from(const Json& j, const std::string& path)
{
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

std::size_t index_from(const Json& j, const std::string& path)
{
    if (!j.is_number_unsigned()) fail(path, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

std::vector<std::string> strings_from(const Json& j, const std::string& path)
{
    std::vector<std::string> out;
    std::size_t i = 0;
    for (const auto& x : array_at(j, path)) out.push_back(string_from(x, at(path, i++)));
    return out;
}

std::size_t label_index(const std::map<std::string, std::size_t>& index, const std::string& label,
                        const std::string& path)
{
    const auto it = index.find(label);
    if (it == index.end()) fail(path, "unknown label '" + label + "'");
    return it->second;
}

std::map<std::string, std::size_t> index_of(const std::vector<std::string>& labels)
{
    std::map<std::string, std::size_t> m;
    for (std::size_t i = 0; i < labels.size(); ++i) m.emplace(labels[i], i);
    return m;
}

Cell cell_from_labels(const Json& j, const std::map<std::string, std::size_t>& index, const std::string& path)
{
    Cell c;
    std::size_t i = 0;
    for (const auto& x : array_at(j, path)) {
        c.push_back(label_index(index, string_from(x, at(path, i)), at(path, i)));
        ++i;
    }
    std::sort(c.begin(), c.end());
    return c;
}

Json labels_of(const Cell& c, const std::vector<std::string>& labels)
{
    Json out = Json::array();
    for (auto i : c) out.push_back(labels[i]);
    return out;
}

Vector split_list(const std::string& text, const std::string& what)
{
    Vector v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            v.push_back(parse_rational(item));
        } catch (const ParseError& e) {
            throw ParseError(what + ": " + e.what());
        }
    }
    return v;
}

bool all_digits(const std::string& s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

Json rational_to_json(const Rational& x) { return to_string(x); }

Rational rational_from_json(const Json& j, const std::string& path)
{
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number()) fail(path, "floating-point numbers are not accepted; use a \"p/q\" string");
    if (!j.is_string()) fail(path, "expected a rational string or integer");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
        fail(path, e.what());
    }
}

Json vector_to_json(const Vector& v)
{
    Json out = Json::array();
    for (const auto& x : v) out.push_back(rational_to_json(x));
    return out;
}

Vector vector_from_json(const Json& j, const std::string& path)
{
    Vector v;
    std::size_t i = 0;
    for (const auto& x : array_at(j, path)) v.push_back(rational_from_json(x, at(path, i++)));
    return v;
}

Scenario parse_scenario(const std::string& text)
{
    Json root;
    try {
        root = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) fail("$", "expected an object");
    static const std::set<std::string> known{"name",   "description", "reference",     "outcomes", "times",
                                             "filtration", "prices",  "claims", "prior_support", "jumps",
                                             "payoffs"};
    for (const auto& [key, _] : root.items())
        if (!known.count(key)) fail(key, "unknown field");
    for (const char* key : {"outcomes", "times", "filtration"})
        if (!root.contains(key)) fail(key, "missing field");

    Scenario s;
    if (root.contains("name")) s.name = string_from(root["name"], "name");
    if (root.contains("description")) s.description = string_from(root["description"], "description");
    if (root.contains("reference")) s.reference = string_from(root["reference"], "reference");

    ModelSpec& spec = s.spec;
    spec.outcomes = strings_from(root["outcomes"], "outcomes");
    const auto outcome_index = index_of(spec.outcomes);
    if (outcome_index.size() != spec.outcomes.size()) fail("outcomes", "labels must be distinct");
    const std::size_t n = spec.outcomes.size();

    spec.grid.times = vector_from_json(root["times"], "times");

    if (root.contains("prices")) {
        const Json& p = array_at(root["prices"], "prices");
        for (std::size_t j = 0; j < p.size(); ++j) {
            const std::string pj = at("prices", j);
            std::vector<Vector> slices;
            for (std::size_t k = 0; k < array_at(p[j], pj).size(); ++k) {
                Vector v = vector_from_json(p[j][k], at(pj, k));
                if (v.size() != n) fail(at(pj, k), "expected " + std::to_string(n) + " values");
                slices.push_back(std::move(v));
            }
            spec.prices.values.push_back(std::move(slices));
        }
    }

    const Json& f = root["filtration"];
    if (f.is_string()) {
        if (f.get<std::string>() != "natural") fail("filtration", "expected \"natural\" or a list of partitions");
        spec.filtration = natural_filtration(spec.prices, n, spec.grid.steps());
    } else {
        std::size_t k = 0;
        for (const auto& pk : array_at(f, "filtration")) {
            const std::string path = at("filtration", k++);
            std::vector<Cell> cells;
            std::size_t c = 0;
            for (const auto& cell : array_at(pk, path)) cells.push_back(cell_from_labels(cell, outcome_index, at(path, c++)));
            spec.filtration.push_back(Partition::canonical(std::move(cells)));
        }
    }

    if (root.contains("claims")) {
        std::size_t i = 0;
        for (const auto& c : array_at(root["claims"], "claims")) {
            Vector v = vector_from_json(c, at("claims", i));
            if (v.size() != n) fail(at("claims", i), "expected " + std::to_string(n) + " values");
            spec.claims.push_back(std::move(v));
            ++i;
        }
    }

    if (root.contains("prior_support")) {
        spec.allowed.assign(n, false);
        for (auto o : cell_from_labels(root["prior_support"], outcome_index, "prior_support")) spec.allowed[o] = true;
    }

    if (root.contains("jumps")) {
        std::size_t i = 0;
        for (const auto& jj : array_at(root["jumps"], "jumps")) {
            const std::string path = at("jumps", i++);
            if (!jj.is_object() || !jj.contains("tau") || !jj.contains("mark")) fail(path, "expected {tau, mark}");
            SingleJump jump;
            std::size_t o = 0;
            for (const auto& t : array_at(jj["tau"], dot(path, "tau"))) {
                const std::string tp = at(dot(path, "tau"), o++);
                if (t.is_string() && t.get<std::string>() == "inf")
                    jump.tau.emplace_back(std::nullopt);
                else
                    jump.tau.emplace_back(index_from(t, tp));
            }
            jump.mark = vector_from_json(jj["mark"], dot(path, "mark"));
            if (jump.tau.size() != n) fail(dot(path, "tau"), "expected " + std::to_string(n) + " values");
            if (jump.mark.size() != n) fail(dot(path, "mark"), "expected " + std::to_string(n) + " values");
            s.jumps.push_back(std::move(jump));
        }
    }

    if (root.contains("payoffs")) {
        const Json& p = root["payoffs"];
        if (!p.is_object()) fail("payoffs", "expected an object of named payoffs");
        for (const auto& [name, v] : p.items()) {
            Vector x = vector_from_json(v, dot("payoffs", name));
            if (x.size() != n) fail(dot("payoffs", name), "expected " + std::to_string(n) + " values");
            s.payoffs.emplace_back(name, std::move(x));
        }
    }
    return s;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_scenario(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

Json scenario_to_json(const Scenario& s)
{
    Json out;
    out["name"] = s.name;
    if (!s.description.empty()) out["description"] = s.description;
    if (!s.reference.empty()) out["reference"] = s.reference;
    const ModelSpec& spec = s.spec;
    out["outcomes"] = spec.outcomes;
    out["times"] = vector_to_json(spec.grid.times);
    Json f = Json::array();
    for (const auto& p : spec.filtration) {
        Json cells = Json::array();
        for (const auto& c : p.cells) cells.push_back(labels_of(c, spec.outcomes));
        f.push_back(cells);
    }
    out["filtration"] = f;
    Json prices = Json::array();
    for (const auto& asset : spec.prices.values) {
        Json slices = Json::array();
        for (const auto& v : asset) slices.push_back(vector_to_json(v));
        prices.push_back(slices);
    }
    out["prices"] = prices;
    Json claims = Json::array();
    for (const auto& c : spec.claims) claims.push_back(vector_to_json(c));
    out["claims"] = claims;
    if (!spec.allowed.empty()) {
        Cell support;
        for (std::size_t o = 0; o < spec.allowed.size(); ++o)
            if (spec.allowed[o]) support.push_back(o);
        out["prior_support"] = labels_of(support, spec.outcomes);
    }
    if (!s.jumps.empty()) {
        Json jumps = Json::array();
        for (const auto& j : s.jumps) {
            Json tau = Json::array();
            for (const auto& t : j.tau) tau.push_back(t ? Json(*t) : Json("inf"));
            jumps.push_back(Json{{"tau", tau}, {"mark", vector_to_json(j.mark)}});
        }
        out["jumps"] = jumps;
    }
    if (!s.payoffs.empty()) {
        Json p = Json::object();
        for (const auto& [name, v] : s.payoffs) p[name] = vector_to_json(v);
        out["payoffs"] = p;
    }
    return out;
}

Json measure_to_json(const Measure& q, const FilteredModel& model)
{
    return Json{{"weights", vector_to_json(q.weights())}, {"support", labels_of(q.support(), model.atom_labels())}};
}

Measure measure_from_json(const Json& j, const FilteredModel& model)
{
    if (!j.is_object() || !j.contains("weights")) fail("measure", "expected {weights, support}");
    Vector w = vector_from_json(j["weights"], "measure.weights");
    if (w.size() != model.atom_count())
        fail("measure.weights", "expected " + std::to_string(model.atom_count()) + " values");
    Measure q = [&] {
        try {
            return Measure(std::move(w));
        } catch (const InvalidMeasure& e) {
            fail("measure.weights", e.what());
        }
    }();
    if (j.contains("support") && cell_from_labels(j["support"], index_of(model.atom_labels()), "measure.support") != q.support())
        fail("measure.support", "does not match the charged atoms");
    return q;
}

Json vertex_set_to_json(const VertexSet& v, const FilteredModel& model)
{
    Json out = Json::array();
    for (const auto& x : v.vertices) out.push_back(measure_to_json(x.measure, model));
    return out;
}

Json strategy_to_json(const SemiStaticStrategy& s)
{
    Json dyn = Json::array();
    const auto& raw = s.dynamic.raw();
    for (std::size_t k = 0; k < raw.size(); ++k)
        for (std::size_t c = 0; c < raw[k].size(); ++c)
            for (std::size_t j = 0; j < raw[k][c].size(); ++j)
                if (sgn(raw[k][c][j]) != 0)
                    dyn.push_back(Json{{"k", k + 1}, {"cell", c}, {"asset", j}, {"value", rational_to_json(raw[k][c][j])}});
    return Json{{"cash", rational_to_json(s.cash)}, {"static", vector_to_json(s.statics)}, {"dynamic", dyn}};
}

SemiStaticStrategy strategy_from_json(const Json& j, const FilteredModel& model)
{
    if (!j.is_object() || !j.contains("cash")) fail("strategy", "expected {cash, static, dynamic}");
    SemiStaticStrategy s;
    s.cash = rational_from_json(j["cash"], "strategy.cash");
    s.statics = j.contains("static") ? vector_from_json(j["static"], "strategy.static") : zeros(model.claim_count());
    if (s.statics.size() != model.claim_count())
        fail("strategy.static", "expected " + std::to_string(model.claim_count()) + " values");
    s.dynamic = DynamicPosition::zero(model);
    if (j.contains("dynamic")) {
        std::size_t i = 0;
        for (const auto& e : array_at(j["dynamic"], "strategy.dynamic")) {
            const std::string path = at("strategy.dynamic", i++);
            if (!e.is_object()) fail(path, "expected {k, cell, asset, value}");
            for (const char* key : {"k", "cell", "asset", "value"})
                if (!e.contains(key)) fail(dot(path, key), "missing field");
            const std::size_t k = index_from(e["k"], dot(path, "k"));
            const std::size_t cell = index_from(e["cell"], dot(path, "cell"));
            const std::size_t asset = index_from(e["asset"], dot(path, "asset"));
            if (k < 1 || k > model.steps()) fail(dot(path, "k"), "out of range");
            if (cell >= model.cells(k - 1).size()) fail(dot(path, "cell"), "out of range");
            if (asset >= model.assets()) fail(dot(path, "asset"), "out of range");
            s.dynamic.at(k, cell, asset) = rational_from_json(e["value"], dot(path, "value"));
        }
    }
    return s;
}

Json tree_to_json(const AtomicTree& t, const FilteredModel& model)
{
    Json nodes = Json::array();
    for (const auto& n : t.nodes())
        nodes.push_back(Json{{"cell", labels_of(n.cell, model.atom_labels())},
                             {"birth", n.birth},
                             {"parent", n.parent ? Json(*n.parent) : Json(nullptr)}});
    Json leaves = Json::array();
    for (auto l : t.leaves()) leaves.push_back(l);
    return Json{{"nodes", nodes}, {"leaves", leaves}, {"dim", t.dim()}};
}

AtomicTree tree_from_json(const Json& j, const FilteredModel& model)
{
    if (!j.is_object() || !j.contains("nodes")) fail("tree", "expected {nodes}");
    const auto index = index_of(model.atom_labels());
    AtomicTree t;
    std::size_t i = 0;
    for (const auto& n : array_at(j["nodes"], "tree.nodes")) {
        const std::string path = at("tree.nodes", i);
        if (!n.is_object() || !n.contains("cell") || !n.contains("birth")) fail(path, "expected {cell, birth, parent}");
        TreeNode node;
        node.cell = cell_from_labels(n["cell"], index, dot(path, "cell"));
        node.birth = index_from(n["birth"], dot(path, "birth"));
        if (n.contains("parent") && !n["parent"].is_null()) {
            node.parent = index_from(n["parent"], dot(path, "parent"));
            if (*node.parent >= i) fail(dot(path, "parent"), "must refer to an earlier node");
        }
        t.add(std::move(node));
        ++i;
    }
    return t;
}

std::string render_tree(const AtomicTree& t, const FilteredModel& model)
{
    std::ostringstream out;
    const auto draw = [&](auto&& self, std::size_t node, const std::string& indent) -> void {
        const auto& n = t.nodes()[node];
        out << indent << "{" << join_labels(model.atom_labels(), n.cell, ", ") << "} t=" << n.birth << "\n";
        for (auto c : t.children(node)) self(self, c, indent + "  ");
    };
    for (std::size_t i = 0; i < t.nodes().size(); ++i)
        if (!t.nodes()[i].parent) draw(draw, i, "");
    return out.str();
}

Vector resolve_payoff(const Scenario& s, const std::string& key)
{
    for (const auto& [name, v] : s.payoffs)
        if (name == key) return v;
    if (key.find(',') == std::string::npos && s.spec.outcomes.size() != 1)
        throw ParseError("--payoff: no payoff named '" + key + "' in the scenario");
    Vector v = split_list(key, "--payoff");
    if (v.size() != s.spec.outcomes.size())
        throw ParseError("--payoff: expected " + std::to_string(s.spec.outcomes.size()) + " values per outcome");
    return v;
}

Measure resolve_measure(const std::string& key, const VertexSet& vertices, const FilteredModel& model)
{
    if (all_digits(key)) {
        const std::size_t i = std::stoul(key);
        if (i >= vertices.size())
            throw ParseError("--measure: vertex index " + key + " out of range (" + std::to_string(vertices.size()) +
                             " vertices)");
        return vertices.vertices[i].measure;
    }
    Vector w = split_list(key, "--measure");
    if (w.size() != model.atom_count())
        throw ParseError("--measure: expected " + std::to_string(model.atom_count()) + " weights per atom");
    Measure q(std::move(w));
    check_measure(q, model);
    return q;
}

}  // namespace semistatic
