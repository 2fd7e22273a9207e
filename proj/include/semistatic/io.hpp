#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "semistatic/enlargement.hpp"
#include "semistatic/hedging.hpp"
#include "semistatic/model.hpp"
#include "semistatic/polytope.hpp"
#include "semistatic/tree.hpp"

namespace semistatic {

using Json = nlohmann::ordered_json;

struct Scenario {
    std::string name;
    std::string description;
    std::string reference;
    ModelSpec spec;  // not validated
    std::vector<SingleJump> jumps;
    std::vector<std::pair<std::string, Vector>> payoffs;  // per outcome
};

// Throws ParseError with a field path (or line/column for JSON syntax).
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);
Json scenario_to_json(const Scenario& s);

// Rationals travel as canonical strings; integers are accepted on input, floats never.
Json rational_to_json(const Rational& x);
Rational rational_from_json(const Json& j, const std::string& path);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j, const std::string& path);

Json measure_to_json(const Measure& q, const FilteredModel& model);
Measure measure_from_json(const Json& j, const FilteredModel& model);
Json vertex_set_to_json(const VertexSet& v, const FilteredModel& model);

Json strategy_to_json(const SemiStaticStrategy& s);
SemiStaticStrategy strategy_from_json(const Json& j, const FilteredModel& model);

Json tree_to_json(const AtomicTree& t, const FilteredModel& model);
AtomicTree tree_from_json(const Json& j, const FilteredModel& model);
// One node per line, children indented under their parent.
std::string render_tree(const AtomicTree& t, const FilteredModel& model);

// Payoff by scenario name, or an inline comma-separated list per outcome.
Vector resolve_payoff(const Scenario& s, const std::string& key);
// Vertex index into `vertices`, or an inline comma-separated list per atom.
Measure resolve_measure(const std::string& key, const VertexSet& vertices, const FilteredModel& model);

}  // namespace semistatic
