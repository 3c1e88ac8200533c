#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tfz/problems.hpp"
#include "tfz/reductions.hpp"
#include "tfz/resolution.hpp"

namespace tfz {

using Json = nlohmann::json;

// Rule-based oracles are materialized; throws UsageError above the cap.
Json instance_to_json(const Instance& inst, Index cap = Index{1} << 22);
Instance instance_from_json(const Json& j);

Json solution_to_json(const Solution& s);
Solution solution_from_json(const Json& j);

// A lazy target: the source instance plus the rules applied to it.
struct Recipe {
    Json source;
    std::vector<std::string> rules;
    RuleOptions options;
};
Json recipe_to_json(const Recipe& r);
Recipe recipe_from_json(const Json& j);
bool is_recipe(const Json& j);
Reduction replay(const Recipe& r);

// FNV-1a over the compact dump, as 16 hex digits.
std::string digest(const Json& j);

Json tree_to_json(const DecisionTree& T);
DecisionTree tree_from_json(const Json& j);
Json proof_to_json(const TreeResolutionProof& P);
TreeResolutionProof proof_from_json(const Json& j);
Json cnf_to_json(const Cnf& F);
Cnf cnf_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace tfz
