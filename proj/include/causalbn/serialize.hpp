#pragma once

#include <string>

#include <json.hpp>

#include "causalbn/bayesnet.hpp"
#include "causalbn/discovery.hpp"
#include "causalbn/effects.hpp"
#include "causalbn/refute.hpp"
#include "causalbn/schema.hpp"

namespace causalbn {

using json = nlohmann::json;

// Network document: schema block (variables with observed flag and states),
// edge list, and CPT rows keyed by parent configuration. Probability values
// round-trip bit-exactly (shortest round-trip decimal, up to 17 significant
// digits).
json net_to_json(const DiscreteBayesNet& bn);
DiscreteBayesNet net_from_json(const json& doc);
void save_net(const DiscreteBayesNet& bn, const std::string& path);
DiscreteBayesNet load_net(const std::string& path);

json schema_to_json(const VariableSchema& schema);
VariableSchema schema_from_json(const json& doc);
VariableSchema load_schema(const std::string& path);

json effect_report_to_json(const EffectReport& r);
json refutation_report_to_json(const RefutationReport& r);
json estimand_to_json(const AdjustmentEstimand& est, const CausalDag& g);

// Flat (state, control_p, treated_p, delta_pp) table for plotting.
std::string effect_report_csv(const EffectReport& r);

// Line-delimited pruning decisions: pair, step, contributor, gain, threshold,
// action.
std::string skeleton_log_jsonl(const SkeletonState& skeleton);
std::string orientation_log_jsonl(const std::vector<OrientationRecord>& log);

// FNV-1a over the canonical dump; stamped into every output document.
std::string fnv1a_hex(const std::string& bytes);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace causalbn
