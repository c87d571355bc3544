#pragma once

#include "causalbn/bayesnet.hpp"
#include "causalbn/discovery.hpp"
#include "causalbn/graph.hpp"
#include "causalbn/schema.hpp"

namespace causalbn {

// Bundled EV-adoption study domain: a 15-variable household schema, the
// 11-node causal graph over its connected core, and a synthetic generator
// network calibrated to the schema's reference marginals. All synthetic;
// useful as fixtures, demos and oracle inputs.

// Full schema (Y, V1..V14) with states, reference marginals and band edges
// for the two charging-density variables.
VariableSchema ev_study_schema();

// Post-refinement mixed graph: 15 directed edges plus the two bi-directed
// edges V1 <-> V2 and V8 <-> Y (the disconnected cluster dropped).
MixedGraph ev_study_mag();

// Final 11-node DAG with explicit latents U1, U2 (20 directed edges).
CausalDag ev_study_dag();

// Blacklist used by the bundled pipeline config (occupational direction ban).
Blacklist ev_study_blacklist();

// Synthetic generator over the 11-node DAG, latent CPTs included. Observed
// marginals are calibrated to the schema's reference marginals by iterative
// proportional fitting of per-node base weights (exact VE marginals inside
// the loop). Deterministic; cached after the first call.
const DiscreteBayesNet& ev_study_network();

}  // namespace causalbn
