#pragma once

#include <map>
#include <set>
#include <string>

#include "causalbn/bayesnet.hpp"
#include "causalbn/factor.hpp"

namespace causalbn {

// Exact conditional P(query | evidence) by variable elimination. The result
// factor's scope holds the query variables by ascending net index and is
// normalized. Evidence with zero mass raises ZeroEvidenceProbabilityError.
Factor eliminate(const DiscreteBayesNet& bn, const std::set<std::string>& query,
                 const std::map<std::string, std::string>& evidence);

// Same computation with a caller-fixed elimination order over exactly the
// variables outside query and evidence. Exactness is order-invariant; this
// entry point exists so tests can prove it.
Factor eliminate_with_order(const DiscreteBayesNet& bn, const std::set<std::string>& query,
                            const std::map<std::string, std::string>& evidence,
                            const std::vector<std::string>& order);

Factor marginal(const DiscreteBayesNet& bn, const std::string& node);

// Greedy min-fill elimination order for the given query/evidence.
std::vector<std::string> min_fill_order(const DiscreteBayesNet& bn,
                                        const std::set<std::string>& query,
                                        const std::map<std::string, std::string>& evidence);

}  // namespace causalbn
