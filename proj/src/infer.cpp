#include "causalbn/infer.hpp"

#include <algorithm>

namespace causalbn {

namespace {

Factor cpt_factor(const DiscreteBayesNet& bn, int node) {
  const Cpt& c = bn.cpt(node);
  std::vector<int> scope{node};
  for (const std::string& p : c.parents) scope.push_back(bn.var_index(p));
  std::sort(scope.begin(), scope.end());
  std::vector<int> cards;
  for (int v : scope) cards.push_back(static_cast<int>(bn.card(v).states.size()));
  Factor f(scope, cards);

  const int nvars = static_cast<int>(scope.size());
  std::vector<int> state(nvars, 0);
  std::vector<int> parent_pos;  // positions of the parents within the scope
  for (const std::string& p : c.parents)
    parent_pos.push_back(f.position_of(bn.var_index(p)));
  const int child_pos = f.position_of(node);
  std::vector<int> ps(c.parents.size());
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    for (std::size_t i = 0; i < parent_pos.size(); ++i) ps[i] = state[parent_pos[i]];
    f.values()[idx] = c.p(c.row_of(ps), state[child_pos]);
    for (int i = nvars - 1; i >= 0; --i) {
      if (++state[i] < f.cards()[i]) break;
      state[i] = 0;
    }
  }
  return f;
}

struct Prepared {
  std::vector<Factor> factors;
  std::vector<int> query_ids;
  std::set<int> hidden;  // to eliminate
};

Prepared prepare(const DiscreteBayesNet& bn, const std::set<std::string>& query,
                 const std::map<std::string, std::string>& evidence) {
  Prepared prep;
  std::set<int> qids, eids;
  for (const std::string& q : query) {
    if (evidence.count(q)) throw Error("query and evidence overlap on " + q);
    qids.insert(bn.var_index(q));
  }
  std::map<int, int> estate;
  for (const auto& [name, label] : evidence) {
    const int v = bn.var_index(name);
    eids.insert(v);
    estate[v] = bn.state_index(v, label);
  }
  prep.query_ids.assign(qids.begin(), qids.end());

  for (std::size_t i = 0; i < bn.size(); ++i) {
    Factor f = cpt_factor(bn, static_cast<int>(i));
    for (const auto& [v, s] : estate)
      if (f.has_var(v)) f = f.reduce(v, s);
    prep.factors.push_back(std::move(f));
  }
  for (std::size_t i = 0; i < bn.size(); ++i) {
    const int v = static_cast<int>(i);
    if (!qids.count(v) && !eids.count(v)) prep.hidden.insert(v);
  }
  return prep;
}

Factor run_elimination(Prepared prep, const std::vector<int>& order) {
  std::vector<Factor> pool = std::move(prep.factors);
  for (int var : order) {
    std::vector<Factor> touching;
    std::vector<Factor> rest;
    for (Factor& f : pool) {
      if (f.has_var(var))
        touching.push_back(std::move(f));
      else
        rest.push_back(std::move(f));
    }
    Factor joined = std::move(touching.front());
    for (std::size_t i = 1; i < touching.size(); ++i)
      joined = Factor::product(joined, touching[i]);
    rest.push_back(joined.sum_out(var));
    pool = std::move(rest);
  }
  Factor result = std::move(pool.front());
  for (std::size_t i = 1; i < pool.size(); ++i) result = Factor::product(result, pool[i]);
  if (!result.normalize())
    throw ZeroEvidenceProbabilityError("evidence configuration has probability zero");
  return result;
}

}  // namespace

std::vector<std::string> min_fill_order(const DiscreteBayesNet& bn,
                                        const std::set<std::string>& query,
                                        const std::map<std::string, std::string>& evidence) {
  // Interaction graph over the hidden variables, built from reduced scopes.
  Prepared prep = prepare(bn, query, evidence);
  const int n = static_cast<int>(bn.size());
  std::vector<std::set<int>> adj(n);
  auto connect_scope = [&](const std::vector<int>& scope) {
    for (std::size_t a = 0; a < scope.size(); ++a)
      for (std::size_t b = a + 1; b < scope.size(); ++b) {
        adj[scope[a]].insert(scope[b]);
        adj[scope[b]].insert(scope[a]);
      }
  };
  for (const Factor& f : prep.factors) connect_scope(f.scope());

  std::set<int> remaining = prep.hidden;
  std::vector<std::string> order;
  while (!remaining.empty()) {
    int best = -1;
    long best_fill = -1;
    for (int v : remaining) {
      std::vector<int> nb;
      for (int u : adj[v])
        if (remaining.count(u) || std::binary_search(prep.query_ids.begin(), prep.query_ids.end(), u))
          nb.push_back(u);
      long fill = 0;
      for (std::size_t a = 0; a < nb.size(); ++a)
        for (std::size_t b = a + 1; b < nb.size(); ++b)
          if (!adj[nb[a]].count(nb[b])) ++fill;
      if (best < 0 || fill < best_fill) {
        best = v;
        best_fill = fill;
      }
    }
    // Connect the eliminated variable's neighbourhood.
    std::vector<int> nb(adj[best].begin(), adj[best].end());
    connect_scope(nb);
    for (int u : nb) adj[u].erase(best);
    remaining.erase(best);
    order.push_back(bn.card(best).name);
  }
  return order;
}

Factor eliminate(const DiscreteBayesNet& bn, const std::set<std::string>& query,
                 const std::map<std::string, std::string>& evidence) {
  return eliminate_with_order(bn, query, evidence, min_fill_order(bn, query, evidence));
}

Factor eliminate_with_order(const DiscreteBayesNet& bn, const std::set<std::string>& query,
                            const std::map<std::string, std::string>& evidence,
                            const std::vector<std::string>& order) {
  Prepared prep = prepare(bn, query, evidence);
  std::vector<int> order_ids;
  std::set<int> seen;
  for (const std::string& name : order) {
    const int v = bn.var_index(name);
    if (!prep.hidden.count(v)) throw Error("elimination order lists non-hidden variable " + name);
    if (!seen.insert(v).second) throw Error("elimination order repeats " + name);
    order_ids.push_back(v);
  }
  if (order_ids.size() != prep.hidden.size())
    throw Error("elimination order must cover every hidden variable");
  return run_elimination(std::move(prep), order_ids);
}

Factor marginal(const DiscreteBayesNet& bn, const std::string& node) {
  return eliminate(bn, {node}, {});
}

}  // namespace causalbn
