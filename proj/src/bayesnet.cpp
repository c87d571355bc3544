#include "causalbn/bayesnet.hpp"

#include <cmath>

namespace causalbn {

DiscreteBayesNet::DiscreteBayesNet(CausalDag dag, std::vector<VariableCard> cards,
                                   std::vector<Cpt> cpts)
    : dag_(std::move(dag)), cards_(std::move(cards)), cpts_(std::move(cpts)) {
  if (cards_.size() != dag_.size() || cpts_.size() != dag_.size())
    throw Error("network needs one card and one CPT per node");
  for (std::size_t i = 0; i < dag_.size(); ++i) {
    if (cards_[i].name != dag_.node(static_cast<int>(i)).name)
      throw Error("card order must match node order");
    const Cpt& c = cpts_[i];
    if (c.child != cards_[i].name) throw Error("CPT order must match node order");
    if (c.parents != dag_.parents_of(c.child))
      throw Error("CPT parents must match DAG parents for " + c.child);
    if (c.child_card != static_cast<int>(cards_[i].states.size()))
      throw Error("CPT child cardinality mismatch for " + c.child);
    for (std::size_t p = 0; p < c.parents.size(); ++p)
      if (c.parent_cards[p] != static_cast<int>(cards_[dag_.index_of(c.parents[p])].states.size()))
        throw Error("CPT parent cardinality mismatch for " + c.child);
    if (c.table.size() != c.rows() * static_cast<std::size_t>(c.child_card))
      throw Error("CPT table size mismatch for " + c.child);
    for (std::size_t r = 0; r < c.rows(); ++r) {
      double row = 0.0;
      for (int v = 0; v < c.child_card; ++v) {
        const double pv = c.p(r, v);
        if (pv < 0.0 || pv > 1.0 || !std::isfinite(pv))
          throw Error("CPT entry outside [0,1] for " + c.child);
        row += pv;
      }
      if (std::abs(row - 1.0) > 1e-9)
        throw Error("CPT row does not sum to 1 for " + c.child);
    }
  }
}

int DiscreteBayesNet::state_index(int var, const std::string& label) const {
  const auto& states = cards_[var].states;
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == label) return static_cast<int>(i);
  throw Error("unknown state '" + label + "' for variable " + cards_[var].name);
}

DiscreteBayesNet fit_mle(const CausalDag& dag, const Dataset& data, double alpha) {
  if (alpha < 0.0) throw NegativeAlphaError("smoothing alpha must be non-negative");
  const VariableSchema& schema = data.schema();

  std::vector<int> col_of(dag.size(), -1);
  for (std::size_t i = 0; i < dag.size(); ++i) {
    const Node& n = dag.node(static_cast<int>(i));
    if (schema.can_resolve(n.name)) {
      col_of[i] = schema.resolve(n.name);
    } else if (n.observed) {
      throw MissingColumnError("no data column for observed node " + n.name);
    } else {
      throw LatentWithoutDataError("latent node " + n.name +
                                   " has no data column; drop it or supply synthetic columns");
    }
  }

  std::vector<VariableCard> cards;
  for (std::size_t i = 0; i < dag.size(); ++i)
    cards.push_back(VariableCard{dag.node(static_cast<int>(i)).name,
                                 schema.at(col_of[i]).states});

  std::vector<Cpt> cpts;
  for (std::size_t i = 0; i < dag.size(); ++i) {
    const std::string& name = dag.node(static_cast<int>(i)).name;
    Cpt c;
    c.child = name;
    c.parents = dag.parents_of(name);
    for (const std::string& p : c.parents)
      c.parent_cards.push_back(static_cast<int>(cards[dag.index_of(p)].states.size()));
    c.child_card = static_cast<int>(cards[i].states.size());

    std::vector<double> counts(c.rows() * c.child_card, 0.0);
    std::vector<std::span<const std::int32_t>> pcols;
    for (const std::string& p : c.parents) pcols.push_back(data.column(col_of[dag.index_of(p)]));
    const auto ccol = data.column(col_of[i]);
    for (std::size_t r = 0; r < data.rows(); ++r) {
      std::size_t row = 0;
      for (std::size_t p = 0; p < pcols.size(); ++p) row = row * c.parent_cards[p] + pcols[p][r];
      counts[row * c.child_card + ccol[r]] += data.weight(r);
    }

    c.table.resize(counts.size());
    for (std::size_t row = 0; row < c.rows(); ++row) {
      double denom = 0.0;
      for (int v = 0; v < c.child_card; ++v) denom += counts[row * c.child_card + v] + alpha;
      if (denom <= 0.0)
        throw ZeroFrequencyError("zero-frequency parent configuration for " + name +
                                 " with alpha = 0");
      for (int v = 0; v < c.child_card; ++v)
        c.table[row * c.child_card + v] = (counts[row * c.child_card + v] + alpha) / denom;
    }
    cpts.push_back(std::move(c));
  }
  return DiscreteBayesNet(dag, std::move(cards), std::move(cpts));
}

double joint_probability(const DiscreteBayesNet& bn,
                         const std::map<std::string, std::string>& assignment) {
  std::vector<int> state(bn.size());
  for (std::size_t i = 0; i < bn.size(); ++i) {
    const std::string& name = bn.card(static_cast<int>(i)).name;
    auto it = assignment.find(name);
    if (it == assignment.end())
      throw IncompleteAssignmentError("assignment misses node " + name);
    state[i] = bn.state_index(static_cast<int>(i), it->second);
  }
  double p = 1.0;
  for (std::size_t i = 0; i < bn.size(); ++i) {
    const Cpt& c = bn.cpt(static_cast<int>(i));
    std::vector<int> ps;
    for (const std::string& parent : c.parents) ps.push_back(state[bn.var_index(parent)]);
    p *= c.p(c.row_of(ps), state[i]);
  }
  return p;
}

}  // namespace causalbn
