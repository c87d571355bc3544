#pragma once

#include <map>
#include <string>
#include <vector>

#include "causalbn/dataset.hpp"
#include "causalbn/graph.hpp"

namespace causalbn {

struct VariableCard {
  std::string name;
  std::vector<std::string> states;  // declared order fixes indices
};

// Conditional probability table of one node. Rows are indexed by the parent
// configuration in mixed radix (parents in net order, last parent fastest);
// within a row, entries follow the child's state order.
struct Cpt {
  std::string child;
  std::vector<std::string> parents;
  std::vector<int> parent_cards;
  int child_card = 0;
  std::vector<double> table;  // rows() * child_card

  std::size_t rows() const {
    std::size_t r = 1;
    for (int c : parent_cards) r *= static_cast<std::size_t>(c);
    return r;
  }
  std::size_t row_of(std::span<const int> parent_states) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < parent_cards.size(); ++i)
      idx = idx * parent_cards[i] + parent_states[i];
    return idx;
  }
  double p(std::size_t row, int child_state) const { return table[row * child_card + child_state]; }
};

class DiscreteBayesNet {
 public:
  DiscreteBayesNet() = default;
  // Validates: one card and one CPT per node, CPT parents match the DAG per
  // node (net order), table sizes, rows summing to 1 within 1e-9.
  DiscreteBayesNet(CausalDag dag, std::vector<VariableCard> cards, std::vector<Cpt> cpts);

  const CausalDag& dag() const { return dag_; }
  std::size_t size() const { return cards_.size(); }
  int var_index(const std::string& name) const { return dag_.index_of(name); }
  const VariableCard& card(int i) const { return cards_[i]; }
  const VariableCard& card(const std::string& name) const { return cards_[dag_.index_of(name)]; }
  const Cpt& cpt(int i) const { return cpts_[i]; }
  const Cpt& cpt(const std::string& name) const { return cpts_[dag_.index_of(name)]; }
  int state_index(int var, const std::string& label) const;

 private:
  CausalDag dag_;
  std::vector<VariableCard> cards_;
  std::vector<Cpt> cpts_;
};

// Maximum-likelihood CPTs with additive (Laplace) smoothing alpha. Every DAG
// node must have a data column (latents included, as in synthetic data);
// alpha = 0 demands every parent configuration be observed. Sampling weights,
// when present, enter as fractional counts.
DiscreteBayesNet fit_mle(const CausalDag& dag, const Dataset& data, double alpha = 1e-5);

// Probability of one full assignment (every node, latents included).
double joint_probability(const DiscreteBayesNet& bn,
                         const std::map<std::string, std::string>& assignment);

}  // namespace causalbn
