#include "causalbn/schema.hpp"

#include <set>

namespace causalbn {

void VariableSchema::add(VariableSpec spec) {
  if (spec.states.empty()) throw SchemaMismatchError("variable " + spec.name + " has no states");
  std::set<std::string> seen(spec.states.begin(), spec.states.end());
  if (seen.size() != spec.states.size())
    throw SchemaMismatchError("variable " + spec.name + " has duplicate state labels");
  if (by_name_.count(spec.name)) throw SchemaMismatchError("duplicate variable name: " + spec.name);
  if (by_symbol_.count(spec.symbol))
    throw SchemaMismatchError("duplicate variable symbol: " + spec.symbol);
  by_name_[spec.name] = static_cast<int>(vars_.size());
  by_symbol_[spec.symbol] = static_cast<int>(vars_.size());
  vars_.push_back(std::move(spec));
}

int VariableSchema::index_of(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw SchemaMismatchError("unknown variable: " + name);
  return it->second;
}

int VariableSchema::index_of_symbol(const std::string& symbol) const {
  auto it = by_symbol_.find(symbol);
  if (it == by_symbol_.end()) throw SchemaMismatchError("unknown variable symbol: " + symbol);
  return it->second;
}

int VariableSchema::resolve(const std::string& name_or_symbol) const {
  auto it = by_name_.find(name_or_symbol);
  if (it != by_name_.end()) return it->second;
  it = by_symbol_.find(name_or_symbol);
  if (it != by_symbol_.end()) return it->second;
  throw SchemaMismatchError("unknown variable: " + name_or_symbol);
}

bool VariableSchema::can_resolve(const std::string& name_or_symbol) const {
  return by_name_.count(name_or_symbol) || by_symbol_.count(name_or_symbol);
}

int VariableSchema::state_index(int var, const std::string& label) const {
  const auto& states = vars_[var].states;
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == label) return static_cast<int>(i);
  return -1;
}

BandPartition income_partition(const VariableSchema& schema) {
  const int v1 = schema.index_of_symbol("V1");
  if (schema.at(v1).states.size() != 8)
    throw CardinalityError("income partition expects 8 bands, got " +
                           std::to_string(schema.at(v1).states.size()));
  BandPartition p;
  p.groups.push_back({"low", {0, 1, 2, 3, 4, 5}});
  p.groups.push_back({"high", {6, 7}});
  return p;
}

}  // namespace causalbn
