#include "causalbn/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "causalbn/rng.hpp"

namespace causalbn {

Dataset::Dataset(std::shared_ptr<const VariableSchema> schema) : schema_(std::move(schema)) {
  cols_.resize(schema_->size());
}

std::span<const std::int32_t> Dataset::column(const std::string& name) const {
  return cols_[schema_->resolve(name)];
}

void Dataset::append_row(std::span<const std::int32_t> states, double weight) {
  append_row(states);
  weights_.resize(rows() - 1, 1.0);
  weights_.push_back(weight);
}

void Dataset::append_row(std::span<const std::int32_t> states) {
  if (states.size() != cols_.size()) throw SchemaMismatchError("row width does not match schema");
  for (std::size_t i = 0; i < cols_.size(); ++i) {
    const auto card = static_cast<std::int32_t>(schema_->at(i).states.size());
    if (states[i] < 0 || states[i] >= card)
      throw SchemaMismatchError("state index out of range for " + schema_->at(i).name);
    cols_[i].push_back(states[i]);
  }
  if (!weights_.empty()) weights_.push_back(1.0);
}

void Dataset::set_weights(std::vector<double> weights) {
  if (weights.size() != rows()) throw SchemaMismatchError("weight count does not match row count");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw SchemaMismatchError("negative sampling weight");
    total += w;
  }
  if (total <= 0.0) throw SchemaMismatchError("weights must have positive sum");
  weights_ = std::move(weights);
}

Dataset Dataset::with_column(int var, std::vector<std::int32_t> values) const {
  if (values.size() != rows()) throw SchemaMismatchError("column length mismatch");
  Dataset out = *this;
  out.cols_[var] = std::move(values);
  return out;
}

Dataset Dataset::subset(std::span<const std::size_t> row_indices) const {
  Dataset out(schema_);
  for (std::size_t c = 0; c < cols_.size(); ++c) {
    out.cols_[c].reserve(row_indices.size());
    for (std::size_t r : row_indices) out.cols_[c].push_back(cols_[c][r]);
  }
  if (!weights_.empty()) {
    out.weights_.reserve(row_indices.size());
    for (std::size_t r : row_indices) out.weights_.push_back(weights_[r]);
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    // trim surrounding spaces
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

Dataset load_csv(const std::string& path, std::shared_ptr<const VariableSchema> schema,
                 const std::string& weight_column) {
  std::ifstream in(path);
  if (!in) throw EmptyFileError("cannot open data file: " + path);
  std::string line;
  // header row, skipping any leading '#' comment lines
  for (;;) {
    if (!std::getline(in, line)) throw EmptyFileError("empty data file: " + path);
    if (!line.empty() && line[0] != '#') break;
  }

  const std::vector<std::string> header = split_csv_line(line);
  std::vector<int> var_of_col(header.size(), -1);
  int weight_col = -1;
  std::vector<bool> seen(schema->size(), false);
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (!weight_column.empty() && header[c] == weight_column) {
      weight_col = static_cast<int>(c);
      continue;
    }
    if (!schema->has_name(header[c]))
      throw SchemaMismatchError("unknown column '" + header[c] + "' in " + path);
    var_of_col[c] = schema->index_of(header[c]);
    seen[var_of_col[c]] = true;
  }
  for (std::size_t v = 0; v < schema->size(); ++v)
    if (!seen[v]) throw SchemaMismatchError("missing column '" + schema->at(v).name + "' in " + path);

  Dataset out(schema);
  std::vector<std::int32_t> row(schema->size());
  std::vector<double> weights;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#' || line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw SchemaMismatchError("row " + std::to_string(lineno) + " has " +
                                std::to_string(fields.size()) + " fields, expected " +
                                std::to_string(header.size()));
    double w = 1.0;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (static_cast<int>(c) == weight_col) {
        try {
          w = std::stod(fields[c]);
        } catch (const std::exception&) {
          throw SchemaMismatchError("bad weight at row " + std::to_string(lineno));
        }
        continue;
      }
      const int var = var_of_col[c];
      const int s = schema->state_index(var, fields[c]);
      if (s < 0)
        throw SchemaMismatchError("unknown state '" + fields[c] + "' for variable '" +
                                  schema->at(var).name + "' at row " + std::to_string(lineno));
      row[var] = s;
    }
    out.append_row(row);
    if (weight_col >= 0) weights.push_back(w);
  }
  if (out.rows() == 0) throw EmptyFileError("no data rows in " + path);
  if (weight_col >= 0) out.set_weights(std::move(weights));
  return out;
}

void save_csv(const Dataset& data, const std::string& path, const std::string& weight_column) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write data file: " + path);
  const VariableSchema& schema = data.schema();
  for (std::size_t v = 0; v < schema.size(); ++v) {
    if (v) out << ',';
    out << schema.at(v).name;
  }
  const bool write_weights = !weight_column.empty() && data.has_weights();
  if (write_weights) out << ',' << weight_column;
  out << '\n';
  for (std::size_t r = 0; r < data.rows(); ++r) {
    for (std::size_t v = 0; v < schema.size(); ++v) {
      if (v) out << ',';
      out << schema.at(v).states[data.cell(r, static_cast<int>(v))];
    }
    if (write_weights) {
      std::ostringstream w;
      w.precision(17);
      w << data.weight(r);
      out << ',' << w.str();
    }
    out << '\n';
  }
}

Dataset recode(const Dataset& data, const RecodeMap& map) {
  const VariableSchema& schema = data.schema();
  const int var = schema.index_of(map.variable);
  const VariableSpec& spec = schema.at(var);

  // The mapping must be total over the declared source states.
  std::vector<int> target_of(spec.states.size(), -2);
  std::vector<std::string> target_states;
  for (const auto& [src, dst] : map.mapping) {
    const int s = schema.state_index(var, src);
    if (s < 0) throw UnmappedStateError("recode source state '" + src + "' not in schema");
    int t = -1;  // drop
    if (dst) {
      auto it = std::find(target_states.begin(), target_states.end(), *dst);
      if (it == target_states.end()) {
        target_states.push_back(*dst);
        t = static_cast<int>(target_states.size()) - 1;
      } else {
        t = static_cast<int>(it - target_states.begin());
      }
    }
    target_of[s] = t;
  }
  for (std::size_t s = 0; s < spec.states.size(); ++s)
    if (target_of[s] == -2)
      throw UnmappedStateError("recode misses source state '" + spec.states[s] + "'");
  if (target_states.empty()) throw UnmappedStateError("recode drops every state");

  auto new_schema = std::make_shared<VariableSchema>();
  for (std::size_t v = 0; v < schema.size(); ++v) {
    VariableSpec sp = schema.at(v);
    if (static_cast<int>(v) == var) {
      sp.states = target_states;
      sp.marginals.clear();
    }
    new_schema->add(std::move(sp));
  }

  Dataset out(new_schema);
  std::vector<std::int32_t> row(schema.size());
  std::vector<double> weights;
  for (std::size_t r = 0; r < data.rows(); ++r) {
    const int t = target_of[data.cell(r, var)];
    if (t < 0) continue;
    for (std::size_t v = 0; v < schema.size(); ++v)
      row[v] = static_cast<int>(v) == var ? t : data.cell(r, static_cast<int>(v));
    out.append_row(row);
    if (data.has_weights()) weights.push_back(data.weight(r));
  }
  if (data.has_weights() && out.rows() > 0) out.set_weights(std::move(weights));
  return out;
}

Dataset weighted_resample(const Dataset& data, std::size_t n_out, std::uint64_t seed) {
  if (!data.has_weights()) throw MissingWeightsError("dataset carries no sampling weights");
  std::vector<double> cumulative(data.rows());
  double total = 0.0;
  for (std::size_t r = 0; r < data.rows(); ++r) {
    total += data.weight(r);
    cumulative[r] = total;
  }
  if (total <= 0.0) throw MissingWeightsError("weights must have positive sum");

  Rng rng(seed);
  std::vector<std::size_t> picks(n_out);
  for (std::size_t i = 0; i < n_out; ++i) {
    const double u = rng.uniform() * total;
    picks[i] = static_cast<std::size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
    if (picks[i] >= data.rows()) picks[i] = data.rows() - 1;
  }
  Dataset out = data.subset(picks);
  out.set_weights(std::vector<double>(n_out, 1.0));
  return out;
}

std::vector<int> discretize_density(std::span<const double> values,
                                    std::span<const double> edges) {
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i] > edges[i - 1]))
      throw NonMonotonicEdgesError("band edges must be strictly increasing");
  std::vector<int> out;
  out.reserve(values.size());
  for (double v : values) {
    const auto it = std::upper_bound(edges.begin(), edges.end(), v);
    out.push_back(static_cast<int>(it - edges.begin()));
  }
  return out;
}

}  // namespace causalbn
