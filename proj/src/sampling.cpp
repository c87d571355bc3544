#include "causalbn/sampling.hpp"

#include <memory>

#include "causalbn/rng.hpp"

namespace causalbn {

Dataset forward_sample(const DiscreteBayesNet& bn, std::size_t n, std::uint64_t seed,
                       const std::set<std::string>& hide, ExecMode exec) {
  for (const std::string& h : hide) bn.var_index(h);

  const std::vector<std::string> topo = bn.dag().topological_order();
  std::vector<int> topo_ids;
  for (const std::string& name : topo) topo_ids.push_back(bn.var_index(name));
  std::vector<std::vector<int>> parent_ids(bn.size());
  for (std::size_t i = 0; i < bn.size(); ++i)
    for (const std::string& p : bn.cpt(static_cast<int>(i)).parents)
      parent_ids[i].push_back(bn.var_index(p));

  const int width = static_cast<int>(bn.size());
  std::vector<std::int32_t> table(n * width);

  auto sample_row = [&](std::size_t r) {
    Rng rng(derive_stream(seed, r));
    std::int32_t* row = table.data() + r * width;
    for (int v : topo_ids) {
      const Cpt& c = bn.cpt(v);
      std::vector<int> ps(parent_ids[v].size());
      for (std::size_t i = 0; i < ps.size(); ++i) ps[i] = row[parent_ids[v][i]];
      const std::size_t cpt_row = c.row_of(ps);
      row[v] = rng.discrete(
          std::span<const double>(c.table.data() + cpt_row * c.child_card, c.child_card));
    }
  };

  if (exec == ExecMode::Parallel) {
#pragma omp parallel for schedule(static)
    for (long long r = 0; r < static_cast<long long>(n); ++r)
      sample_row(static_cast<std::size_t>(r));
  } else {
    for (std::size_t r = 0; r < n; ++r) sample_row(r);
  }

  auto schema = std::make_shared<VariableSchema>();
  std::vector<int> visible;
  for (std::size_t i = 0; i < bn.size(); ++i) {
    const VariableCard& c = bn.card(static_cast<int>(i));
    if (hide.count(c.name)) continue;
    visible.push_back(static_cast<int>(i));
    schema->add(VariableSpec{c.name, c.name, c.states, {}, {}});
  }

  Dataset out(schema);
  std::vector<std::int32_t> row(visible.size());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < visible.size(); ++i) row[i] = table[r * width + visible[i]];
    out.append_row(row);
  }
  return out;
}

}  // namespace causalbn
