#include "mbsv/network.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

namespace mbsv {

namespace {

// Kahn's algorithm with a min-heap on declaration index, so the cached order
// is deterministic and follows declaration order among ready nodes.
std::vector<int> topological_sort(int n,
                                  const std::vector<std::vector<int>>& parents,
                                  const std::vector<std::vector<int>>& children) {
  std::vector<int> indegree(n);
  for (int v = 0; v < n; ++v) indegree[v] = static_cast<int>(parents[v].size());

  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (int v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push(v);

  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    const int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int c : children[v])
      if (--indegree[c] == 0) ready.push(c);
  }
  if (static_cast<int>(order.size()) != n)
    throw CycleError("edge list contains a directed cycle");
  return order;
}

}  // namespace

int Network::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw UnknownIdError(id);
  return it->second;
}

int Network::row_index(int index, const std::vector<int>& total_state) const {
  const auto& ps = parents_[index];
  const auto& st = strides_[index];
  int row = 0;
  for (std::size_t i = 0; i < ps.size(); ++i) row += total_state[ps[i]] * st[i];
  return row;
}

std::uint64_t Network::joint_state_count() const {
  std::uint64_t count = 1;
  for (const auto& v : vars_) {
    count *= static_cast<std::uint64_t>(v.states.size());
    if (count > (1ull << 62)) return 1ull << 62;
  }
  return count;
}

Network build_network(const ModelSpec& spec) {
  Network net;
  net.name_ = spec.name;
  net.vars_ = spec.variables;
  net.edges_ = spec.edges;
  const int n = net.size();

  for (int v = 0; v < n; ++v) {
    const auto& var = net.vars_[v];
    if (var.id.empty()) throw ValidationError("variable with empty id");
    if (!net.index_.emplace(var.id, v).second)
      throw ValidationError("duplicate variable id '" + var.id + "'");
    if (var.states.size() < 2)
      throw ValidationError("variable '" + var.id +
                            "' needs at least 2 states");
    std::set<std::string> seen(var.states.begin(), var.states.end());
    if (seen.size() != var.states.size())
      throw ValidationError("duplicate state name in variable '" + var.id +
                            "'");
  }

  net.parents_.resize(n);
  net.children_.resize(n);
  std::vector<std::set<std::string>> in_edges(n);
  std::set<Edge> seen_edges;
  for (const auto& [parent, child] : net.edges_) {
    const int p = net.index_of(parent);
    const int c = net.index_of(child);
    if (!seen_edges.insert({parent, child}).second)
      throw ValidationError("duplicate edge " + parent + " -> " + child);
    in_edges[c].insert(parent);
    net.children_[p].push_back(c);
  }
  for (auto& ch : net.children_) std::sort(ch.begin(), ch.end());

  // Exactly one CPT per variable, with the declared parent list matching the
  // variable's in-edges as a set.
  net.cpts_.resize(n);
  std::vector<bool> has_cpt(n, false);
  for (const auto& cpt : spec.cpts) {
    const int c = net.index_of(cpt.child);
    if (has_cpt[c])
      throw ValidationError("duplicate CPT for '" + cpt.child + "'");
    has_cpt[c] = true;
    std::set<std::string> declared;
    for (const auto& pid : cpt.parents) {
      net.index_of(pid);
      if (!declared.insert(pid).second)
        throw ValidationError("CPT for '" + cpt.child +
                              "' repeats parent '" + pid + "'");
    }
    if (declared != in_edges[c])
      throw ValidationError("CPT parent list for '" + cpt.child +
                            "' does not match its in-edges");
    net.cpts_[c] = cpt;
  }
  for (int v = 0; v < n; ++v)
    if (!has_cpt[v])
      throw MissingCptError("variable '" + net.vars_[v].id + "' has no CPT");

  // Parent index lists (CPT order), strides, and table shape/row checks.
  net.strides_.resize(n);
  for (int v = 0; v < n; ++v) {
    const auto& cpt = net.cpts_[v];
    auto& ps = net.parents_[v];
    for (const auto& pid : cpt.parents) ps.push_back(net.index_of(pid));

    auto& st = net.strides_[v];
    st.assign(ps.size(), 1);
    std::size_t rows = 1;
    for (int i = static_cast<int>(ps.size()) - 1; i >= 0; --i) {
      st[i] = static_cast<int>(rows);
      rows *= static_cast<std::size_t>(net.cardinality(ps[i]));
    }
    if (cpt.table.size() != rows)
      throw ValidationError("CPT for '" + cpt.child + "' has " +
                            std::to_string(cpt.table.size()) +
                            " rows, expected " + std::to_string(rows));
    const std::size_t card = net.vars_[v].states.size();
    for (std::size_t r = 0; r < cpt.table.size(); ++r) {
      const auto& row = cpt.table[r];
      if (row.size() != card)
        throw ValidationError("CPT row for '" + cpt.child + "' has " +
                              std::to_string(row.size()) +
                              " entries, expected " + std::to_string(card));
      double sum = 0.0;
      for (double p : row) {
        if (p < 0.0 || p > 1.0)
          throw BadRowSumError(cpt.child, static_cast<int>(r),
                               "entry " + std::to_string(p) +
                                   " outside [0, 1]");
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-9)
        throw BadRowSumError(cpt.child, static_cast<int>(r),
                             "sums to " + std::to_string(sum));
    }
  }

  net.topo_ = topological_sort(n, net.parents_, net.children_);
  return net;
}

}  // namespace mbsv
