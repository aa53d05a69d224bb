#include "mbsv/inference.hpp"

#include <algorithm>
#include <string>

#include "mbsv/blankets.hpp"
#include "mbsv/rng.hpp"

namespace mbsv {

namespace {

// Evidence as a vector indexed by declaration index, -1 for unassigned.
// Validates every id and state index; drops any entry for `skip`.
std::vector<int> to_state_vector(const Network& net, const Assignment& evidence,
                                 int skip) {
  std::vector<int> state(net.size(), -1);
  for (const auto& [id, s] : evidence) {
    const int v = net.index_of(id);
    if (s < 0 || s >= net.cardinality(v))
      throw Error("state index " + std::to_string(s) + " out of range for '" +
                  id + "'");
    if (v == skip) continue;
    state[v] = s;
  }
  return state;
}

Distribution normalized(const std::string& x, std::vector<double> mass) {
  Distribution dist;
  dist.variable = x;
  double total = 0.0;
  for (double m : mass) total += m;
  if (total <= 0.0) {
    dist.degenerate = true;
    dist.probs.assign(mass.size(), 1.0 / static_cast<double>(mass.size()));
    return dist;
  }
  for (double& m : mass) m /= total;
  dist.probs = std::move(mass);
  return dist;
}

}  // namespace

Distribution posterior_given_blanket(const Network& net, const std::string& x,
                                     const Assignment& evidence) {
  const int xi = net.index_of(x);
  std::vector<int> state = to_state_vector(net, evidence, xi);

  std::vector<std::string> missing;
  for (const auto& id : markov_blanket(net, x))
    if (state[net.index_of(id)] < 0) missing.push_back(id);
  if (!missing.empty()) throw IncompleteEvidenceError(std::move(missing));

  std::vector<double> mass(net.cardinality(xi));
  for (int k = 0; k < net.cardinality(xi); ++k) {
    state[xi] = k;
    double m = net.cpt_entry(xi, k, state);
    for (int c : net.children(xi)) m *= net.cpt_entry(c, state[c], state);
    mass[k] = m;
  }
  return normalized(x, std::move(mass));
}

Distribution joint_enumerate(const Network& net, const std::string& x,
                             const Assignment& evidence) {
  if (net.joint_state_count() > (1ull << 24))
    throw StateSpaceError("joint state space exceeds 2^24");

  const int xi = net.index_of(x);
  const std::vector<int> fixed = to_state_vector(net, evidence, xi);

  std::vector<int> free_vars;
  for (int v = 0; v < net.size(); ++v)
    if (fixed[v] < 0) free_vars.push_back(v);

  std::vector<int> state = fixed;
  for (int v : free_vars) state[v] = 0;

  std::vector<double> mass(net.cardinality(xi), 0.0);
  for (;;) {
    double p = 1.0;
    for (int v = 0; v < net.size(); ++v) p *= net.cpt_entry(v, state[v], state);
    mass[state[xi]] += p;

    // Advance the mixed-radix counter over the free variables.
    std::size_t i = 0;
    for (; i < free_vars.size(); ++i) {
      const int v = free_vars[i];
      if (++state[v] < net.cardinality(v)) break;
      state[v] = 0;
    }
    if (i == free_vars.size()) break;
  }
  return normalized(x, std::move(mass));
}

Assignment sample(const Network& net, std::uint64_t seed) {
  auto engine = rng::make_engine(seed, rng::kStreamSample);
  std::vector<int> state(net.size(), -1);
  for (int v : net.topological_order()) {
    const auto& row = net.cpt_of(net.variable(v).id).table[net.row_index(v, state)];
    state[v] = rng::pick_weighted(engine, row);
  }
  Assignment out;
  for (int v = 0; v < net.size(); ++v) out[net.variable(v).id] = state[v];
  return out;
}

}  // namespace mbsv
