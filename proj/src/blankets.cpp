#include "mbsv/blankets.hpp"

#include <algorithm>

namespace mbsv {

const BlanketEntry& BlanketSets::at(const std::string& id) const {
  auto it = entries_.find(id);
  if (it == entries_.end()) throw UnknownIdError(id);
  return it->second;
}

namespace {

BlanketEntry entry_for(const Network& net, int v) {
  BlanketEntry e;
  const std::string& id = net.variable(v).id;
  for (int p : net.parents(v)) e.parents.insert(net.variable(p).id);
  for (int c : net.children(v)) {
    e.children.insert(net.variable(c).id);
    for (int sp : net.parents(c))
      if (sp != v) e.spouses.insert(net.variable(sp).id);
  }
  e.blanket = e.parents;
  e.blanket.insert(e.children.begin(), e.children.end());
  e.blanket.insert(e.spouses.begin(), e.spouses.end());
  e.extended = e.blanket;
  e.extended.insert(id);
  return e;
}

}  // namespace

IdSet markov_blanket(const Network& net, const std::string& x) {
  return entry_for(net, net.index_of(x)).blanket;
}

IdSet extended_markov_blanket(const Network& net, const std::string& x) {
  return entry_for(net, net.index_of(x)).extended;
}

BlanketSets emb_table(const Network& net) {
  std::vector<std::string> ids;
  std::unordered_map<std::string, BlanketEntry> entries;
  ids.reserve(net.size());
  for (int v = 0; v < net.size(); ++v) {
    ids.push_back(net.variable(v).id);
    entries.emplace(ids.back(), entry_for(net, v));
  }
  return BlanketSets(std::move(ids), std::move(entries));
}

Network reduced_model(const Network& net, const std::string& x) {
  const int xi = net.index_of(x);
  const BlanketEntry entry = entry_for(net, xi);

  ModelSpec spec;
  spec.name = net.name().empty() ? ("reduced:" + x) : (net.name() + "/reduced:" + x);

  // Keep declaration order restricted to EMB(x).
  IdSet keep_cpt = entry.children;
  keep_cpt.insert(x);
  for (const auto& var : net.variables()) {
    if (var.id != x && entry.blanket.count(var.id) == 0) continue;
    spec.variables.push_back(var);
    if (keep_cpt.count(var.id)) {
      const Cpt& cpt = net.cpt_of(var.id);
      spec.cpts.push_back(cpt);
      for (const auto& pid : cpt.parents) spec.edges.emplace_back(pid, var.id);
    } else {
      // Evidence root: always instantiated downstream, so a uniform prior.
      const auto card = var.states.size();
      Cpt prior;
      prior.child = var.id;
      prior.table = {std::vector<double>(card, 1.0 / static_cast<double>(card))};
      spec.cpts.push_back(std::move(prior));
    }
  }
  return build_network(spec);
}

}  // namespace mbsv
