#ifndef MBSV_BLANKETS_HPP_
#define MBSV_BLANKETS_HPP_

#include <string>
#include <unordered_map>
#include <vector>

#include "mbsv/network.hpp"

namespace mbsv {

/// Parents, children, spouses, Markov blanket, and extended Markov blanket of
/// one variable, each as a canonically sorted id set.
struct BlanketEntry {
  IdSet parents;
  IdSet children;
  IdSet spouses;
  IdSet blanket;   // parents U children U spouses, never contains the variable
  IdSet extended;  // blanket U {variable}
};

// Precomputed blanket table of a network, the isolation layer's only input.
// Built once, then shared read-only; verdicts are set lookups on it.
class BlanketSets {
 public:
  BlanketSets() = default;
  BlanketSets(std::vector<std::string> ids,
              std::unordered_map<std::string, BlanketEntry> entries)
      : ids_(std::move(ids)), entries_(std::move(entries)) {}

  bool empty() const { return ids_.empty(); }
  bool contains(const std::string& id) const { return entries_.count(id) != 0; }

  /// Entry for one variable; throws UnknownIdError.
  const BlanketEntry& at(const std::string& id) const;

  /// Variable ids in network declaration order.
  const std::vector<std::string>& ids() const { return ids_; }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, BlanketEntry> entries_;
};

/// MB(x): parents, children, and children's other parents of x.
IdSet markov_blanket(const Network& net, const std::string& x);

/// EMB(x) = {x} U MB(x).
IdSet extended_markov_blanket(const Network& net, const std::string& x);

/// All five set families for every variable, computed once.
BlanketSets emb_table(const Network& net);

// Sub-network over EMB(x): x and its children keep their CPTs, every other
// blanket member becomes a uniform evidence root.  Diagnostic output only;
// the validation path never propagates through it.
Network reduced_model(const Network& net, const std::string& x);

}  // namespace mbsv

#endif  // MBSV_BLANKETS_HPP_
