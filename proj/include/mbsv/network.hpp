#ifndef MBSV_NETWORK_HPP_
#define MBSV_NETWORK_HPP_

#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mbsv/errors.hpp"

namespace mbsv {

/// Canonically sorted set of variable ids.
using IdSet = std::set<std::string>;

/// Directed link, parent -> child.
using Edge = std::pair<std::string, std::string>;

struct Variable {
  std::string id;
  std::vector<std::string> states;  // ordered state names, at least 2
};

// Conditional probability table of one variable given its parents.  Rows are
// indexed by the parent assignment in mixed-radix order, first declared parent
// most significant, state indices in declared order; each row holds one
// probability per child state and sums to 1 within 1e-9.
struct Cpt {
  std::string child;
  std::vector<std::string> parents;
  std::vector<std::vector<double>> table;
};

/// Parsed model description, the input to build_network.
struct ModelSpec {
  std::string name;
  std::vector<Variable> variables;
  std::vector<Edge> edges;
  std::vector<Cpt> cpts;
};

// Immutable discrete Bayesian network: a DAG over named variables with one
// CPT per variable.  All accessors are read-only and safe to call from any
// number of threads once construction has finished.
class Network {
 public:
  const std::string& name() const { return name_; }
  int size() const { return static_cast<int>(vars_.size()); }
  bool contains(const std::string& id) const { return index_.count(id) != 0; }

  /// Declaration index of a variable; throws UnknownIdError.
  int index_of(const std::string& id) const;

  const Variable& variable(int index) const { return vars_[index]; }
  const Variable& variable(const std::string& id) const {
    return vars_[index_of(id)];
  }
  int cardinality(int index) const {
    return static_cast<int>(vars_[index].states.size());
  }

  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Cpt& cpt_of(const std::string& id) const { return cpts_[index_of(id)]; }
  const std::vector<Cpt>& cpts() const { return cpts_; }

  /// Parent indices in CPT order / child indices in declaration order.
  const std::vector<int>& parents(int index) const { return parents_[index]; }
  const std::vector<int>& children(int index) const { return children_[index]; }

  const std::vector<int>& topological_order() const { return topo_; }

  /// CPT row selected by the parents' states in `total_state` (indexed by
  /// declaration index; only parent slots are read).
  int row_index(int index, const std::vector<int>& total_state) const;

  /// P(variable == child_state | parents as in total_state).
  double cpt_entry(int index, int child_state,
                   const std::vector<int>& total_state) const {
    return cpts_[index].table[row_index(index, total_state)][child_state];
  }

  /// Number of joint states, saturating at 2^62.
  std::uint64_t joint_state_count() const;

  friend Network build_network(const ModelSpec& spec);

 private:
  Network() = default;

  std::string name_;
  std::vector<Variable> vars_;
  std::vector<Edge> edges_;
  std::vector<Cpt> cpts_;  // aligned with vars_
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<int>> parents_;   // CPT order
  std::vector<std::vector<int>> children_;  // ascending declaration index
  std::vector<std::vector<int>> strides_;   // row strides, aligned with parents_
  std::vector<int> topo_;
};

/// Validates the spec and assembles the immutable network.
/// Throws UnknownIdError, CycleError, MissingCptError, BadRowSumError,
/// ValidationError.
Network build_network(const ModelSpec& spec);

}  // namespace mbsv

#endif  // MBSV_NETWORK_HPP_
