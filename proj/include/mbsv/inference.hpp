#ifndef MBSV_INFERENCE_HPP_
#define MBSV_INFERENCE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mbsv/network.hpp"

namespace mbsv {

/// Variable id -> state index.  May be partial (evidence) or total (sample).
using Assignment = std::map<std::string, int>;

/// Posterior of one variable, probabilities in declared state order.
struct Distribution {
  std::string variable;
  std::vector<double> probs;
  // Set when the evidence had zero mass; probs then hold a uniform stand-in
  // so detection can treat the case as maximal surprise instead of crashing.
  bool degenerate = false;
};

// P(x | MB(x) = evidence) by the local product: x's own CPT term times the
// CPT term of each child of x at the evidence, normalized.  Exact because the
// blanket is fully instantiated.  Evidence entries outside MB(x) — including
// a reading for x itself — are validated but ignored.
// Throws IncompleteEvidenceError when a blanket member is unassigned.
Distribution posterior_given_blanket(const Network& net, const std::string& x,
                                     const Assignment& evidence);

// Exact P(x | evidence) by summing the full joint over all completions; the
// independent oracle for posterior_given_blanket.  A reading for x itself is
// ignored.  Throws StateSpaceError beyond 2^24 joint states.
Distribution joint_enumerate(const Network& net, const std::string& x,
                             const Assignment& evidence);

/// Total assignment drawn by seeded forward sampling in topological order.
Assignment sample(const Network& net, std::uint64_t seed);

}  // namespace mbsv

#endif  // MBSV_INFERENCE_HPP_
