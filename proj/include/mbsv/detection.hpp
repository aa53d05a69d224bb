#ifndef MBSV_DETECTION_HPP_
#define MBSV_DETECTION_HPP_

#include <string>
#include <vector>

#include "mbsv/inference.hpp"
#include "mbsv/network.hpp"

namespace mbsv {

/// One observed state index per monitored sensor.
using ReadingVector = Assignment;

enum class DetectionMode { kArgmax, kConfidence, kCombined };

// Margin policy deciding when a reading counts as a potential fault.
//   argmax:     flag iff observed != predicted and |observed - predicted| > delta
//   confidence: flag iff P(observed | blanket) < tau
//   combined:   flag if either rule fires (default)
// Degenerate (zero-mass) posteriors always flag.
struct DetectionPolicy {
  DetectionMode mode = DetectionMode::kCombined;
  double tau = 0.9;  // in (0, 1]
  int delta = 0;     // >= 0, less than the largest cardinality
};

struct Prediction {
  int state = 0;  // argmax of the posterior, ties broken by lowest index
  Distribution dist;
};

/// Outcome of one sensor check, with the evidence that justified the flag.
struct CheckResult {
  std::string variable;
  int observed = -1;
  int predicted = -1;
  double posterior_of_observed = 0.0;
  bool flagged = false;
  bool argmax_mismatch = false;
  bool low_confidence = false;
  bool degenerate = false;
  bool idealized = false;  // flag decreed by the ideal detector, not inference
  Distribution posterior;
};

/// One full validation pass: every check, the apparent-fault set S, and the
/// cumulative lattice trajectory (leading empty set included).
struct FaultReport {
  std::vector<CheckResult> checks;
  IdSet apparent_faults;
  std::vector<IdSet> trajectory;
};

/// Predicted state of x from its blanket readings.
Prediction predict(const Network& net, const std::string& x,
                   const ReadingVector& readings);

/// Applies the margin policy to one sensor.  Readings must cover x and MB(x).
CheckResult detect_potential_fault(const Network& net, const std::string& x,
                                   const ReadingVector& readings,
                                   const DetectionPolicy& policy);

// Checks each monitored variable in list order against the raw readings.  A
// suspect's own reading never enters its own posterior but still serves as
// evidence inside other variables' blankets.  The final S is order-free; only
// the trajectory depends on the monitoring order.
FaultReport apparent_fault_set(const Network& net, const ReadingVector& readings,
                               const DetectionPolicy& policy,
                               const std::vector<std::string>& monitored);

}  // namespace mbsv

#endif  // MBSV_DETECTION_HPP_
