#include "mbsv/detection.hpp"

#include <algorithm>
#include <cmath>

namespace mbsv {

namespace {

void check_policy(const Network& net, const DetectionPolicy& policy) {
  if (!(policy.tau > 0.0 && policy.tau <= 1.0))
    throw ValidationError("tau must be in (0, 1]");
  if (policy.delta < 0) throw ValidationError("delta must be >= 0");
  int max_card = 0;
  for (int v = 0; v < net.size(); ++v)
    max_card = std::max(max_card, net.cardinality(v));
  if (net.size() > 0 && policy.delta >= max_card)
    throw ValidationError("delta must be below the largest cardinality");
}

}  // namespace

Prediction predict(const Network& net, const std::string& x,
                   const ReadingVector& readings) {
  Prediction pred;
  pred.dist = posterior_given_blanket(net, x, readings);
  const auto& p = pred.dist.probs;
  pred.state = static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
  return pred;
}

CheckResult detect_potential_fault(const Network& net, const std::string& x,
                                   const ReadingVector& readings,
                                   const DetectionPolicy& policy) {
  check_policy(net, policy);
  net.index_of(x);
  auto it = readings.find(x);
  if (it == readings.end()) throw IncompleteEvidenceError({x});

  CheckResult res;
  res.variable = x;
  res.observed = it->second;

  Prediction pred = predict(net, x, readings);
  res.predicted = pred.state;
  res.posterior_of_observed = pred.dist.probs[res.observed];
  res.degenerate = pred.dist.degenerate;
  res.argmax_mismatch = res.observed != res.predicted &&
                        std::abs(res.observed - res.predicted) > policy.delta;
  res.low_confidence = res.posterior_of_observed < policy.tau;

  switch (policy.mode) {
    case DetectionMode::kArgmax:
      res.flagged = res.argmax_mismatch;
      break;
    case DetectionMode::kConfidence:
      res.flagged = res.low_confidence;
      break;
    case DetectionMode::kCombined:
      res.flagged = res.argmax_mismatch || res.low_confidence;
      break;
  }
  if (res.degenerate) res.flagged = true;
  res.posterior = std::move(pred.dist);
  return res;
}

FaultReport apparent_fault_set(const Network& net, const ReadingVector& readings,
                               const DetectionPolicy& policy,
                               const std::vector<std::string>& monitored) {
  FaultReport report;
  report.trajectory.push_back({});
  for (const auto& x : monitored) {
    CheckResult res = detect_potential_fault(net, x, readings, policy);
    if (res.flagged) report.apparent_faults.insert(x);
    report.checks.push_back(std::move(res));
    report.trajectory.push_back(report.apparent_faults);
  }
  return report;
}

}  // namespace mbsv
