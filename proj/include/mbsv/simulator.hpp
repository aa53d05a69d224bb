#ifndef MBSV_SIMULATOR_HPP_
#define MBSV_SIMULATOR_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mbsv/detection.hpp"
#include "mbsv/isolation.hpp"

namespace mbsv {

enum class InjectionMode { kRandomDifferent, kStuck };

/// Catastrophic faults to inject into one episode.
struct FaultScenario {
  IdSet true_faults;
  InjectionMode mode = InjectionMode::kRandomDifferent;
  int stuck_state = 0;  // kStuck only
  std::uint64_t seed = 0;
};

struct InjectionResult {
  ReadingVector readings;
  // Stuck victims whose forced state equals the true state; their fault does
  // not show in the readings at all.
  IdSet non_manifesting;
};

// The probabilistic detector runs the full inference path on the injected
// readings.  The ideal detector encodes the detection/propagation
// idealization directly — S = union of the true faults' EMBs — so the
// isolation layer can be exercised at full strength on its own.
enum class DetectorKind { kProbabilistic, kIdeal };

struct EpisodeResult {
  Assignment truth;
  ReadingVector readings;
  IdSet true_faults;
  FaultReport report;
  Verdict verdict;
  bool non_manifesting = false;
  bool detected = false;   // every true fault flagged in S
  bool contained = false;  // every true fault inside the verdict's candidates
  bool exact = false;      // verdict pinpoints exactly the true fault set
};

/// How a campaign draws each episode's true-fault set.
struct FaultPlan {
  enum class Kind { kFixed, kRandomArity, kDisjointPairs };
  Kind kind = Kind::kFixed;
  IdSet fixed;
  // kRandomArity: weight of drawing k distinct victims, k = index.
  std::vector<double> arity_weights;

  static FaultPlan fault_free() { return {}; }
  static FaultPlan fixed_set(IdSet ids) {
    FaultPlan p;
    p.fixed = std::move(ids);
    return p;
  }
  static FaultPlan single_fault() {
    FaultPlan p;
    p.kind = Kind::kRandomArity;
    p.arity_weights = {0.0, 1.0};
    return p;
  }
  static FaultPlan disjoint_pairs() {
    FaultPlan p;
    p.kind = Kind::kDisjointPairs;
    return p;
  }
};

struct CampaignConfig {
  int episodes = 1;
  FaultPlan plan;
  InjectionMode mode = InjectionMode::kRandomDifferent;
  int stuck_state = 0;
  DetectionPolicy policy;
  DetectorKind detector = DetectorKind::kProbabilistic;
  std::uint64_t seed = 0;
};

struct CampaignMetrics {
  int episodes = 0;
  int faulty = 0;
  int fault_free = 0;
  int detected = 0;
  int contained = 0;
  int exact = 0;
  int false_alarms = 0;
  int non_manifesting = 0;
  std::array<int, 5> verdict_histogram{};  // indexed by VerdictCase

  double detection_rate = 0.0;
  double containment_rate = 0.0;
  double exact_isolation_rate = 0.0;
  double false_alarm_rate = 0.0;

  bool operator==(const CampaignMetrics&) const = default;
};

/// Readings = truth with each true-fault sensor overwritten per the scenario.
InjectionResult inject_fault(const Network& net, const Assignment& truth,
                             const FaultScenario& scenario);

/// One sample-inject-detect-isolate episode.
EpisodeResult run_episode(const Network& net, const BlanketSets& table,
                          const FaultScenario& scenario,
                          const DetectionPolicy& policy, DetectorKind detector);

/// N episodes seeded seed, seed+1, ...; reproducible given (config, model).
CampaignMetrics run_campaign(const Network& net, const BlanketSets& table,
                             const CampaignConfig& config);

/// All unordered pairs {a, b} with disjoint EMBs, sorted.
std::vector<std::pair<std::string, std::string>> disjoint_emb_pairs(
    const BlanketSets& table);

}  // namespace mbsv

#endif  // MBSV_SIMULATOR_HPP_
