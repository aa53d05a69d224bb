#include "mbsv/simulator.hpp"

#include <algorithm>

#include "mbsv/rng.hpp"

namespace mbsv {

namespace {

bool subset_of(const IdSet& a, const IdSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

IdSet draw_faults(const FaultPlan& plan, const Network& net,
                  const std::vector<std::pair<std::string, std::string>>& pairs,
                  std::mt19937_64& engine) {
  switch (plan.kind) {
    case FaultPlan::Kind::kFixed:
      return plan.fixed;
    case FaultPlan::Kind::kRandomArity: {
      if (plan.arity_weights.empty()) return {};
      const int arity = rng::pick_weighted(engine, plan.arity_weights);
      std::vector<std::string> pool;
      pool.reserve(net.size());
      for (const auto& var : net.variables()) pool.push_back(var.id);
      IdSet faults;
      for (int k = 0; k < arity && !pool.empty(); ++k) {
        const int i = rng::next_index(engine, static_cast<int>(pool.size()));
        faults.insert(pool[i]);
        pool.erase(pool.begin() + i);
      }
      return faults;
    }
    case FaultPlan::Kind::kDisjointPairs: {
      if (pairs.empty())
        throw Error("model has no disjoint-EMB pairs to sample from");
      const auto& [a, b] =
          pairs[rng::next_index(engine, static_cast<int>(pairs.size()))];
      return {a, b};
    }
  }
  return {};
}

bool is_exact(const Verdict& verdict, const IdSet& true_faults) {
  switch (verdict.kind) {
    case VerdictCase::kNoFault:
      return true_faults.empty();
    case VerdictCase::kSingleReal:
    case VerdictCase::kSingleRealWithMasked:
      return verdict.real_faults == true_faults;
    case VerdictCase::kMultipleDisjoint:
      return std::find(verdict.covers.begin(), verdict.covers.end(),
                       true_faults) != verdict.covers.end();
    case VerdictCase::kIndistinguishable:
      return false;
  }
  return false;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> disjoint_emb_pairs(
    const BlanketSets& table) {
  std::vector<std::string> ids(table.ids());
  std::sort(ids.begin(), ids.end());
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      const IdSet& a = table.at(ids[i]).extended;
      const IdSet& b = table.at(ids[j]).extended;
      IdSet common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                            std::inserter(common, common.begin()));
      if (common.empty()) pairs.emplace_back(ids[i], ids[j]);
    }
  return pairs;
}

InjectionResult inject_fault(const Network& net, const Assignment& truth,
                             const FaultScenario& scenario) {
  std::vector<std::string> missing;
  for (const auto& var : net.variables())
    if (!truth.count(var.id)) missing.push_back(var.id);
  if (!missing.empty()) throw IncompleteEvidenceError(std::move(missing));

  for (const auto& id : scenario.true_faults) {
    const int card = net.cardinality(net.index_of(id));
    if (scenario.mode == InjectionMode::kStuck &&
        (scenario.stuck_state < 0 || scenario.stuck_state >= card))
      throw BadStuckStateError("stuck state " +
                               std::to_string(scenario.stuck_state) +
                               " out of range for '" + id + "'");
  }

  InjectionResult result;
  result.readings = truth;
  auto engine = rng::make_engine(scenario.seed, rng::kStreamInject);
  for (const auto& id : scenario.true_faults) {
    const int card = net.cardinality(net.index_of(id));
    const int actual = truth.at(id);
    if (scenario.mode == InjectionMode::kRandomDifferent) {
      const int draw = rng::next_index(engine, card - 1);
      result.readings[id] = draw >= actual ? draw + 1 : draw;
    } else {
      result.readings[id] = scenario.stuck_state;
      if (scenario.stuck_state == actual) result.non_manifesting.insert(id);
    }
  }
  return result;
}

EpisodeResult run_episode(const Network& net, const BlanketSets& table,
                          const FaultScenario& scenario,
                          const DetectionPolicy& policy, DetectorKind detector) {
  EpisodeResult ep;
  ep.true_faults = scenario.true_faults;
  ep.truth = sample(net, scenario.seed);
  InjectionResult injection = inject_fault(net, ep.truth, scenario);
  ep.readings = std::move(injection.readings);
  ep.non_manifesting = !injection.non_manifesting.empty();

  std::vector<std::string> monitored;
  monitored.reserve(net.size());
  for (const auto& var : net.variables()) monitored.push_back(var.id);

  if (detector == DetectorKind::kProbabilistic) {
    ep.report = apparent_fault_set(net, ep.readings, policy, monitored);
  } else {
    IdSet ideal;
    for (const auto& id : scenario.true_faults) {
      const IdSet& emb = table.at(id).extended;
      ideal.insert(emb.begin(), emb.end());
    }
    ep.report.trajectory.push_back({});
    for (const auto& x : monitored) {
      CheckResult res;
      res.variable = x;
      res.observed = ep.readings.at(x);
      res.predicted = ep.truth.at(x);
      res.flagged = ideal.count(x) != 0;
      res.idealized = res.flagged;
      res.posterior_of_observed = res.flagged ? 0.0 : 1.0;
      if (res.flagged) ep.report.apparent_faults.insert(x);
      ep.report.checks.push_back(std::move(res));
      ep.report.trajectory.push_back(ep.report.apparent_faults);
    }
  }

  ep.verdict = isolate(ep.report.apparent_faults, table);
  ep.detected = subset_of(ep.true_faults, ep.report.apparent_faults);
  ep.contained = subset_of(ep.true_faults, candidate_union(ep.verdict));
  ep.exact = is_exact(ep.verdict, ep.true_faults);
  return ep;
}

CampaignMetrics run_campaign(const Network& net, const BlanketSets& table,
                             const CampaignConfig& config) {
  if (config.episodes < 1) throw ValidationError("episodes must be >= 1");
  const auto pairs = config.plan.kind == FaultPlan::Kind::kDisjointPairs
                         ? disjoint_emb_pairs(table)
                         : std::vector<std::pair<std::string, std::string>>{};

  CampaignMetrics metrics;
  metrics.episodes = config.episodes;
  for (int i = 0; i < config.episodes; ++i) {
    const std::uint64_t episode_seed =
        config.seed + static_cast<std::uint64_t>(i);
    auto fault_engine = rng::make_engine(episode_seed, rng::kStreamFaults);
    FaultScenario scenario;
    scenario.true_faults = draw_faults(config.plan, net, pairs, fault_engine);
    scenario.mode = config.mode;
    scenario.stuck_state = config.stuck_state;
    scenario.seed = episode_seed;

    EpisodeResult ep =
        run_episode(net, table, scenario, config.policy, config.detector);
    // A stuck fault hidden by a matching true state violates the fault model;
    // redraw the episode with a chained seed.
    for (int attempt = 0; ep.non_manifesting && attempt < 100; ++attempt) {
      scenario.seed = rng::splitmix64(scenario.seed);
      ep = run_episode(net, table, scenario, config.policy, config.detector);
    }
    if (ep.non_manifesting) ++metrics.non_manifesting;

    ++metrics.verdict_histogram[static_cast<int>(ep.verdict.kind)];
    if (ep.true_faults.empty()) {
      ++metrics.fault_free;
      if (!ep.report.apparent_faults.empty()) ++metrics.false_alarms;
    } else {
      ++metrics.faulty;
      metrics.detected += ep.detected;
      metrics.contained += ep.contained;
      metrics.exact += ep.exact;
    }
  }

  const auto rate = [](int num, int den) {
    return den > 0 ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
  };
  metrics.detection_rate = rate(metrics.detected, metrics.faulty);
  metrics.containment_rate = rate(metrics.contained, metrics.faulty);
  metrics.exact_isolation_rate = rate(metrics.exact, metrics.faulty);
  metrics.false_alarm_rate = rate(metrics.false_alarms, metrics.fault_free);
  return metrics;
}

}  // namespace mbsv
