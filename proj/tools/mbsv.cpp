// mbsv — Markov-blanket sensor validation.
//
// Subcommands: blankets, validate, explain, distinguishability, simulate,
// oracle-check.  Exit codes: 0 clean, 1 error, 2 faults found under
// --fail-on-fault (validate) or deviation beyond tolerance (oracle-check).

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mbsv/blankets.hpp"
#include "mbsv/detection.hpp"
#include "mbsv/inference.hpp"
#include "mbsv/isolation.hpp"
#include "mbsv/model_io.hpp"
#include "mbsv/network.hpp"
#include "mbsv/rng.hpp"
#include "mbsv/simulator.hpp"

namespace {

using mbsv::IdSet;

std::string join_set(const IdSet& ids) {
  std::string out = "{";
  for (const auto& id : ids) {
    if (out.size() > 1) out += ", ";
    out += id;
  }
  return out + "}";
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("MBSV_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 0;
}

mbsv::DetectionMode parse_mode(const std::string& name) {
  if (name == "argmax") return mbsv::DetectionMode::kArgmax;
  if (name == "confidence") return mbsv::DetectionMode::kConfidence;
  if (name == "combined") return mbsv::DetectionMode::kCombined;
  throw CLI::ValidationError("--policy", "expected argmax|confidence|combined");
}

struct PolicyFlags {
  std::string mode = "combined";
  double tau = 0.9;
  int delta = 0;

  mbsv::DetectionPolicy build() const {
    return {parse_mode(mode), tau, delta};
  }
  void attach(CLI::App* cmd) {
    cmd->add_option("--policy", mode, "argmax|confidence|combined")
        ->default_val("combined");
    cmd->add_option("--tau", tau, "confidence threshold in (0,1]")
        ->default_val(0.9);
    cmd->add_option("--delta", delta, "ordinal margin for argmax mismatches")
        ->default_val(0);
  }
};

void print_blankets_text(const mbsv::Network& net, const mbsv::BlanketSets& table) {
  std::size_t width = 8;
  for (const auto& id : table.ids()) width = std::max(width, id.size());
  std::cout << "model: " << net.name() << " (" << net.size() << " variables)\n\n";
  std::cout << std::left << std::setw(static_cast<int>(width + 2)) << "variable"
            << std::setw(28) << "markov blanket"
            << "lattice node (EMB)\n";
  for (const auto& id : table.ids()) {
    const auto& entry = table.at(id);
    std::cout << std::left << std::setw(static_cast<int>(width + 2)) << id
              << std::setw(28) << join_set(entry.blanket)
              << join_set(entry.extended) << "\n";
  }
}

void print_verdict_text(const mbsv::Verdict& verdict) {
  std::cout << "verdict: ";
  switch (verdict.kind) {
    case mbsv::VerdictCase::kNoFault:
      std::cout << "no faults\n";
      return;
    case mbsv::VerdictCase::kSingleReal:
      std::cout << "single real fault\n";
      break;
    case mbsv::VerdictCase::kSingleRealWithMasked:
      std::cout << "single real fault, possibly masking others\n";
      break;
    case mbsv::VerdictCase::kMultipleDisjoint:
      std::cout << "multiple real faults (disjoint blankets)\n";
      break;
    case mbsv::VerdictCase::kIndistinguishable:
      std::cout << "multiple faults, not distinguishable\n";
      break;
  }
  if (!verdict.real_faults.empty())
    std::cout << "  real faults: " << join_set(verdict.real_faults) << "\n";
  if (!verdict.ambiguous_group.empty())
    std::cout << "  one of (indistinguishable): "
              << join_set(verdict.ambiguous_group) << "\n";
  if (!verdict.masked_candidates.empty())
    std::cout << "  possibly masked: " << join_set(verdict.masked_candidates)
              << "\n";
  for (const auto& cover : verdict.covers)
    std::cout << "  exact cover: " << join_set(cover) << "\n";
  if (verdict.unexplained)
    std::cout << "  warning: part of the fault set matches no blanket\n";
}

void print_report_text(const mbsv::Network& net, const mbsv::FaultReport& report,
                       bool posteriors) {
  for (const auto& check : report.checks) {
    const auto& states = net.variable(check.variable).states;
    std::cout << "check " << std::left << std::setw(4) << check.variable
              << " observed=" << std::setw(8) << states[check.observed]
              << " predicted=" << std::setw(8) << states[check.predicted]
              << " P(observed)=" << std::fixed << std::setprecision(4)
              << check.posterior_of_observed << std::defaultfloat;
    if (check.flagged) {
      std::cout << "  FLAG (";
      std::string why;
      if (check.degenerate) why = "degenerate evidence";
      if (check.argmax_mismatch) why += why.empty() ? "argmax mismatch" : ", argmax mismatch";
      if (check.low_confidence) why += why.empty() ? "low confidence" : ", low confidence";
      if (check.idealized) why = "ideal propagation";
      std::cout << why << ")";
    }
    std::cout << "\n";
    if (posteriors && !check.posterior.probs.empty()) {
      std::cout << "      posterior:";
      for (std::size_t k = 0; k < check.posterior.probs.size(); ++k)
        std::cout << " P(" << states[k] << ")=" << std::fixed
                  << std::setprecision(5) << check.posterior.probs[k]
                  << std::defaultfloat;
      std::cout << "\n";
    }
  }
  std::cout << "apparent faults: " << join_set(report.apparent_faults) << "\n";
  std::cout << "trajectory: ";
  for (std::size_t i = 0; i < report.trajectory.size(); ++i)
    std::cout << (i ? " -> " : "") << join_set(report.trajectory[i]);
  std::cout << "\n";
}

int cmd_blankets(const std::string& model, const std::string& format) {
  const mbsv::Network net = mbsv::load_model(model);
  const mbsv::BlanketSets table = mbsv::emb_table(net);
  if (format == "json")
    std::cout << mbsv::blanket_table_to_json(net, table).dump(2) << "\n";
  else
    print_blankets_text(net, table);
  return 0;
}

int cmd_validate(const std::string& model, const std::string& readings_path,
                 const PolicyFlags& flags, const std::string& format,
                 bool fail_on_fault, bool explain) {
  const mbsv::Network net = mbsv::load_model(model);
  const mbsv::BlanketSets table = mbsv::emb_table(net);
  const mbsv::DetectionPolicy policy = flags.build();
  const auto batches = mbsv::load_readings(readings_path, net);

  std::vector<std::string> monitored;
  for (const auto& var : net.variables()) monitored.push_back(var.id);

  bool any_fault = false;
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < batches.size(); ++i) {
    const mbsv::FaultReport report =
        mbsv::apparent_fault_set(net, batches[i], policy, monitored);
    const mbsv::Verdict verdict = mbsv::isolate(report.apparent_faults, table);
    any_fault |= !report.apparent_faults.empty();
    if (format == "json") {
      out.push_back({{"report", mbsv::report_to_json(net, report)},
                     {"verdict", mbsv::verdict_to_json(verdict)}});
      continue;
    }
    if (batches.size() > 1) std::cout << "--- readings #" << i + 1 << " ---\n";
    print_report_text(net, report, explain);
    print_verdict_text(verdict);
    if (explain) {
      std::cout << "\nreduced models:\n";
      for (const auto& var : net.variables()) {
        const mbsv::Network reduced = mbsv::reduced_model(net, var.id);
        IdSet nodes;
        IdSet roots;
        for (const auto& rv : reduced.variables()) {
          nodes.insert(rv.id);
          if (rv.id != var.id &&
              table.at(var.id).children.count(rv.id) == 0)
            roots.insert(rv.id);
        }
        std::cout << "  " << var.id << ": nodes " << join_set(nodes)
                  << ", evidence roots " << join_set(roots) << "\n";
      }
    }
  }
  if (format == "json") {
    // A single readings object gets a single result object.
    std::cout << (out.size() == 1 ? out.front() : out).dump(2) << "\n";
  }
  return fail_on_fault && any_fault ? 2 : 0;
}

int cmd_distinguishability(const std::string& model, const std::string& format) {
  const mbsv::Network net = mbsv::load_model(model);
  const mbsv::BlanketSets table = mbsv::emb_table(net);
  const mbsv::DistinguishabilityReport report =
      mbsv::distinguishability_report(table);
  if (format == "json") {
    std::cout << mbsv::distinguishability_to_json(report).dump(2) << "\n";
    return 0;
  }
  std::cout << "model: " << net.name() << "\n";
  if (report.all_distinct) {
    std::cout << "all extended blankets are distinct: every single real fault "
                 "is isolable\n";
  } else {
    std::cout << "identical-EMB groups (single faults inside a group cannot "
                 "be told apart):\n";
    for (const auto& group : report.identical_groups)
      std::cout << "  " << join_set(group) << "\n";
  }
  if (!report.subset_pairs.empty()) {
    std::cout << "subset pairs (a fault in the second masks a simultaneous "
                 "fault in the first):\n";
    for (const auto& [sub, super] : report.subset_pairs)
      std::cout << "  (" << sub << ", " << super << ")\n";
  }
  return 0;
}

int cmd_simulate(const std::string& model, int episodes, std::uint64_t seed,
                 const std::string& detector, const std::string& faults,
                 const std::string& mode, const PolicyFlags& flags,
                 const std::string& format) {
  const mbsv::Network net = mbsv::load_model(model);
  const mbsv::BlanketSets table = mbsv::emb_table(net);

  mbsv::CampaignConfig config;
  config.episodes = episodes;
  config.seed = seed;
  config.policy = flags.build();
  if (detector == "ideal")
    config.detector = mbsv::DetectorKind::kIdeal;
  else if (detector == "probabilistic")
    config.detector = mbsv::DetectorKind::kProbabilistic;
  else
    throw CLI::ValidationError("--detector", "expected ideal|probabilistic");

  if (faults == "auto") {
    config.plan = mbsv::FaultPlan::single_fault();
  } else if (faults == "none") {
    config.plan = mbsv::FaultPlan::fault_free();
  } else {
    IdSet ids;
    std::stringstream ss(faults);
    std::string id;
    while (std::getline(ss, id, ','))
      if (!id.empty()) ids.insert(id);
    config.plan = mbsv::FaultPlan::fixed_set(std::move(ids));
  }

  if (mode == "random-different") {
    config.mode = mbsv::InjectionMode::kRandomDifferent;
  } else if (mode.rfind("stuck:", 0) == 0) {
    config.mode = mbsv::InjectionMode::kStuck;
    config.stuck_state = std::stoi(mode.substr(6));
  } else {
    throw CLI::ValidationError("--mode", "expected random-different|stuck:STATE");
  }

  const mbsv::CampaignMetrics metrics = mbsv::run_campaign(net, table, config);
  if (format == "json") {
    std::cout << mbsv::metrics_to_json(metrics).dump(2) << "\n";
    return 0;
  }
  std::cout << "model: " << net.name() << ", detector: " << detector
            << ", episodes: " << metrics.episodes << ", seed: " << seed << "\n"
            << "faulty episodes:      " << metrics.faulty << "\n"
            << "fault-free episodes:  " << metrics.fault_free << "\n"
            << "detection rate:       " << metrics.detection_rate << "\n"
            << "containment rate:     " << metrics.containment_rate << "\n"
            << "exact isolation rate: " << metrics.exact_isolation_rate << "\n"
            << "false alarm rate:     " << metrics.false_alarm_rate << "\n"
            << "non-manifesting:      " << metrics.non_manifesting << "\n";
  std::cout << "verdicts:";
  for (int k = 0; k < 5; ++k)
    std::cout << " " << mbsv::verdict_case_name(static_cast<mbsv::VerdictCase>(k))
              << "=" << metrics.verdict_histogram[k];
  std::cout << "\n";
  return 0;
}

int cmd_oracle_check(const std::string& model, int trials, std::uint64_t seed,
                     double tolerance, const std::string& format) {
  const mbsv::Network net = mbsv::load_model(model);
  if (net.size() == 0) throw mbsv::Error("model has no variables");
  auto engine = mbsv::rng::make_engine(seed, mbsv::rng::kStreamOracle);

  double max_dev = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int xi = mbsv::rng::next_index(engine, net.size());
    const std::string& x = net.variable(xi).id;
    mbsv::Assignment evidence;
    for (const auto& id : mbsv::markov_blanket(net, x)) {
      const int card = net.cardinality(net.index_of(id));
      evidence[id] = mbsv::rng::next_index(engine, card);
    }
    const auto local = mbsv::posterior_given_blanket(net, x, evidence);
    const auto exact = mbsv::joint_enumerate(net, x, evidence);
    for (std::size_t k = 0; k < local.probs.size(); ++k)
      max_dev = std::max(max_dev, std::abs(local.probs[k] - exact.probs[k]));
  }
  if (format == "json")
    std::cout << nlohmann::json({{"model", net.name()},
                                 {"trials", trials},
                                 {"max_abs_deviation", max_dev},
                                 {"tolerance", tolerance},
                                 {"within_tolerance", max_dev <= tolerance}})
                     .dump(2)
              << "\n";
  else
    std::cout << "max |posterior - enumeration| over " << trials
              << " trials: " << std::scientific << max_dev << std::defaultfloat
              << (max_dev <= tolerance ? " (ok)" : " (EXCEEDS TOLERANCE)")
              << "\n";
  return max_dev <= tolerance ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensor validation on a discrete Bayesian network: predicts "
               "each sensor from its Markov blanket, flags potential faults, "
               "and isolates real from apparent ones via extended-Markov-"
               "blanket constraints"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::string model;
  std::string readings;
  std::string format = "text";
  std::string detector = "probabilistic";
  std::string faults = "auto";
  std::string inj_mode = "random-different";
  bool fail_on_fault = false;
  int episodes = 100;
  int trials = 100;
  std::uint64_t seed = default_seed();
  double tolerance = 1e-9;
  PolicyFlags flags;

  auto add_common = [&](CLI::App* cmd, bool with_readings) {
    cmd->add_option("--model", model, "model file or builtin:<name>")
        ->required();
    if (with_readings)
      cmd->add_option("--readings", readings, "readings JSON file")->required();
    cmd->add_option("--format", format, "text|json")->default_val("text");
  };

  auto* blankets = app.add_subcommand("blankets", "print the MB/EMB table");
  add_common(blankets, false);

  auto* validate =
      app.add_subcommand("validate", "run one validation pass on readings");
  add_common(validate, true);
  flags.attach(validate);
  validate->add_flag("--fail-on-fault", fail_on_fault,
                     "exit 2 when apparent faults are found");

  auto* explain = app.add_subcommand(
      "explain", "validate with posteriors, reduced models, and trajectory");
  add_common(explain, true);
  flags.attach(explain);

  auto* disting = app.add_subcommand("distinguishability",
                                     "identical-EMB groups and subset pairs");
  add_common(disting, false);

  auto* simulate =
      app.add_subcommand("simulate", "run a fault-injection campaign");
  add_common(simulate, false);
  flags.attach(simulate);
  simulate->add_option("--episodes", episodes, "episode count")->default_val(100);
  simulate->add_option("--seed", seed, "campaign seed (default $MBSV_SEED or 0)");
  simulate->add_option("--detector", detector, "ideal|probabilistic")
      ->default_val("probabilistic");
  simulate->add_option("--faults", faults,
                       "auto (random single) | none | comma-separated ids")
      ->default_val("auto");
  simulate->add_option("--mode", inj_mode, "random-different|stuck:STATE")
      ->default_val("random-different");

  auto* oracle = app.add_subcommand(
      "oracle-check", "compare blanket posterior against joint enumeration");
  add_common(oracle, false);
  oracle->add_option("--trials", trials, "random evidence draws")
      ->default_val(100);
  oracle->add_option("--seed", seed, "rng seed (default $MBSV_SEED or 0)");
  oracle->add_option("--tolerance", tolerance, "max allowed deviation")
      ->default_val(1e-9);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // unknown flag/command: usage text, exit 1
  }

  try {
    if (blankets->parsed()) return cmd_blankets(model, format);
    if (validate->parsed())
      return cmd_validate(model, readings, flags, format, fail_on_fault, false);
    if (explain->parsed())
      return cmd_validate(model, readings, flags, format, false, true);
    if (disting->parsed()) return cmd_distinguishability(model, format);
    if (simulate->parsed())
      return cmd_simulate(model, episodes, seed, detector, faults, inj_mode,
                          flags, format);
    if (oracle->parsed())
      return cmd_oracle_check(model, trials, seed, tolerance, format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
