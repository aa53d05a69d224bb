#ifndef MBSV_MODEL_IO_HPP_
#define MBSV_MODEL_IO_HPP_

#include <string>
#include <vector>

#include <json.hpp>

#include "mbsv/detection.hpp"
#include "mbsv/isolation.hpp"
#include "mbsv/network.hpp"
#include "mbsv/simulator.hpp"

namespace mbsv {

// Built-in reference models.  The source material fixes only the structure;
// the CPT parameterization is pinned here so documented examples and tests
// stay deterministic: a single-parent child copies its parent, a multi-parent
// child targets the rounded mean of its parents' state indices, the target
// gets probability 1 - eps and the remainder splits equally.

/// Four-sensor turbine tree (m -> t, m -> p, t -> g), binary states,
/// uniform prior on m, noisy-copy channels.
Network fig1_binary(double eps = 0.05);

/// Eleven-sensor gas-turbine model, 3 states each, roots t1..t3 with prior
/// (0.2, 0.6, 0.2), noisy rounded-mean/copy channels.
Network gas_turbine(double eps = 0.02);

/// Model from a JSON file, or "builtin:fig1-binary" / "builtin:gas-turbine".
Network load_model(const std::string& path_or_builtin);

Network parse_model(const nlohmann::json& doc);
nlohmann::json model_to_json(const Network& net);

/// Readings file: one {variable: state name} object, or a list of them.
std::vector<ReadingVector> load_readings(const std::string& path,
                                         const Network& net);
std::vector<ReadingVector> parse_readings(const nlohmann::json& doc,
                                          const Network& net);

// Stable JSON views used by the CLI's --format json and by tests.
nlohmann::json report_to_json(const Network& net, const FaultReport& report);
nlohmann::json verdict_to_json(const Verdict& verdict);
nlohmann::json metrics_to_json(const CampaignMetrics& metrics);
nlohmann::json distinguishability_to_json(const DistinguishabilityReport& report);
nlohmann::json blanket_table_to_json(const Network& net,
                                     const BlanketSets& table);

const char* verdict_case_name(VerdictCase kind);

}  // namespace mbsv

#endif  // MBSV_MODEL_IO_HPP_
