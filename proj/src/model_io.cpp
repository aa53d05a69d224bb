#include "mbsv/model_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "mbsv/blankets.hpp"

namespace mbsv {

using nlohmann::json;

namespace {

// Row-major noisy CPT: for each parent combination the target state takes
// 1 - eps and the rest split the remainder equally.  Single parent: target =
// parent state; several parents: target = lround(mean of parent states).
Cpt noisy_cpt(const std::string& child, std::vector<std::string> parents,
              const std::vector<int>& parent_cards, int child_card, double eps) {
  Cpt cpt;
  cpt.child = child;
  cpt.parents = std::move(parents);
  std::size_t rows = 1;
  for (int c : parent_cards) rows *= static_cast<std::size_t>(c);
  for (std::size_t r = 0; r < rows; ++r) {
    std::size_t rest = r;
    std::vector<int> states(parent_cards.size());
    for (int i = static_cast<int>(parent_cards.size()) - 1; i >= 0; --i) {
      states[i] = static_cast<int>(rest % parent_cards[i]);
      rest /= parent_cards[i];
    }
    int target;
    if (states.size() == 1) {
      target = states[0];
    } else {
      double mean = 0.0;
      for (int s : states) mean += s;
      mean /= static_cast<double>(states.size());
      target = static_cast<int>(std::lround(mean));
    }
    std::vector<double> row(child_card, eps / static_cast<double>(child_card - 1));
    row[target] = 1.0 - eps;
    cpt.table.push_back(std::move(row));
  }
  return cpt;
}

json require(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key))
    throw ParseError(std::string("model file missing key '") + key + "'");
  return doc.at(key);
}

}  // namespace

Network fig1_binary(double eps) {
  const std::vector<std::string> binary = {"low", "high"};
  ModelSpec spec;
  spec.name = "fig1-binary";
  spec.variables = {{"m", binary}, {"t", binary}, {"p", binary}, {"g", binary}};
  spec.edges = {{"m", "t"}, {"m", "p"}, {"t", "g"}};
  spec.cpts.push_back({"m", {}, {{0.5, 0.5}}});
  spec.cpts.push_back(noisy_cpt("t", {"m"}, {2}, 2, eps));
  spec.cpts.push_back(noisy_cpt("p", {"m"}, {2}, 2, eps));
  spec.cpts.push_back(noisy_cpt("g", {"t"}, {2}, 2, eps));
  return build_network(spec);
}

Network gas_turbine(double eps) {
  const std::vector<std::string> ternary = {"low", "normal", "high"};
  ModelSpec spec;
  spec.name = "gas-turbine";
  for (const char* id : {"T", "t1", "t2", "t3", "f1", "f2", "ps", "pr", "pa",
                         "dp", "da"})
    spec.variables.push_back({id, ternary});
  for (const char* temp : {"t1", "t2", "t3"})
    for (const char* child : {"T", "f1", "f2"})
      spec.edges.emplace_back(temp, child);
  spec.edges.emplace_back("f1", "ps");
  spec.edges.emplace_back("f1", "pr");
  spec.edges.emplace_back("pr", "dp");
  spec.edges.emplace_back("f2", "pa");
  spec.edges.emplace_back("pa", "da");

  for (const char* root : {"t1", "t2", "t3"})
    spec.cpts.push_back({root, {}, {{0.2, 0.6, 0.2}}});
  for (const char* avg : {"T", "f1", "f2"})
    spec.cpts.push_back(noisy_cpt(avg, {"t1", "t2", "t3"}, {3, 3, 3}, 3, eps));
  spec.cpts.push_back(noisy_cpt("ps", {"f1"}, {3}, 3, eps));
  spec.cpts.push_back(noisy_cpt("pr", {"f1"}, {3}, 3, eps));
  spec.cpts.push_back(noisy_cpt("dp", {"pr"}, {3}, 3, eps));
  spec.cpts.push_back(noisy_cpt("pa", {"f2"}, {3}, 3, eps));
  spec.cpts.push_back(noisy_cpt("da", {"pa"}, {3}, 3, eps));
  return build_network(spec);
}

Network parse_model(const json& doc) {
  ModelSpec spec;
  spec.name = doc.is_object() && doc.contains("name")
                  ? doc.at("name").get<std::string>()
                  : "";
  try {
    for (const auto& var : require(doc, "variables")) {
      Variable v;
      v.id = require(var, "id").get<std::string>();
      for (const auto& st : require(var, "states"))
        v.states.push_back(st.get<std::string>());
      spec.variables.push_back(std::move(v));
    }
    if (doc.contains("edges"))
      for (const auto& edge : doc.at("edges")) {
        if (!edge.is_array() || edge.size() != 2)
          throw ParseError("edge must be a [parent, child] pair");
        spec.edges.emplace_back(edge.at(0).get<std::string>(),
                                edge.at(1).get<std::string>());
      }
    for (const auto& item : require(doc, "cpts")) {
      Cpt cpt;
      cpt.child = require(item, "child").get<std::string>();
      if (item.contains("parents"))
        for (const auto& p : item.at("parents"))
          cpt.parents.push_back(p.get<std::string>());
      for (const auto& row : require(item, "table"))
        cpt.table.push_back(row.get<std::vector<double>>());
      spec.cpts.push_back(std::move(cpt));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed model file: ") + e.what());
  }
  return build_network(spec);
}

json model_to_json(const Network& net) {
  json doc;
  doc["name"] = net.name();
  doc["variables"] = json::array();
  for (const auto& var : net.variables())
    doc["variables"].push_back({{"id", var.id}, {"states", var.states}});
  doc["edges"] = json::array();
  for (const auto& [parent, child] : net.edges())
    doc["edges"].push_back({parent, child});
  doc["cpts"] = json::array();
  for (const auto& cpt : net.cpts())
    doc["cpts"].push_back({{"child", cpt.child},
                           {"parents", cpt.parents},
                           {"table", cpt.table}});
  return doc;
}

Network load_model(const std::string& path_or_builtin) {
  if (path_or_builtin.rfind("builtin:", 0) == 0) {
    const std::string name = path_or_builtin.substr(8);
    if (name == "fig1-binary") return fig1_binary();
    if (name == "gas-turbine") return gas_turbine();
    throw ParseError("unknown builtin model '" + name + "'");
  }
  std::ifstream in(path_or_builtin);
  if (!in) throw ParseError("cannot open model file '" + path_or_builtin + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("model file '" + path_or_builtin + "': " + e.what());
  }
  return parse_model(doc);
}

std::vector<ReadingVector> parse_readings(const json& doc, const Network& net) {
  const auto one = [&net](const json& obj) {
    if (!obj.is_object()) throw ParseError("readings entry must be an object");
    ReadingVector readings;
    for (const auto& [id, state] : obj.items()) {
      const Variable& var = net.variable(id);  // UnknownIdError if absent
      const std::string name = state.get<std::string>();
      const auto it = std::find(var.states.begin(), var.states.end(), name);
      if (it == var.states.end())
        throw ParseError("unknown state '" + name + "' for variable '" + id +
                         "'");
      readings[id] = static_cast<int>(it - var.states.begin());
    }
    return readings;
  };

  std::vector<ReadingVector> out;
  if (doc.is_array())
    for (const auto& item : doc) out.push_back(one(item));
  else
    out.push_back(one(doc));
  return out;
}

std::vector<ReadingVector> load_readings(const std::string& path,
                                         const Network& net) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open readings file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("readings file '" + path + "': " + e.what());
  }
  return parse_readings(doc, net);
}

const char* verdict_case_name(VerdictCase kind) {
  switch (kind) {
    case VerdictCase::kNoFault:
      return "no_fault";
    case VerdictCase::kSingleReal:
      return "single_real";
    case VerdictCase::kSingleRealWithMasked:
      return "single_real_with_masked";
    case VerdictCase::kMultipleDisjoint:
      return "multiple_disjoint";
    case VerdictCase::kIndistinguishable:
      return "indistinguishable";
  }
  return "?";
}

json report_to_json(const Network& net, const FaultReport& report) {
  json checks = json::array();
  for (const auto& check : report.checks) {
    const auto& states = net.variable(check.variable).states;
    json entry = {{"variable", check.variable},
                  {"observed", states[check.observed]},
                  {"observed_index", check.observed},
                  {"predicted", states[check.predicted]},
                  {"predicted_index", check.predicted},
                  {"posterior_of_observed", check.posterior_of_observed},
                  {"flagged", check.flagged},
                  {"argmax_mismatch", check.argmax_mismatch},
                  {"low_confidence", check.low_confidence},
                  {"degenerate", check.degenerate},
                  {"idealized", check.idealized}};
    if (!check.posterior.probs.empty()) entry["posterior"] = check.posterior.probs;
    checks.push_back(std::move(entry));
  }
  return {{"checks", std::move(checks)},
          {"apparent_faults", report.apparent_faults},
          {"trajectory", report.trajectory}};
}

json verdict_to_json(const Verdict& verdict) {
  return {{"case", verdict_case_name(verdict.kind)},
          {"real_faults", verdict.real_faults},
          {"ambiguous_group", verdict.ambiguous_group},
          {"masked_candidates", verdict.masked_candidates},
          {"covers", verdict.covers},
          {"unexplained", verdict.unexplained}};
}

json metrics_to_json(const CampaignMetrics& m) {
  json histogram;
  for (int k = 0; k < 5; ++k)
    histogram[verdict_case_name(static_cast<VerdictCase>(k))] =
        m.verdict_histogram[k];
  return {{"episodes", m.episodes},
          {"faulty_episodes", m.faulty},
          {"fault_free_episodes", m.fault_free},
          {"detected", m.detected},
          {"contained", m.contained},
          {"exact", m.exact},
          {"false_alarms", m.false_alarms},
          {"non_manifesting", m.non_manifesting},
          {"verdict_histogram", std::move(histogram)},
          {"detection_rate", m.detection_rate},
          {"containment_rate", m.containment_rate},
          {"exact_isolation_rate", m.exact_isolation_rate},
          {"false_alarm_rate", m.false_alarm_rate}};
}

json distinguishability_to_json(const DistinguishabilityReport& report) {
  json pairs = json::array();
  for (const auto& [sub, super] : report.subset_pairs)
    pairs.push_back({sub, super});
  return {{"identical_groups", report.identical_groups},
          {"subset_pairs", std::move(pairs)},
          {"all_distinct", report.all_distinct}};
}

json blanket_table_to_json(const Network& net, const BlanketSets& table) {
  json rows = json::array();
  for (const auto& id : table.ids()) {
    const BlanketEntry& entry = table.at(id);
    rows.push_back({{"variable", id},
                    {"parents", entry.parents},
                    {"children", entry.children},
                    {"spouses", entry.spouses},
                    {"markov_blanket", entry.blanket},
                    {"extended_markov_blanket", entry.extended}});
  }
  return {{"model", net.name()}, {"blankets", std::move(rows)}};
}

}  // namespace mbsv
