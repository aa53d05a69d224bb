#include <doctest.h>

#include <algorithm>

#include "mbsv/detection.hpp"
#include "mbsv/model_io.hpp"
#include "test_util.hpp"

using namespace mbsv;

namespace {
const std::vector<std::string> kOrder = {"m", "t", "p", "g"};
}

TEST_CASE("prediction takes the argmax with lowest-index ties") {
  const Network net = fig1_binary();

  const Prediction agree = predict(net, "t", {{"m", 0}, {"g", 0}});
  CHECK(agree.state == 0);
  CHECK(agree.dist.probs[0] == doctest::Approx(0.9025 / 0.905).epsilon(1e-12));

  const Prediction tie = predict(net, "t", {{"m", 0}, {"g", 1}});
  CHECK(tie.state == 0);  // 0.5/0.5, lowest state index wins
  CHECK(tie.dist.probs[0] == doctest::Approx(0.5));

  ModelSpec lone;
  lone.variables = {{"x", {"a", "b"}}};
  lone.cpts = {{"x", {}, {{0.5, 0.5}}}};
  CHECK(predict(build_network(lone), "x", {}).state == 0);
}

TEST_CASE("margin policy flags mismatches and weak confidence") {
  const Network net = fig1_binary();
  const DetectionPolicy policy;  // combined, tau 0.9, delta 0

  // healthy reading, strong posterior
  const CheckResult ok =
      detect_potential_fault(net, "t", {{"t", 0}, {"m", 0}, {"g", 0}}, policy);
  CHECK_FALSE(ok.flagged);
  CHECK(ok.posterior_of_observed == doctest::Approx(0.9025 / 0.905));

  // flipped reading
  const CheckResult flipped =
      detect_potential_fault(net, "t", {{"t", 1}, {"m", 0}, {"g", 0}}, policy);
  CHECK(flipped.flagged);
  CHECK(flipped.argmax_mismatch);
  CHECK(flipped.low_confidence);

  // symmetric conflict: argmax alone would miss it
  const CheckResult tie =
      detect_potential_fault(net, "t", {{"t", 0}, {"m", 0}, {"g", 1}}, policy);
  CHECK(tie.flagged);
  CHECK_FALSE(tie.argmax_mismatch);
  CHECK(tie.low_confidence);

  DetectionPolicy argmax_only{DetectionMode::kArgmax, 0.9, 0};
  CHECK_FALSE(
      detect_potential_fault(net, "t", {{"t", 0}, {"m", 0}, {"g", 1}}, argmax_only)
          .flagged);
}

TEST_CASE("ordinal margin forgives near misses") {
  const Network net = gas_turbine(0.02);
  // pa copies f2; observe one step away from the prediction
  ReadingVector readings = {{"pa", 1}, {"f2", 0}, {"da", 1}};
  DetectionPolicy wide{DetectionMode::kArgmax, 0.9, 1};
  CHECK_FALSE(detect_potential_fault(net, "pa", readings, wide).flagged);
  DetectionPolicy tight{DetectionMode::kArgmax, 0.9, 0};
  CHECK(detect_potential_fault(net, "pa", readings, tight).flagged);
}

TEST_CASE("policy bounds are validated") {
  const Network net = fig1_binary();
  const ReadingVector r = {{"t", 0}, {"m", 0}, {"g", 0}};
  CHECK_THROWS_AS(
      detect_potential_fault(net, "t", r, {DetectionMode::kCombined, 0.0, 0}),
      ValidationError);
  CHECK_THROWS_AS(
      detect_potential_fault(net, "t", r, {DetectionMode::kCombined, 1.5, 0}),
      ValidationError);
  CHECK_THROWS_AS(
      detect_potential_fault(net, "t", r, {DetectionMode::kCombined, 0.9, 2}),
      ValidationError);
  CHECK_THROWS_AS(detect_potential_fault(net, "t", {{"m", 0}, {"g", 0}},
                                         DetectionPolicy{}),
                  IncompleteEvidenceError);
}

TEST_CASE("degenerate posteriors flag in every mode") {
  ModelSpec spec;
  spec.variables = {{"x", {"a", "b"}}, {"y", {"a", "b"}}, {"z", {"a", "b"}}};
  spec.edges = {{"x", "y"}, {"y", "z"}};
  spec.cpts = {{"x", {}, {{0.5, 0.5}}},
               {"y", {"x"}, {{1.0, 0.0}, {0.0, 1.0}}},
               {"z", {"y"}, {{1.0, 0.0}, {0.0, 1.0}}}};
  const Network net = build_network(spec);
  const ReadingVector readings = {{"x", 0}, {"y", 0}, {"z", 1}};
  // the degenerate uniform has no argmax mismatch, but must flag anyway
  const CheckResult res = detect_potential_fault(
      net, "y", readings, {DetectionMode::kArgmax, 0.9, 0});
  CHECK(res.degenerate);
  CHECK_FALSE(res.argmax_mismatch);
  CHECK(res.flagged);
}

TEST_CASE("state indices outside the cardinality are rejected") {
  const Network net = fig1_binary();
  CHECK_THROWS_AS(
      detect_potential_fault(net, "t", {{"t", 5}, {"m", 0}, {"g", 0}},
                             DetectionPolicy{}),
      Error);
}

TEST_CASE("an empty monitored list yields an empty pass") {
  const Network net = fig1_binary();
  const FaultReport report =
      apparent_fault_set(net, {}, DetectionPolicy{}, {});
  CHECK(report.apparent_faults.empty());
  CHECK(report.trajectory == std::vector<IdSet>{{}});
  CHECK(report.checks.empty());
}

TEST_CASE("flipped-t readings walk the expected lattice trajectory") {
  const Network net = fig1_binary();
  for (int root = 0; root < 2; ++root) {
    const int flip = 1 - root;
    const ReadingVector readings = {
        {"m", root}, {"t", flip}, {"p", root}, {"g", root}};
    const FaultReport report =
        apparent_fault_set(net, readings, DetectionPolicy{}, kOrder);

    CHECK(report.apparent_faults == IdSet{"m", "t", "g"});
    REQUIRE(report.trajectory.size() == 5);
    CHECK(report.trajectory[0] == IdSet{});
    CHECK(report.trajectory[1] == IdSet{"m"});
    CHECK(report.trajectory[2] == IdSet{"m", "t"});
    CHECK(report.trajectory[3] == IdSet{"m", "t"});
    CHECK(report.trajectory[4] == IdSet{"m", "t", "g"});
  }
}

TEST_CASE("fault-free consistent readings raise no flags") {
  const Network net = fig1_binary();
  for (int root = 0; root < 2; ++root) {
    const ReadingVector readings = {
        {"m", root}, {"t", root}, {"p", root}, {"g", root}};
    const FaultReport report =
        apparent_fault_set(net, readings, DetectionPolicy{}, kOrder);
    CHECK(report.apparent_faults.empty());
  }
}

TEST_CASE("the final S does not depend on monitoring order") {
  const Network net = fig1_binary();
  const ReadingVector readings = {{"m", 0}, {"t", 1}, {"p", 0}, {"g", 0}};
  std::vector<std::string> order = kOrder;
  std::sort(order.begin(), order.end());
  IdSet base;
  do {
    const FaultReport report =
        apparent_fault_set(net, readings, DetectionPolicy{}, order);
    if (base.empty()) base = report.apparent_faults;
    CHECK(report.apparent_faults == base);
    CHECK(report.trajectory.back() == report.apparent_faults);
    for (std::size_t i = 1; i < report.trajectory.size(); ++i)
      CHECK(std::includes(report.trajectory[i].begin(), report.trajectory[i].end(),
                          report.trajectory[i - 1].begin(),
                          report.trajectory[i - 1].end()));
  } while (std::next_permutation(order.begin(), order.end()));
}

TEST_CASE("every flag is justified in the diagnostics") {
  const Network net = gas_turbine();
  auto engine = rng::make_engine(55, 0);
  for (int trial = 0; trial < 20; ++trial) {
    ReadingVector readings;
    for (const auto& var : net.variables())
      readings[var.id] = rng::next_index(engine, 3);
    std::vector<std::string> monitored;
    for (const auto& var : net.variables()) monitored.push_back(var.id);
    const FaultReport report =
        apparent_fault_set(net, readings, DetectionPolicy{}, monitored);
    IdSet flagged;
    for (const auto& check : report.checks) {
      if (!check.flagged) continue;
      flagged.insert(check.variable);
      CHECK((check.argmax_mismatch || check.low_confidence || check.degenerate));
    }
    CHECK(flagged == report.apparent_faults);
  }
}
