#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "mbsv/blankets.hpp"
#include "mbsv/model_io.hpp"
#include "test_util.hpp"

using namespace mbsv;
using nlohmann::json;

TEST_CASE("builtin turbine tree has the documented shape") {
  const Network net = load_model("builtin:fig1-binary");
  CHECK(net.size() == 4);
  CHECK(net.name() == "fig1-binary");
  const std::vector<Edge> expected = {{"m", "t"}, {"m", "p"}, {"t", "g"}};
  CHECK(net.edges() == expected);
  CHECK(net.cpt_of("m").table == std::vector<std::vector<double>>{{0.5, 0.5}});
  CHECK(net.cpt_of("t").table[0][0] == doctest::Approx(0.95));
  CHECK(net.cpt_of("t").table[0][1] == doctest::Approx(0.05));
  CHECK(net.cpt_of("t").table[1][1] == doctest::Approx(0.95));
}

TEST_CASE("builtin gas turbine reproduces the reference blanket table") {
  // The DAG is only implied by its blankets; rebuilding the blanket column
  // from the edge list is the verification that the edges are right.
  const Network net = load_model("builtin:gas-turbine");
  CHECK(net.size() == 11);
  const BlanketSets table = emb_table(net);
  CHECK(table.at("T").blanket == IdSet{"t1", "t2", "t3"});
  CHECK(table.at("t1").blanket == IdSet{"T", "t2", "t3", "f1", "f2"});
  CHECK(table.at("f1").blanket == IdSet{"t1", "t2", "t3", "ps", "pr"});
  CHECK(table.at("ps").blanket == IdSet{"f1"});
  CHECK(table.at("da").blanket == IdSet{"pa"});

  // roots and channel noise
  CHECK(net.cpt_of("t1").table ==
        std::vector<std::vector<double>>{{0.2, 0.6, 0.2}});
  CHECK(net.cpt_of("ps").table[0][0] == doctest::Approx(0.98));
  // multi-parent target is the rounded mean: parents (low, low, normal) -> low
  std::vector<int> state(net.size(), 0);
  state[net.index_of("t3")] = 1;
  CHECK(net.cpt_entry(net.index_of("T"), 0, state) == doctest::Approx(0.98));
  // parents (low, normal, high) -> normal, off-target mass splits equally
  state[net.index_of("t2")] = 1;
  state[net.index_of("t3")] = 2;
  CHECK(net.cpt_entry(net.index_of("T"), 1, state) == doctest::Approx(0.98));
  CHECK(net.cpt_entry(net.index_of("T"), 0, state) == doctest::Approx(0.01));
}

TEST_CASE("unknown builtin name is a parse error") {
  CHECK_THROWS_AS(load_model("builtin:nope"), ParseError);
  CHECK_THROWS_AS(load_model("/no/such/file.json"), ParseError);
}

TEST_CASE("model files round-trip to an equivalent network") {
  auto engine = rng::make_engine(5150, 0);
  const auto roundtrip = [](const Network& net) {
    const json doc = model_to_json(net);
    const Network back = parse_model(doc);
    REQUIRE(back.size() == net.size());
    for (const auto& var : net.variables()) {
      CHECK(back.variable(var.id).states == var.states);
      const Cpt& ca = net.cpt_of(var.id);
      const Cpt& cb = back.cpt_of(var.id);
      CHECK(ca.parents == cb.parents);
      REQUIRE(ca.table.size() == cb.table.size());
      for (std::size_t r = 0; r < ca.table.size(); ++r)
        for (std::size_t k = 0; k < ca.table[r].size(); ++k)
          CHECK(std::abs(ca.table[r][k] - cb.table[r][k]) <= 1e-12);
    }
    std::set<Edge> ea(net.edges().begin(), net.edges().end());
    std::set<Edge> eb(back.edges().begin(), back.edges().end());
    CHECK(ea == eb);
    // and a second pass parses to the same document
    CHECK(model_to_json(back) == model_to_json(net));
  };
  roundtrip(fig1_binary());
  roundtrip(gas_turbine());
  for (int trial = 0; trial < 5; ++trial)
    roundtrip(testutil::random_network(engine, 8, 3));
}

TEST_CASE("malformed CPT rows are reported with their position") {
  json doc = model_to_json(fig1_binary());
  doc["cpts"][1]["table"][1] = {0.85, 0.05};  // sums to 0.9
  try {
    parse_model(doc);
    FAIL("expected BadRowSumError");
  } catch (const BadRowSumError& e) {
    CHECK(e.child() == "t");
    CHECK(e.row() == 1);
  }
}

TEST_CASE("readings parse against the model's state names") {
  const Network net = fig1_binary();

  SUBCASE("single object") {
    const auto batches = parse_readings(
        json{{"m", "low"}, {"t", "high"}, {"p", "low"}, {"g", "low"}}, net);
    REQUIRE(batches.size() == 1);
    CHECK(batches[0].at("t") == 1);
    CHECK(batches[0].at("m") == 0);
  }
  SUBCASE("batch list") {
    const auto batches = parse_readings(
        json::array({{{"m", "low"}}, {{"m", "high"}}}), net);
    REQUIRE(batches.size() == 2);
    CHECK(batches[1].at("m") == 1);
  }
  SUBCASE("unknown state name") {
    CHECK_THROWS_AS(parse_readings(json{{"m", "warm"}}, net), ParseError);
  }
  SUBCASE("unknown variable") {
    CHECK_THROWS_AS(parse_readings(json{{"q", "low"}}, net), UnknownIdError);
  }
}

TEST_CASE("files load through the filesystem path") {
  const Network net = fig1_binary();
  const std::string model_path = "mbsv_test_model.json";
  const std::string readings_path = "mbsv_test_readings.json";
  {
    std::ofstream out(model_path);
    out << model_to_json(net).dump();
    std::ofstream rout(readings_path);
    rout << json{{"m", "low"}, {"t", "low"}, {"p", "low"}, {"g", "low"}}.dump();
  }
  const Network loaded = load_model(model_path);
  CHECK(loaded.size() == 4);
  const auto batches = load_readings(readings_path, loaded);
  CHECK(batches.size() == 1);
  std::remove(model_path.c_str());
  std::remove(readings_path.c_str());

  std::ofstream bad("mbsv_test_bad.json");
  bad << "{ not json";
  bad.close();
  CHECK_THROWS_AS(load_model("mbsv_test_bad.json"), ParseError);
  std::remove("mbsv_test_bad.json");
}
