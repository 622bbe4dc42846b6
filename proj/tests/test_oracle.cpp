#include <gtest/gtest.h>

#include "globus/ingest.hpp"
#include "globus/turnover.hpp"
#include "globus_oracle/oracle.hpp"
#include "globus_test/fixtures.hpp"
#include "globus_test/random_dataset.hpp"

using namespace globus;
using globus::testing::flows_close;

namespace {

void expect_same_flows(const std::vector<FlowRecord>& engine, const std::vector<FlowRecord>& ref,
                       const std::string& label) {
  ASSERT_EQ(engine.size(), ref.size()) << label;
  for (std::size_t i = 0; i < engine.size(); ++i) {
    const auto& a = engine[i];
    const auto& b = ref[i];
    ASSERT_EQ(a.economy, b.economy) << label;
    ASSERT_EQ(a.btype, b.btype) << label;
    ASSERT_EQ(a.year, b.year) << label;
    for (auto [x, y, name] : {std::tuple{a.bs, b.bs, "bs"}, {a.nb, b.nb, "nb"}, {a.db, b.db, "db"},
                              {a.rb, b.rb, "rb"}, {a.drb, b.drb, "drb"}, {a.bs_nr, b.bs_nr, "bs_nr"}})
      ASSERT_TRUE(flows_close(x, y)) << label << " " << a.economy.code << "/" << to_string(a.btype)
                                     << " " << a.year << " " << name << ": " << x << " vs " << y;
  }
}

}  // namespace

TEST(Oracle, HandExample) {
  oracle::CellInput in;
  in.horizon = {2019, 2020};
  in.nr = {100, 100};
  in.rates = {0, 0};
  in.mean_lifetime = 50;
  in.shape = 1;
  const auto flows = oracle::simulate(in, {{1970, std::nullopt, 100.0}});
  ASSERT_EQ(flows.size(), 2u);
  EXPECT_NEAR(flows[1].db, 1.9801, 1e-4);
  EXPECT_DOUBLE_EQ(flows[1].nb, flows[1].db);
}

TEST(Oracle, NoRenovationMatchesProjection) {
  const Dataset d = load_dataset(globus::testing::toy_config());
  const auto recs = oracle::oracle_run(d, ScenarioId::no_renovation());
  std::size_t i = 0;
  for (const auto& c : d.cells()) {
    const auto nr = project_nr(d, c);
    for (Year t = d.horizon().start_year; t <= d.horizon().end_year; ++t, ++i) {
      EXPECT_EQ(recs[i].rb, 0.0);
      EXPECT_TRUE(flows_close(recs[i].bs, nr.at(t)));
    }
  }
}

TEST(Oracle, ToyFixtureMatchesEngine) {
  const Dataset d = load_dataset(globus::testing::toy_config());
  for (const auto& s : d.scenarios())
    expect_same_flows(run_scenario(d, s), oracle::oracle_run(d, s), "toy " + s.name());
}

TEST(Oracle, RandomDatasetsMatchEngine) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Dataset d = globus::testing::random_dataset(seed);
    for (const auto& s : d.scenarios())
      expect_same_flows(run_scenario(d, s), oracle::oracle_run(d, s),
                        "seed " + std::to_string(seed) + " " + s.name());
  }
}

TEST(Oracle, StrictModeAgreesOnFailure) {
  auto in = globus::testing::random_inputs(3);
  in.options.clamp_mode = ClampMode::Strict;
  auto& pop = in.population.front().values;
  pop.clear();
  pop[in.horizon.start_year] = 1e8;
  pop[in.horizon.end_year] = 1e6;
  const Dataset d = build_dataset(in);
  EXPECT_THROW(run_scenario(d, ScenarioId("BAU")), Error);
  EXPECT_THROW(oracle::oracle_run(d, ScenarioId("BAU")), std::exception);
}
