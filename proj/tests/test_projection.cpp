#include <gtest/gtest.h>

#include "globus/ingest.hpp"
#include "globus/projection.hpp"
#include "globus_test/fixtures.hpp"
#include "globus_test/random_dataset.hpp"

using namespace globus;

namespace {

const Dataset& global_dataset() {
  static const Dataset d = load_dataset(globus::testing::global_config());
  return d;
}

NrTrajectory trajectory(std::vector<double> stock, Year start = 2020) {
  NrTrajectory t;
  t.economy = EconomyId("X");
  t.horizon = {start, start + static_cast<int>(stock.size()) - 1};
  t.stock = std::move(stock);
  return t;
}

double total_2070(const std::string& code) {
  const Dataset& d = global_dataset();
  double sum = 0;
  for (auto bt : kBuildingTypes) sum += project_nr(d, d.economy(code), bt).at(2070);
  return sum;
}

}  // namespace

TEST(Projection, UnitConversion) { EXPECT_DOUBLE_EQ(floorspace_mm2(50, 10'000'000), 500.0); }

TEST(Projection, StockIsProductOfInputs) {
  const Dataset& d = global_dataset();
  for (const auto& c : d.cells()) {
    const auto traj = project_nr(d, c);
    for (Year t = 2000; t <= 2070; ++t) {
      const double expected = d.per_capita(c, t) * d.population(c.economy.code, t) / 1e6;
      ASSERT_EQ(traj.at(t), expected);
      ASSERT_GT(traj.at(t), 0);
    }
  }
}

TEST(Projection, IndiaResidential2070) {
  const Dataset& d = global_dataset();
  const double v = project_nr(d, d.economy("IND"), BuildingType::Residential).at(2070);
  EXPECT_NEAR(v, 89.4e3 * 0.923, 89.4e3 * 0.923 * 0.005);
}

TEST(Projection, ChinaTotal2070) { EXPECT_NEAR(total_2070("CHN"), 81000.0, 81000.0 * 0.005); }

TEST(Projection, IndiaAfricaGrowthRate) {
  const Dataset& d = global_dataset();
  double start = 0, end = 0;
  for (const char* code : {"IND", "AFR"})
    for (auto bt : kBuildingTypes) {
      const auto traj = project_nr(d, d.economy(code), bt);
      start += traj.at(2000);
      end += traj.at(2070);
    }
  const double rate = std::pow(end / start, 1.0 / 70) - 1;
  EXPECT_NEAR(rate, 0.030, 0.002);
}

TEST(StockDelta, SignedDifferences) {
  EXPECT_DOUBLE_EQ(stock_delta(trajectory({100, 103}), 2021), 3.0);
  EXPECT_DOUBLE_EQ(stock_delta(trajectory({100, 97}), 2021), -3.0);
  EXPECT_DOUBLE_EQ(stock_delta(trajectory({100, 100, 100}), 2022), 0.0);
}

TEST(StockDelta, HorizonStartIsOutOfRange) {
  try {
    stock_delta(trajectory({100, 103}), 2020);
    FAIL() << "expected YearOutOfRange";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::YearOutOfRange);
  }
  EXPECT_THROW(trajectory({1, 2}).at(2030), Error);
}

TEST(Projection, PopulationScalingIsMultiplicative) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Dataset d = globus::testing::random_dataset(seed);
    for (double k : {0.5, 2.0, 3.0}) {
      const Dataset scaled = d.with_population_scaled(k);
      for (const auto& c : d.cells()) {
        const auto a = project_nr(d, c), b = project_nr(scaled, c);
        for (std::size_t i = 0; i < a.stock.size(); ++i)
          ASSERT_NEAR(b.stock[i], k * a.stock[i], 1e-12 * k * a.stock[i]);
      }
    }
  }
}
