#pragma once

#include <vector>

#include "globus/dataset.hpp"
#include "globus/domain.hpp"
#include "globus/error.hpp"

namespace globus {

/// No-renovation stock of one cell: per-capita floorspace times population,
/// in Mm², for every horizon year.
struct NrTrajectory {
  EconomyId economy;
  BuildingType btype = BuildingType::Residential;
  Horizon horizon;
  std::vector<FloorArea> stock;  // indexed by year - horizon.start_year

  FloorArea at(Year t) const {
    if (!horizon.contains(t))
      throw Error(ErrorKind::YearOutOfRange,
                  "year " + std::to_string(t) + " outside horizon " +
                      std::to_string(horizon.start_year) + "-" + std::to_string(horizon.end_year));
    return stock[horizon.index(t)];
  }
};

/// m²/person × persons → Mm².
inline FloorArea floorspace_mm2(double m2_per_capita, double persons) {
  return m2_per_capita * persons / 1e6;
}

inline NrTrajectory project_nr(const Dataset& dataset, const Cell& cell) {
  const Horizon& h = dataset.horizon();
  NrTrajectory traj{cell.economy, cell.btype, h, std::vector<FloorArea>(h.size())};
  for (Year t = h.start_year; t <= h.end_year; ++t)
    traj.stock[h.index(t)] =
        floorspace_mm2(dataset.per_capita(cell, t), dataset.population(cell.economy.code, t));
  return traj;
}

inline NrTrajectory project_nr(const Dataset& dataset, const EconomyId& economy,
                               BuildingType btype) {
  return project_nr(dataset, Cell{economy, btype});
}

/// stock(t) - stock(t-1); negative when the stock shrinks.
inline double stock_delta(const NrTrajectory& traj, Year t) {
  if (t <= traj.horizon.start_year || t > traj.horizon.end_year)
    throw Error(ErrorKind::YearOutOfRange,
                "stock_delta needs start < t <= end, got t=" + std::to_string(t));
  return traj.at(t) - traj.at(t - 1);
}

}  // namespace globus
