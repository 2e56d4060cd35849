#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "rtms/cell_grid.hpp"
#include "rtms/effective_props.hpp"

namespace rtms {

// Interface reaction law. rate(c) must vanish at c_eq and share the sign of
// c - c_eq (positive: deposition, negative: dissolution).
struct Kinetics {
  double c_eq = 0.5;
  double m = 1.0;           // solid-phase concentration
  double rate_coeff = 1.0;  // linear law coefficient
  std::function<double(double)> rate;  // optional override of the linear law

  double q(double c) const { return rate ? rate(c) : rate_coeff * (c - c_eq); }
};

// Macroscopic input history driving one unit cell.
struct Trajectory {
  Eigen::ArrayXd times;                           // strictly increasing, times[0] = 0
  Eigen::ArrayXd c0;                              // concentration in [0, 1]
  Eigen::Array<double, Eigen::Dynamic, 2> v0;     // macroscopic velocity

  int size() const { return static_cast<int>(times.size()); }
  void validate() const;
};

struct PropsSeries {
  Eigen::ArrayXd times;
  std::vector<EffectiveProps> props;

  // kNumPropComponents x size matrix of packed components.
  Eigen::MatrixXd packed() const;
};

struct CellConfig {
  double pe_hat = 1.0;   // cell-reference Peclet multiplying the advection field
  double da_hat = 1.0;   // cell-reference Damkohler scaling the interface speed
  double nu = 1.0;
  double eta = 1e-8;     // Brinkman penalization
  Kinetics kinetics;
  double cfl_fraction = 0.45;
  double reinit_band_tol = 0.1;
  double clog_threshold = 1e-8;
  double compat_tol = 1e-8;
};

// Advances the interface with the uniform normal speed (da/m) q(c0) over dt.
// Rejects steps larger than one grid spacing; callers sub-step.
CellGrid evolve_interface(const CellGrid& grid, double c0, double dt, const Kinetics& kin,
                          double da, double reinit_band_tol = 0.1);

// Ground-truth solution operator: solves flow and transport on the evolving
// microstructure at every trajectory time and returns the property series.
PropsSeries run_cell_trajectory(const CellGrid& grid0, const Trajectory& traj,
                                const CellConfig& cfg);

void write_props_series_csv(const std::string& path, const PropsSeries& series);
PropsSeries read_props_series_csv(const std::string& path);
Trajectory read_trajectory_csv(const std::string& path);
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

}  // namespace rtms
