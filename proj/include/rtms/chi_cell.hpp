#pragma once

#include <Eigen/Dense>
#include <array>

#include "rtms/cell_grid.hpp"
#include "rtms/stokes_cell.hpp"

namespace rtms {

// Solution of the drift-corrected cell transport problems, one scalar field
// per transport direction. chi fields are zero-mean over the pore phase
// (per connected pore component). Carries the advection field averages so
// downstream quadratures stay consistent with the solve.
struct ChiSolution {
  int n = 0;
  std::array<Eigen::ArrayXXd, 2> chi;
  Eigen::Vector2d vstar = Eigen::Vector2d::Zero();
  Eigen::Vector2d vbar = Eigen::Vector2d::Zero();
  Eigen::ArrayXXd ucell, vcell;  // cell-centered advection field
  Eigen::Vector2d fredholm = Eigen::Vector2d::Zero();
  int num_components = 0;
};

// Integral of the right-hand side (pore volume term plus interface source)
// that must vanish for solvability; one value per transport direction.
Eigen::Vector2d fredholm_residual(const CellGrid& grid, const PoreVelocity& vel,
                                  const Eigen::Vector2d& vstar, double pe);

// Finite-volume solve with upwinded flux-form advection on the pore weights;
// the interface no-flux condition enters through vanishing face weights.
// Throws a compatibility error if the Fredholm residual exceeds compat_tol.
ChiSolution solve_chi_cell(const CellGrid& grid, const PoreVelocity& vel,
                           const Eigen::Vector2d& vstar, double pe,
                           double compat_tol = 1e-8);

// chi mean over the pore phase (should vanish after normalization).
Eigen::Vector2d chi_pore_means(const CellGrid& grid, const ChiSolution& chi);

PoreVelocity zero_pore_velocity(int n);

}  // namespace rtms
