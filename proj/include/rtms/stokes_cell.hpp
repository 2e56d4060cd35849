#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <array>
#include <memory>

#include "rtms/cell_grid.hpp"

namespace rtms {

// Periodic MAC solution of the penalized cell Stokes problem, one field set
// per unit forcing direction. u[k](i,j) lives at (i h, (j+1/2) h),
// v[k](i,j) at ((i+1/2) h, j h), p[k](i,j) at cell centers.
struct FlowSolution {
  int n = 0;
  std::array<Eigen::ArrayXXd, 2> u, v, p;
  double nu = 1.0;
  double eta = 1e-8;       // penalization parameter (relative)
  double max_divergence = 0.0;
  double residual = 0.0;
};

// Reusable solver; the sparsity pattern depends only on the resolution, so
// repeated solves on an evolving geometry skip the symbolic analysis.
class StokesCellSolver {
public:
  StokesCellSolver() = default;

  FlowSolution solve(const CellGrid& grid, double nu = 1.0, double eta = 1e-8);

private:
  int n_ = -1;
  Eigen::SparseMatrix<double> mat_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Upper> ldlt_;
  bool analyzed_ = false;
};

FlowSolution solve_stokes_cell(const CellGrid& grid, double nu = 1.0, double eta = 1e-8);

// Pore-scale advection field: superposition of the unit-forcing solutions
// with weights chosen so the pore average of the field equals v0. Clogged
// directions (no achievable throughput) are dropped by a thresholded
// pseudo-inverse, which sends the corresponding component of vbar to zero.
struct PoreVelocity {
  int n = 0;
  Eigen::ArrayXXd u, v;          // combined MAC field
  Eigen::ArrayXXd ucell, vcell;  // cell-centered components
  Eigen::Vector2d vbar = Eigen::Vector2d::Zero();
  Eigen::Vector2d weights = Eigen::Vector2d::Zero();
  bool fully_clogged = false;
};

PoreVelocity compute_pore_velocity(const CellGrid& grid, const FlowSolution& flow,
                                   const Eigen::Vector2d& v0);

// Drift velocity: vstar = (pe / lambda) * integral of v over the pore phase,
// evaluated with the same cell weights the transport solver uses so the
// discrete compatibility condition holds exactly.
Eigen::Vector2d compute_drift_velocity(const CellGrid& grid, const PoreVelocity& vel, double pe);

}  // namespace rtms
