#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "rtms/cell_grid.hpp"
#include "rtms/chi_cell.hpp"
#include "rtms/stokes_cell.hpp"

namespace rtms {

// Effective transport coefficients of one unit cell at one instant.
struct EffectiveProps {
  Eigen::Matrix2d K = Eigen::Matrix2d::Zero();  // permeability
  Eigen::Matrix2d D = Eigen::Matrix2d::Zero();  // dispersion/diffusivity
  Eigen::Vector2d vbar = Eigen::Vector2d::Zero();
  double gamma = 0.0;  // interface perimeter per cell volume
  double lam = 0.0;    // pore volume fraction
};

// Flat component order used by files, the CSV schema and the surrogate:
// K11 K12 K22 D11 D12 D21 D22 vbar1 vbar2 gamma lambda
constexpr int kNumPropComponents = 11;
extern const std::array<const char*, kNumPropComponents> kPropComponentNames;

Eigen::Matrix<double, kNumPropComponents, 1> pack_props(const EffectiveProps& p);
EffectiveProps unpack_props(const Eigen::Matrix<double, kNumPropComponents, 1>& x);

// Permeability as the pore-weighted Gram matrix of the unit-solution
// velocity gradients (exactly symmetric and positive semidefinite).
Eigen::Matrix2d permeability_gram(const CellGrid& grid, const FlowSolution& flow);

EffectiveProps compute_effective_properties(const CellGrid& grid, const FlowSolution& flow,
                                            const ChiSolution& chi, double pe);

FlowSolution zero_flow(int n);

}  // namespace rtms
