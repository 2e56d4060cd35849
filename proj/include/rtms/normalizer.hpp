#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "rtms/common.hpp"

namespace rtms {

// Per-component min-max normalizer over property components. Permeability
// diagonals are log-transformed (floored at kLogFloor so clogged states stay
// finite). The affine map extrapolates outside [min, max] rather than
// clamping. Components that are constant over the fit set map to 0.5.
struct Normalizer {
  Eigen::VectorXd lo, hi;           // bounds in transformed space
  std::vector<std::uint8_t> log_mask;
  bool fitted = false;

  static constexpr double kLogFloor = 1e-12;

  int size() const { return static_cast<int>(lo.size()); }

  double transform(double x, int c) const;
  double untransform(double y, int c) const;

  double normalize_component(double x, int c) const;
  double denormalize_component(double y, int c) const;

  Eigen::VectorXd normalize(const Eigen::VectorXd& x) const;
  Eigen::VectorXd denormalize(const Eigen::VectorXd& y) const;
  // column-wise over an (ncomp x m) matrix
  Eigen::MatrixXd normalize_cols(const Eigen::MatrixXd& X) const;
};

// Default mask for the property vector: log on K11 and K22.
std::vector<std::uint8_t> default_log_mask(int ncomp);

// Global per-component min/max over every column of every matrix in the set.
Normalizer fit_normalizer(const std::vector<Eigen::MatrixXd>& outputs,
                          std::vector<std::uint8_t> log_mask = {});

}  // namespace rtms
