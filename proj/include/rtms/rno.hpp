#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rtms/cell_trajectory.hpp"
#include "rtms/mlp.hpp"
#include "rtms/normalizer.hpp"

namespace rtms {

struct RNOConfig {
  int k = 1;              // number of internal variables
  int hidden_layers = 4;
  int width = 64;
  std::string activation = "selu";
  int input_dim = 3;      // c0, v0x, v0y
  int output_dim = kNumPropComponents;

  void validate() const;
  bool operator==(const RNOConfig&) const = default;
};

// Two disjoint networks: f maps (input, xi) to the normalized outputs, g
// maps (input, xi) to the internal-variable rates. xi carries the state
// between steps; its initial value is the reference state of the starting
// microstructure.
struct RNOModel {
  RNOConfig config;
  Mlp f, g;
  Normalizer norm;
  Eigen::VectorXd xi0;
  std::map<std::string, std::string> meta;  // provenance (cell refs, seeds, dataset hash)

  int num_params() const { return f.num_params() + (config.k > 0 ? g.num_params() : 0); }
  double get_param(int idx) const;
  void set_param(int idx, double value);
};

RNOModel make_rno_model(const RNOConfig& config, std::uint64_t seed);

// One labeled example: an input history and the raw (unnormalized) property
// components at the same times.
struct LabeledTrajectory {
  Trajectory input;
  Eigen::MatrixXd target;  // output_dim x input.size()
};
using LabeledSet = std::vector<LabeledTrajectory>;

struct RnoStepResult {
  EffectiveProps props;
  Eigen::VectorXd xi;
  Eigen::VectorXd normalized;
};

RnoStepResult rno_step(const RNOModel& model, double c0, const Eigen::Vector2d& v0,
                       const Eigen::VectorXd& xi_prev, double dt);

struct RnoForwardResult {
  PropsSeries series;
  Eigen::MatrixXd normalized;  // output_dim x steps
  Eigen::VectorXd xi_final;
  long extrapolations = 0;  // normalized outputs outside [0, 1]
};

// Folds rno_step over the trajectory (backward-Euler recurrence in the
// internal variables; the first sample is the initial state readout).
RnoForwardResult rno_forward(const RNOModel& model, const Trajectory& traj,
                             const Eigen::VectorXd* xi_start = nullptr);

struct LossBreakdown {
  double loss = 0.0;
  int excluded = 0;  // trajectories with zero normalized-truth norm
};

// Relative L2-in-time squared error of normalized outputs, averaged over
// trajectories; trapezoid rule on the trajectory times.
LossBreakdown compute_loss(const RNOModel& model, const LabeledSet& set,
                           const std::vector<int>* subset = nullptr);

struct TrainHyper {
  int epochs = 2000;
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  int lr_decay_every = 0;  // 0: constant learning rate
  double lr_decay_factor = 0.5;
  double test_fraction = 0.2;
  std::uint64_t seed = 1;
  int jobs = 0;       // worker threads; results are jobs-independent
  int chunk = 48;     // trajectories per gradient chunk (fixed for determinism)
};

struct TrainResult {
  std::vector<double> train_loss, test_loss;  // one entry per epoch
  std::vector<int> train_indices, test_indices;
  bool diverged = false;
  int epochs_run = 0;
};

// Fits the normalizer on the training split, then minimizes compute_loss by
// backpropagation through time with Adam (full batch). Deterministic for a
// fixed seed regardless of the worker count.
TrainResult train(RNOModel& model, const LabeledSet& data, const TrainHyper& hyper);

// Max relative disagreement between the BPTT gradient and central finite
// differences over ncoords randomly chosen parameter coordinates.
double gradient_check(const RNOModel& model, const LabeledTrajectory& example, double epsilon,
                      int ncoords, std::uint64_t seed);

void write_loss_csv(const std::string& path, const TrainResult& result);

// Deterministic 80/20-style split by trajectory index.
void split_indices(int n, double test_fraction, std::uint64_t seed, std::vector<int>* train_idx,
                   std::vector<int>* test_idx);

}  // namespace rtms
