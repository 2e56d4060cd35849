#pragma once

#include <Eigen/Dense>
#include <random>
#include <string>
#include <vector>

#include "rtms/common.hpp"

namespace rtms {

enum class Activation { Selu, Tanh, Linear };

Activation activation_from_name(const std::string& name);
std::string activation_name(Activation a);

struct MlpGrads {
  std::vector<Eigen::MatrixXd> dW;
  std::vector<Eigen::VectorXd> db;

  void set_zero();
  void accumulate(const MlpGrads& other);
};

// Small fully connected network with a linear output layer. Batched
// evaluation treats matrix columns as samples. The backward pass needs the
// per-layer inputs collected by forward().
struct Mlp {
  Activation act = Activation::Selu;
  std::vector<Eigen::MatrixXd> W;  // W[l] is (out x in)
  std::vector<Eigen::VectorXd> b;

  static Mlp make(int in_dim, int out_dim, int hidden_layers, int width, Activation act,
                  std::mt19937_64& rng);

  int input_dim() const { return W.empty() ? 0 : static_cast<int>(W.front().cols()); }
  int output_dim() const { return W.empty() ? 0 : static_cast<int>(W.back().rows()); }
  int num_layers() const { return static_cast<int>(W.size()); }

  Eigen::MatrixXd forward(const Eigen::MatrixXd& X,
                          std::vector<Eigen::MatrixXd>* cache = nullptr) const;
  // dY is the loss gradient w.r.t. the output; returns the gradient w.r.t.
  // the input and accumulates parameter gradients.
  Eigen::MatrixXd backward(const Eigen::MatrixXd& dY, const std::vector<Eigen::MatrixXd>& cache,
                           MlpGrads& grads) const;

  MlpGrads zero_grads() const;

  // Flat parameter view (layer by layer, W column-major then b).
  int num_params() const;
  double get_param(int idx) const;
  void set_param(int idx, double value);
};

}  // namespace rtms
