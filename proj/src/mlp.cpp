#include "rtms/mlp.hpp"

#include <cmath>

namespace rtms {

namespace {
constexpr double kSeluLambda = 1.0507009873554804934193349852946;
constexpr double kSeluAlpha = 1.6732632423543772848170429916717;

inline double act_apply(Activation a, double z) {
  switch (a) {
    case Activation::Selu:
      return z > 0.0 ? kSeluLambda * z : kSeluLambda * kSeluAlpha * (std::exp(z) - 1.0);
    case Activation::Tanh:
      return std::tanh(z);
    case Activation::Linear:
      return z;
  }
  return z;
}

// Derivative expressed through the activation output.
inline double act_deriv_from_output(Activation a, double y) {
  switch (a) {
    case Activation::Selu:
      return y > 0.0 ? kSeluLambda : y + kSeluLambda * kSeluAlpha;
    case Activation::Tanh:
      return 1.0 - y * y;
    case Activation::Linear:
      return 1.0;
  }
  return 1.0;
}
}  // namespace

Activation activation_from_name(const std::string& name) {
  if (name == "selu") return Activation::Selu;
  if (name == "tanh") return Activation::Tanh;
  if (name == "linear") return Activation::Linear;
  throw config_error("unknown activation '" + name + "' (expected selu, tanh or linear)");
}

std::string activation_name(Activation a) {
  switch (a) {
    case Activation::Selu: return "selu";
    case Activation::Tanh: return "tanh";
    case Activation::Linear: return "linear";
  }
  return "selu";
}

void MlpGrads::set_zero() {
  for (auto& m : dW) m.setZero();
  for (auto& v : db) v.setZero();
}

void MlpGrads::accumulate(const MlpGrads& other) {
  for (std::size_t l = 0; l < dW.size(); ++l) {
    dW[l] += other.dW[l];
    db[l] += other.db[l];
  }
}

Mlp Mlp::make(int in_dim, int out_dim, int hidden_layers, int width, Activation act,
              std::mt19937_64& rng) {
  if (in_dim < 1 || out_dim < 1 || hidden_layers < 0 || width < 1)
    throw config_error("mlp: invalid architecture");
  Mlp net;
  net.act = act;
  std::vector<int> dims;
  dims.push_back(in_dim);
  for (int l = 0; l < hidden_layers; ++l) dims.push_back(width);
  dims.push_back(out_dim);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const int rows = dims[l + 1], cols = dims[l];
    Eigen::MatrixXd Wl(rows, cols);
    const double scale = 1.0 / std::sqrt(static_cast<double>(cols));  // LeCun normal
    for (int c = 0; c < cols; ++c)
      for (int r = 0; r < rows; ++r) Wl(r, c) = scale * gauss(rng);
    net.W.push_back(std::move(Wl));
    net.b.push_back(Eigen::VectorXd::Zero(rows));
  }
  return net;
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& X, std::vector<Eigen::MatrixXd>* cache) const {
  if (cache) {
    cache->clear();
    cache->reserve(W.size());
  }
  Eigen::MatrixXd A = X;
  const int L = num_layers();
  for (int l = 0; l < L; ++l) {
    if (cache) cache->push_back(A);
    Eigen::MatrixXd Z = (W[static_cast<std::size_t>(l)] * A).colwise() + b[static_cast<std::size_t>(l)];
    if (l + 1 < L)
      A = Z.unaryExpr([this](double z) { return act_apply(act, z); });
    else
      A = std::move(Z);
  }
  return A;
}

Eigen::MatrixXd Mlp::backward(const Eigen::MatrixXd& dY, const std::vector<Eigen::MatrixXd>& cache,
                              MlpGrads& grads) const {
  const int L = num_layers();
  Eigen::MatrixXd dZ = dY;  // output layer is linear
  for (int l = L - 1; l >= 1; --l) {
    const Eigen::MatrixXd& A = cache[static_cast<std::size_t>(l)];
    grads.dW[static_cast<std::size_t>(l)].noalias() += dZ * A.transpose();
    grads.db[static_cast<std::size_t>(l)] += dZ.rowwise().sum();
    Eigen::MatrixXd dA = W[static_cast<std::size_t>(l)].transpose() * dZ;
    // cache[l] holds the activated output of layer l-1
    dZ = dA.cwiseProduct(A.unaryExpr([this](double y) { return act_deriv_from_output(act, y); }));
  }
  grads.dW[0].noalias() += dZ * cache[0].transpose();
  grads.db[0] += dZ.rowwise().sum();
  return W[0].transpose() * dZ;
}

MlpGrads Mlp::zero_grads() const {
  MlpGrads g;
  for (std::size_t l = 0; l < W.size(); ++l) {
    g.dW.push_back(Eigen::MatrixXd::Zero(W[l].rows(), W[l].cols()));
    g.db.push_back(Eigen::VectorXd::Zero(b[l].size()));
  }
  return g;
}

int Mlp::num_params() const {
  int n = 0;
  for (std::size_t l = 0; l < W.size(); ++l) n += static_cast<int>(W[l].size() + b[l].size());
  return n;
}

double Mlp::get_param(int idx) const {
  for (std::size_t l = 0; l < W.size(); ++l) {
    if (idx < W[l].size()) return W[l](idx);
    idx -= static_cast<int>(W[l].size());
    if (idx < b[l].size()) return b[l](idx);
    idx -= static_cast<int>(b[l].size());
  }
  throw config_error("mlp: parameter index out of range");
}

void Mlp::set_param(int idx, double value) {
  for (std::size_t l = 0; l < W.size(); ++l) {
    if (idx < W[l].size()) {
      W[l](idx) = value;
      return;
    }
    idx -= static_cast<int>(W[l].size());
    if (idx < b[l].size()) {
      b[l](idx) = value;
      return;
    }
    idx -= static_cast<int>(b[l].size());
  }
  throw config_error("mlp: parameter index out of range");
}

}  // namespace rtms
