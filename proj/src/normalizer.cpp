#include "rtms/normalizer.hpp"

#include <cmath>
#include <limits>

#include "rtms/effective_props.hpp"

namespace rtms {

double Normalizer::transform(double x, int c) const {
  return log_mask[static_cast<std::size_t>(c)] ? std::log(std::max(x, kLogFloor)) : x;
}

double Normalizer::untransform(double y, int c) const {
  return log_mask[static_cast<std::size_t>(c)] ? std::exp(y) : y;
}

double Normalizer::normalize_component(double x, int c) const {
  const double span = hi(c) - lo(c);
  if (span <= 0.0) return 0.5;
  return (transform(x, c) - lo(c)) / span;
}

double Normalizer::denormalize_component(double y, int c) const {
  const double span = hi(c) - lo(c);
  const double t = span <= 0.0 ? lo(c) : lo(c) + y * span;
  return untransform(t, c);
}

Eigen::VectorXd Normalizer::normalize(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y(x.size());
  for (int c = 0; c < x.size(); ++c) y(c) = normalize_component(x(c), c);
  return y;
}

Eigen::VectorXd Normalizer::denormalize(const Eigen::VectorXd& y) const {
  Eigen::VectorXd x(y.size());
  for (int c = 0; c < y.size(); ++c) x(c) = denormalize_component(y(c), c);
  return x;
}

Eigen::MatrixXd Normalizer::normalize_cols(const Eigen::MatrixXd& X) const {
  Eigen::MatrixXd Y(X.rows(), X.cols());
  for (int j = 0; j < X.cols(); ++j)
    for (int c = 0; c < X.rows(); ++c) Y(c, j) = normalize_component(X(c, j), c);
  return Y;
}

std::vector<std::uint8_t> default_log_mask(int ncomp) {
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(ncomp), 0);
  if (ncomp == kNumPropComponents) {
    mask[0] = 1;  // K11
    mask[2] = 1;  // K22
  }
  return mask;
}

Normalizer fit_normalizer(const std::vector<Eigen::MatrixXd>& outputs,
                          std::vector<std::uint8_t> log_mask) {
  if (outputs.empty()) throw data_error("normalizer: empty dataset");
  const int ncomp = static_cast<int>(outputs.front().rows());
  Normalizer norm;
  norm.log_mask = log_mask.empty() ? default_log_mask(ncomp) : std::move(log_mask);
  if (static_cast<int>(norm.log_mask.size()) != ncomp)
    throw data_error("normalizer: log mask size mismatch");
  norm.lo = Eigen::VectorXd::Constant(ncomp, std::numeric_limits<double>::infinity());
  norm.hi = Eigen::VectorXd::Constant(ncomp, -std::numeric_limits<double>::infinity());
  for (const auto& mat : outputs) {
    if (mat.rows() != ncomp) throw data_error("normalizer: inconsistent component count");
    for (int j = 0; j < mat.cols(); ++j)
      for (int c = 0; c < ncomp; ++c) {
        const double x = mat(c, j);
        if (!std::isfinite(x)) throw data_error("normalizer: non-finite value in dataset");
        const double t = norm.transform(x, c);
        norm.lo(c) = std::min(norm.lo(c), t);
        norm.hi(c) = std::max(norm.hi(c), t);
      }
  }
  norm.fitted = true;
  return norm;
}

}  // namespace rtms
