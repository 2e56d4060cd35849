#include "rtms/effective_props.hpp"

namespace rtms {

const std::array<const char*, kNumPropComponents> kPropComponentNames = {
    "K11", "K12", "K22", "D11", "D12", "D21", "D22", "vbar1", "vbar2", "gamma", "lambda"};

Eigen::Matrix<double, kNumPropComponents, 1> pack_props(const EffectiveProps& p) {
  Eigen::Matrix<double, kNumPropComponents, 1> x;
  x << p.K(0, 0), p.K(0, 1), p.K(1, 1), p.D(0, 0), p.D(0, 1), p.D(1, 0), p.D(1, 1),
      p.vbar(0), p.vbar(1), p.gamma, p.lam;
  return x;
}

EffectiveProps unpack_props(const Eigen::Matrix<double, kNumPropComponents, 1>& x) {
  EffectiveProps p;
  p.K << x(0), x(1), x(1), x(2);
  p.D << x(3), x(4), x(5), x(6);
  p.vbar << x(7), x(8);
  p.gamma = x(9);
  p.lam = x(10);
  return p;
}

FlowSolution zero_flow(int n) {
  FlowSolution f;
  f.n = n;
  for (int k = 0; k < 2; ++k) {
    f.u[k] = Eigen::ArrayXXd::Zero(n, n);
    f.v[k] = Eigen::ArrayXXd::Zero(n, n);
    f.p[k] = Eigen::ArrayXXd::Zero(n, n);
  }
  return f;
}

Eigen::Matrix2d permeability_gram(const CellGrid& grid, const FlowSolution& flow) {
  const int n = grid.n;
  const double h = grid.h();
  const double eps = grid.band_eps();
  const Eigen::ArrayXXd kc = pore_weights_cells(grid);
  const Eigen::ArrayXXd phic = phi_at_corners(grid);

  // Gradient samples: du/dx, dv/dy at cell centers; du/dy, dv/dx at corners.
  Eigen::Matrix2d K = Eigen::Matrix2d::Zero();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int ip = wrap(i + 1, n), jp = wrap(j + 1, n);
      const int im = wrap(i - 1, n), jm = wrap(j - 1, n);
      double gc[2][2];  // [solution k][du/dx, dv/dy]
      double gx[2][2];  // [solution k][du/dy, dv/dx]
      for (int k = 0; k < 2; ++k) {
        gc[k][0] = (flow.u[k](ip, j) - flow.u[k](i, j)) / h;
        gc[k][1] = (flow.v[k](i, jp) - flow.v[k](i, j)) / h;
        gx[k][0] = (flow.u[k](i, j) - flow.u[k](i, jm)) / h;
        gx[k][1] = (flow.v[k](i, j) - flow.v[k](im, j)) / h;
      }
      const double wc = kc(i, j) * h * h;
      const double wx = smoothed_heaviside(-phic(i, j), eps) * h * h;
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
          K(p, q) += wc * (gc[p][0] * gc[q][0] + gc[p][1] * gc[q][1]) +
                     wx * (gx[p][0] * gx[q][0] + gx[p][1] * gx[q][1]);
    }
  }
  return K;
}

EffectiveProps compute_effective_properties(const CellGrid& grid, const FlowSolution& flow,
                                            const ChiSolution& chi, double pe) {
  const int n = grid.n;
  const double h = grid.h();
  const Eigen::ArrayXXd kc = pore_weights_cells(grid);

  EffectiveProps props;
  props.K = permeability_gram(grid, flow);
  props.vbar = chi.vbar;
  props.gamma = specific_area(grid);
  props.lam = pore_fraction(grid);

  // Face part of the dispersion tensor: pore-weighted Gram of the total
  // transport gradients, accumulated per face orientation. Exactly symmetric
  // at pe = 0 by the variational structure of the solve.
  Eigen::Matrix2d D = Eigen::Matrix2d::Zero();
  const double cell = h * h;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int im = wrap(i - 1, n), jm = wrap(j - 1, n);
      const double kfx0 = kc(im, j), kfx1 = kc(i, j);
      const double kfx = (kfx0 <= 0.0 || kfx1 <= 0.0) ? 0.0 : 2.0 * kfx0 * kfx1 / (kfx0 + kfx1);
      const double kfy0 = kc(i, jm), kfy1 = kc(i, j);
      const double kfy = (kfy0 <= 0.0 || kfy1 <= 0.0) ? 0.0 : 2.0 * kfy0 * kfy1 / (kfy0 + kfy1);
      for (int c = 0; c < 2; ++c) {
        const double gx = (chi.chi[c](i, j) - chi.chi[c](im, j)) / h + (c == 0 ? 1.0 : 0.0);
        const double gy = (chi.chi[c](i, j) - chi.chi[c](i, jm)) / h + (c == 1 ? 1.0 : 0.0);
        D(0, c) += kfx * gx * cell;
        D(1, c) += kfy * gy * cell;
      }
    }
  }
  // Advective (dispersion) part.
  if (pe != 0.0) {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double w = kc(i, j) * cell;
        if (w == 0.0) continue;
        const double du = chi.vbar(0) - chi.ucell(i, j);
        const double dv = chi.vbar(1) - chi.vcell(i, j);
        for (int c = 0; c < 2; ++c) {
          D(0, c) += pe * w * du * chi.chi[c](i, j);
          D(1, c) += pe * w * dv * chi.chi[c](i, j);
        }
      }
  }
  props.D = D;
  return props;
}

}  // namespace rtms
