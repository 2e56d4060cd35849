#include "rtms/stokes_cell.hpp"

#include <cmath>
#include <vector>

#include "rtms/effective_props.hpp"

namespace rtms {

namespace {

inline int uid(int i, int j, int n) { return i + n * j; }
inline int vid(int i, int j, int n) { return n * n + i + n * j; }
inline int pid(int i, int j, int n) { return 2 * n * n + i + n * j; }

}  // namespace

FlowSolution StokesCellSolver::solve(const CellGrid& grid, double nu, double eta) {
  const int n = grid.n;
  const double h = grid.h();
  const int nn = n * n;
  const int dim = 3 * nn;

  // Sharp penalization masks at face centers.
  Eigen::ArrayXXd phiu(n, n), phiv(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      phiu(i, j) = 0.5 * (grid.phi(wrap(i - 1, n), j) + grid.phi(i, j));
      phiv(i, j) = 0.5 * (grid.phi(i, wrap(j - 1, n)) + grid.phi(i, j));
    }
  int masked = 0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) masked += (phiu(i, j) >= 0.0) + (phiv(i, j) >= 0.0);
  if (masked == 0)
    throw solver_error("stokes: degenerate geometry, cell has no solid phase to anchor the flow (pore fraction 1)");

  const double visc = nu / (h * h);
  const double sigma = 1.0 / eta;
  // Tiny pressure regularization makes the saddle system symmetric
  // quasi-definite, so an LDLT factorization exists for any ordering.
  const double preg = 1e-10;

  // Symmetric form: [A G; G^T -preg I], with A the penalized vector
  // Laplacian and G the discrete pressure gradient. Only the upper triangle
  // is assembled.
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(8 * nn));
  const auto push_sym = [&](int r, int c, double v) {
    if (r <= c) trip.emplace_back(r, c, v);
  };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      // u momentum
      {
        const int r = uid(i, j, n);
        const double pen = (phiu(i, j) >= 0.0) ? sigma : 0.0;
        push_sym(r, r, 4.0 * visc + pen);
        push_sym(r, uid(wrap(i + 1, n), j, n), -visc);
        push_sym(r, uid(wrap(i - 1, n), j, n), -visc);
        push_sym(r, uid(i, wrap(j + 1, n), n), -visc);
        push_sym(r, uid(i, wrap(j - 1, n), n), -visc);
        push_sym(r, pid(i, j, n), 1.0 / h);
        push_sym(r, pid(wrap(i - 1, n), j, n), -1.0 / h);
      }
      // v momentum
      {
        const int r = vid(i, j, n);
        const double pen = (phiv(i, j) >= 0.0) ? sigma : 0.0;
        push_sym(r, r, 4.0 * visc + pen);
        push_sym(r, vid(wrap(i + 1, n), j, n), -visc);
        push_sym(r, vid(wrap(i - 1, n), j, n), -visc);
        push_sym(r, vid(i, wrap(j + 1, n), n), -visc);
        push_sym(r, vid(i, wrap(j - 1, n), n), -visc);
        push_sym(r, pid(i, j, n), 1.0 / h);
        push_sym(r, pid(i, wrap(j - 1, n), n), -1.0 / h);
      }
      // negated continuity (keeps the matrix symmetric)
      push_sym(pid(i, j, n), pid(i, j, n), -preg);
    }
  }

  if (n_ != n) {
    mat_.resize(dim, dim);
    n_ = n;
    analyzed_ = false;
  }
  mat_.setFromTriplets(trip.begin(), trip.end());
  if (!analyzed_) {
    ldlt_.analyzePattern(mat_);
    analyzed_ = true;
  }
  ldlt_.factorize(mat_);
  if (ldlt_.info() != Eigen::Success) throw solver_error("stokes: factorization failed");

  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(dim, 2);
  rhs.block(0, 0, nn, 1).setOnes();       // unit forcing along x
  rhs.block(nn, 1, nn, 1).setOnes();      // unit forcing along y
  Eigen::MatrixXd sol = ldlt_.solve(rhs);
  // One step of iterative refinement sharpens the divergence residual.
  sol += ldlt_.solve(rhs - (mat_.selfadjointView<Eigen::Upper>() * sol).eval());

  const double resid = ((mat_.selfadjointView<Eigen::Upper>() * sol).eval() - rhs).cwiseAbs().maxCoeff() /
                       std::max(1.0, sigma);
  if (!std::isfinite(resid) || resid > 1e-7)
    throw solver_error("stokes: solve did not converge, relative residual " + std::to_string(resid));

  FlowSolution flow;
  flow.n = n;
  flow.nu = nu;
  flow.eta = eta;
  flow.residual = resid;
  double maxdiv = 0.0;
  for (int k = 0; k < 2; ++k) {
    flow.u[k].resize(n, n);
    flow.v[k].resize(n, n);
    flow.p[k].resize(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        flow.u[k](i, j) = sol(uid(i, j, n), k);
        flow.v[k](i, j) = sol(vid(i, j, n), k);
        flow.p[k](i, j) = sol(pid(i, j, n), k);
      }
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double div = (flow.u[k](wrap(i + 1, n), j) - flow.u[k](i, j) +
                            flow.v[k](i, wrap(j + 1, n)) - flow.v[k](i, j)) / h;
        maxdiv = std::max(maxdiv, std::abs(div));
      }
  }
  flow.max_divergence = maxdiv;
  if (maxdiv > 1e-8)
    throw solver_error("stokes: divergence residual " + std::to_string(maxdiv) + " above tolerance");
  return flow;
}

FlowSolution solve_stokes_cell(const CellGrid& grid, double nu, double eta) {
  StokesCellSolver solver;
  return solver.solve(grid, nu, eta);
}

PoreVelocity compute_pore_velocity(const CellGrid& grid, const FlowSolution& flow,
                                   const Eigen::Vector2d& v0) {
  const int n = grid.n;
  const Eigen::ArrayXXd kappa = pore_weights_cells(grid);
  const double wsum = kappa.sum();
  if (wsum <= 0.0) throw solver_error("pore velocity: empty pore phase");

  // Pore averages of the two unit-forcing solutions (cell-centered values).
  Eigen::Matrix2d avg = Eigen::Matrix2d::Zero();
  std::array<Eigen::ArrayXXd, 2> uc, vc;
  for (int k = 0; k < 2; ++k) {
    uc[k].resize(n, n);
    vc[k].resize(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        uc[k](i, j) = 0.5 * (flow.u[k](i, j) + flow.u[k](wrap(i + 1, n), j));
        vc[k](i, j) = 0.5 * (flow.v[k](i, j) + flow.v[k](i, wrap(j + 1, n)));
      }
    avg(0, k) = (kappa * uc[k]).sum() / wsum;
    avg(1, k) = (kappa * vc[k]).sum() / wsum;
  }

  // Clogging is decided by throughput, not by the velocity averages: sealed
  // pockets recirculate and leave avg nonzero at zero permeability. The
  // weight system is restricted to the open eigendirections of K (those with
  // eigenvalue above the clogging threshold), a pseudo-inverse of avg.
  const double clog_threshold = 1e-8;
  const Eigen::Matrix2d K = permeability_gram(grid, flow);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> keig(K);
  std::vector<int> open;
  for (int k = 0; k < 2; ++k)
    if (keig.eigenvalues()(k) >= clog_threshold) open.push_back(k);

  PoreVelocity vel;
  vel.n = n;
  if (open.empty()) {
    vel.fully_clogged = true;
    vel.weights.setZero();
    vel.u = Eigen::ArrayXXd::Zero(n, n);
    vel.v = Eigen::ArrayXXd::Zero(n, n);
    vel.ucell = Eigen::ArrayXXd::Zero(n, n);
    vel.vcell = Eigen::ArrayXXd::Zero(n, n);
    vel.vbar.setZero();
    return vel;
  }
  Eigen::MatrixXd P(2, static_cast<int>(open.size()));
  for (int c = 0; c < static_cast<int>(open.size()); ++c)
    P.col(c) = keig.eigenvectors().col(open[static_cast<std::size_t>(c)]);
  const Eigen::MatrixXd Ar = P.transpose() * avg * P;
  vel.weights = P * Ar.fullPivLu().solve(P.transpose() * v0);

  vel.u = vel.weights(0) * flow.u[0] + vel.weights(1) * flow.u[1];
  vel.v = vel.weights(0) * flow.v[0] + vel.weights(1) * flow.v[1];
  vel.ucell = vel.weights(0) * uc[0] + vel.weights(1) * uc[1];
  vel.vcell = vel.weights(0) * vc[0] + vel.weights(1) * vc[1];
  vel.vbar = avg * vel.weights;  // projection of v0 onto the achievable space
  return vel;
}

Eigen::Vector2d compute_drift_velocity(const CellGrid& grid, const PoreVelocity& vel, double pe) {
  const Eigen::ArrayXXd kappa = pore_weights_cells(grid);
  const double wsum = kappa.sum();
  if (wsum <= 0.0) throw solver_error("drift velocity: empty pore phase (pore fraction 0)");
  Eigen::Vector2d vstar;
  vstar(0) = pe * (kappa * vel.ucell).sum() / wsum;
  vstar(1) = pe * (kappa * vel.vcell).sum() / wsum;
  return vstar;
}

}  // namespace rtms
