#include "rtms/chi_cell.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <vector>

namespace rtms {

namespace {

inline double harmonic(double a, double b) {
  if (a <= 0.0 || b <= 0.0) return 0.0;
  return 2.0 * a * b / (a + b);
}

struct FaceWeights {
  Eigen::ArrayXXd fx;  // fx(i,j): face between cells (i-1,j) and (i,j)
  Eigen::ArrayXXd fy;  // fy(i,j): face between cells (i,j-1) and (i,j)
};

FaceWeights face_weights(const Eigen::ArrayXXd& kappa, int n) {
  FaceWeights fw;
  fw.fx.resize(n, n);
  fw.fy.resize(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      fw.fx(i, j) = harmonic(kappa(wrap(i - 1, n), j), kappa(i, j));
      fw.fy(i, j) = harmonic(kappa(i, wrap(j - 1, n)), kappa(i, j));
    }
  return fw;
}

}  // namespace

PoreVelocity zero_pore_velocity(int n) {
  PoreVelocity vel;
  vel.n = n;
  vel.u = Eigen::ArrayXXd::Zero(n, n);
  vel.v = Eigen::ArrayXXd::Zero(n, n);
  vel.ucell = Eigen::ArrayXXd::Zero(n, n);
  vel.vcell = Eigen::ArrayXXd::Zero(n, n);
  return vel;
}

Eigen::Vector2d fredholm_residual(const CellGrid& grid, const PoreVelocity& vel,
                                  const Eigen::Vector2d& vstar, double pe) {
  const int n = grid.n;
  const double h = grid.h();
  const Eigen::ArrayXXd kappa = pore_weights_cells(grid);
  const FaceWeights fw = face_weights(kappa, n);
  Eigen::Vector2d resid = Eigen::Vector2d::Zero();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double vol = h * h;
      resid(0) += kappa(i, j) * (vstar(0) - pe * vel.ucell(i, j)) * vol;
      resid(1) += kappa(i, j) * (vstar(1) - pe * vel.vcell(i, j)) * vol;
      // interface source: kappa-weighted flux of the unit fields through the
      // cell faces (telescopes to zero on the periodic cell)
      resid(0) += (fw.fx(wrap(i + 1, n), j) - fw.fx(i, j)) * h;
      resid(1) += (fw.fy(i, wrap(j + 1, n)) - fw.fy(i, j)) * h;
    }
  return resid;
}

ChiSolution solve_chi_cell(const CellGrid& grid, const PoreVelocity& vel,
                           const Eigen::Vector2d& vstar, double pe, double compat_tol) {
  const int n = grid.n;
  const int nn = n * n;
  const double h = grid.h();
  const Eigen::ArrayXXd kappa = pore_weights_cells(grid);
  const FaceWeights fw = face_weights(kappa, n);

  ChiSolution out;
  out.n = n;
  out.vstar = vstar;
  out.vbar = vel.vbar;
  out.ucell = vel.ucell;
  out.vcell = vel.vcell;

  const Eigen::Vector2d resid = fredholm_residual(grid, vel, vstar, pe);
  out.fredholm = resid;
  for (int c = 0; c < 2; ++c)
    if (std::abs(resid(c)) > compat_tol)
      throw solver_error("chi: compatibility (Fredholm) residual " + std::to_string(resid(c)) +
                         " in component " + std::to_string(c + 1) +
                         "; drift velocity inconsistent with the advection field");

  // Connected pore components through faces with positive weight.
  std::vector<int> comp(static_cast<std::size_t>(nn), -1);
  int ncomp = 0;
  std::vector<int> stack;
  for (int seed = 0; seed < nn; ++seed) {
    const int si = seed % n, sj = seed / n;
    if (kappa(si, sj) <= 0.0 || comp[seed] >= 0) continue;
    comp[seed] = ncomp;
    stack.assign(1, seed);
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      const int i = a % n, j = a / n;
      const int nb[4] = {wrap(i + 1, n) + n * j, wrap(i - 1, n) + n * j,
                         i + n * wrap(j + 1, n), i + n * wrap(j - 1, n)};
      const double kf[4] = {fw.fx(wrap(i + 1, n), j), fw.fx(i, j),
                            fw.fy(i, wrap(j + 1, n)), fw.fy(i, j)};
      for (int k = 0; k < 4; ++k)
        if (kf[k] > 0.0 && comp[static_cast<std::size_t>(nb[k])] < 0) {
          comp[static_cast<std::size_t>(nb[k])] = ncomp;
          stack.push_back(nb[k]);
        }
    }
    ++ncomp;
  }
  out.num_components = ncomp;

  if (ncomp == 0) {  // fully solid cell: no transport problem to solve
    out.chi[0] = Eigen::ArrayXXd::Zero(n, n);
    out.chi[1] = Eigen::ArrayXXd::Zero(n, n);
    return out;
  }

  const int dim = nn + ncomp;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(8 * nn));
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(dim, 2);
  const double ih2 = 1.0 / (h * h);

  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int a = i + n * j;
      if (kappa(i, j) <= 0.0) {
        trip.emplace_back(a, a, 1.0);
        continue;
      }
      const int east = wrap(i + 1, n) + n * j;
      const int west = wrap(i - 1, n) + n * j;
      const int north = i + n * wrap(j + 1, n);
      const int south = i + n * wrap(j - 1, n);
      const double kE = fw.fx(wrap(i + 1, n), j), kW = fw.fx(i, j);
      const double kN = fw.fy(i, wrap(j + 1, n)), kS = fw.fy(i, j);

      double diag = (kE + kW + kN + kS) * ih2;
      if (kE > 0.0) trip.emplace_back(a, east, -kE * ih2);
      if (kW > 0.0) trip.emplace_back(a, west, -kW * ih2);
      if (kN > 0.0) trip.emplace_back(a, north, -kN * ih2);
      if (kS > 0.0) trip.emplace_back(a, south, -kS * ih2);

      // upwinded flux-form advection; outward mass fluxes per face
      const double mE = pe * kE * vel.u(wrap(i + 1, n), j);
      const double mW = -pe * kW * vel.u(i, j);
      const double mN = pe * kN * vel.v(i, wrap(j + 1, n));
      const double mS = -pe * kS * vel.v(i, j);
      const auto upwind = [&](double m, int nb) {
        if (m >= 0.0) diag += m / h;
        else trip.emplace_back(a, nb, m / h);
      };
      upwind(mE, east);
      upwind(mW, west);
      upwind(mN, north);
      upwind(mS, south);

      trip.emplace_back(a, a, diag);

      // zero-mean constraint coupling for this cell's component
      const int mu = nn + comp[static_cast<std::size_t>(a)];
      trip.emplace_back(a, mu, kappa(i, j));
      trip.emplace_back(mu, a, kappa(i, j));

      rhs(a, 0) = kappa(i, j) * (vstar(0) - pe * vel.ucell(i, j)) + (kE - kW) / h;
      rhs(a, 1) = kappa(i, j) * (vstar(1) - pe * vel.vcell(i, j)) + (kN - kS) / h;
    }
  }

  Eigen::SparseMatrix<double> mat(dim, dim);
  mat.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(mat);
  if (lu.info() != Eigen::Success) throw solver_error("chi: factorization failed");
  Eigen::MatrixXd sol = lu.solve(rhs);
  const double lin_resid = (mat * sol - rhs).cwiseAbs().maxCoeff();
  if (!std::isfinite(lin_resid) || lin_resid > 1e-7)
    throw solver_error("chi: solve did not converge, residual " + std::to_string(lin_resid));

  for (int c = 0; c < 2; ++c) {
    out.chi[c].resize(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) out.chi[c](i, j) = sol(i + n * j, c);
  }

  // Polish the normalization per component (the multiplier already enforces
  // it to solver precision).
  std::vector<double> wsum(static_cast<std::size_t>(ncomp), 0.0);
  for (int a = 0; a < nn; ++a)
    if (comp[static_cast<std::size_t>(a)] >= 0)
      wsum[static_cast<std::size_t>(comp[static_cast<std::size_t>(a)])] += kappa(a % n, a / n);
  for (int c = 0; c < 2; ++c) {
    std::vector<double> mean(static_cast<std::size_t>(ncomp), 0.0);
    for (int a = 0; a < nn; ++a) {
      const int k = comp[static_cast<std::size_t>(a)];
      if (k >= 0) mean[static_cast<std::size_t>(k)] += kappa(a % n, a / n) * out.chi[c](a % n, a / n);
    }
    for (int k = 0; k < ncomp; ++k) mean[static_cast<std::size_t>(k)] /= wsum[static_cast<std::size_t>(k)];
    for (int a = 0; a < nn; ++a) {
      const int k = comp[static_cast<std::size_t>(a)];
      if (k >= 0) out.chi[c](a % n, a / n) -= mean[static_cast<std::size_t>(k)];
    }
  }
  return out;
}

Eigen::Vector2d chi_pore_means(const CellGrid& grid, const ChiSolution& chi) {
  const Eigen::ArrayXXd kappa = pore_weights_cells(grid);
  const double wsum = kappa.sum();
  Eigen::Vector2d m = Eigen::Vector2d::Zero();
  if (wsum <= 0.0) return m;
  m(0) = (kappa * chi.chi[0]).sum() / wsum;
  m(1) = (kappa * chi.chi[1]).sum() / wsum;
  return m;
}

}  // namespace rtms
