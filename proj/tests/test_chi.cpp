#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "rtms/cell_grid.hpp"
#include "rtms/chi_cell.hpp"
#include "rtms/effective_props.hpp"
#include "rtms/stokes_cell.hpp"

using namespace rtms;

namespace {

CellGrid channel_grid(int n) {
  GeometrySpec spec;
  spec.resolution = n;
  spec.has_raw = true;
  spec.raw_phi.resize(n, n);
  const double h = 1.0 / n;
  for (int j = 0; j < n; ++j) {
    const double y = (j + 0.5) * h;
    const double d = std::min(std::abs(y - 0.25), std::abs(y - 0.75));
    const bool solid = (y < 0.25) || (y > 0.75);
    for (int i = 0; i < n; ++i) spec.raw_phi(i, j) = solid ? d : -d;
  }
  return build_microstructure(spec);
}

CellGrid circle_grid(int n, double r) {
  GeometrySpec spec;
  spec.resolution = n;
  SolidPrimitive p;
  p.center = {0.5, 0.5};
  p.rx = p.ry = r;
  spec.solids.push_back(p);
  return build_microstructure(spec);
}

}  // namespace

TEST_CASE("no solid and no flow: chi vanishes and D is the identity") {
  GeometrySpec spec;
  spec.resolution = 32;
  const auto grid = build_microstructure(spec);
  const auto vel = zero_pore_velocity(grid.n);
  const auto chi = solve_chi_cell(grid, vel, {0.0, 0.0}, 0.0);
  CHECK(chi.chi[0].abs().maxCoeff() <= 1e-12);
  CHECK(chi.chi[1].abs().maxCoeff() <= 1e-12);
  const auto props = compute_effective_properties(grid, zero_flow(grid.n), chi, 0.0);
  CHECK(props.D(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(props.D(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(props.D(0, 1)) <= 1e-12);
  CHECK(props.lam == doctest::Approx(1.0));
  CHECK(props.gamma == doctest::Approx(0.0));
}

TEST_CASE("centered circle at zero flow: D symmetric and isotropic") {
  const auto grid = circle_grid(64, 0.25);
  const auto vel = zero_pore_velocity(grid.n);
  const auto chi = solve_chi_cell(grid, vel, {0.0, 0.0}, 0.0);
  const auto props = compute_effective_properties(grid, zero_flow(grid.n), chi, 0.0);
  CHECK(std::abs(props.D(0, 0) - props.D(1, 1)) <= 1e-3);
  CHECK(std::abs(props.D(0, 1)) <= 1e-3);
  CHECK(std::abs(props.D(1, 0)) <= 1e-3);

  // structural invariants at pe = 0
  CHECK(std::abs(props.D(0, 1) - props.D(1, 0)) <= 1e-10);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(0.5 * (props.D + props.D.transpose()));
  CHECK(eig.eigenvalues()(0) > 0.0);
  CHECK(eig.eigenvalues()(1) <= props.lam + 1e-12);

  const auto means = chi_pore_means(grid, chi);
  CHECK(std::abs(means(0)) <= 1e-10);
  CHECK(std::abs(means(1)) <= 1e-10);
}

TEST_CASE("compatibility residual vanishes with a consistent drift") {
  const auto grid = circle_grid(48, 0.2);
  const auto flow = solve_stokes_cell(grid);
  const auto vel = compute_pore_velocity(grid, flow, {0.8, 0.3});
  const double pe = 2.0;
  const auto vstar = compute_drift_velocity(grid, vel, pe);
  const auto resid = fredholm_residual(grid, vel, vstar, pe);
  CHECK(std::abs(resid(0)) <= 1e-10);
  CHECK(std::abs(resid(1)) <= 1e-10);

  // an inconsistent drift must be rejected, naming the bad component
  CHECK_THROWS_WITH_AS(solve_chi_cell(grid, vel, vstar + Eigen::Vector2d(0.1, 0.0), pe),
                       doctest::Contains("component 1"), Error);
}

TEST_CASE("channel dispersion matches the Taylor oracle at pe = 10") {
  const int n = 128;
  const double pe = 10.0;
  const auto grid = channel_grid(n);
  const auto flow = solve_stokes_cell(grid);
  const auto vel = compute_pore_velocity(grid, flow, {1.0, 0.0});
  const auto vstar = compute_drift_velocity(grid, vel, pe);
  const auto chi = solve_chi_cell(grid, vel, vstar, pe);
  const auto props = compute_effective_properties(grid, flow, chi, pe);

  const auto chi0 = solve_chi_cell(grid, zero_pore_velocity(n), {0.0, 0.0}, 0.0);
  const auto props0 = compute_effective_properties(grid, zero_flow(n), chi0, 0.0);

  // dispersion enhancement over the diffusive baseline
  CHECK(props.D(0, 0) > props0.D(0, 0));

  const double d_oracle = oracles::taylor_channel_d11(0.5, pe, 1.0);
  // sanity against the closed form a + pe^2 vbar^2 a^3 / 210
  CHECK(d_oracle == doctest::Approx(0.5 + pe * pe * 0.125 / 210.0).epsilon(1e-4));
  CHECK(props.D(0, 0) == doctest::Approx(d_oracle).epsilon(0.05));
}
