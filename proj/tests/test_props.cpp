#include "doctest.h"

#include <cmath>
#include <random>

#include "rtms/cell_grid.hpp"
#include "rtms/chi_cell.hpp"
#include "rtms/effective_props.hpp"
#include "rtms/stokes_cell.hpp"

using namespace rtms;

namespace {

// Random periodic circle pack that percolates in both directions.
GeometrySpec random_spec(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(3, 6);
  std::uniform_real_distribution<double> pos(0.0, 1.0), rad(0.08, 0.18);
  GeometrySpec spec;
  spec.resolution = n;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) {
    SolidPrimitive p;
    p.center = {pos(rng), pos(rng)};
    p.rx = p.ry = rad(rng);
    spec.solids.push_back(p);
  }
  return spec;
}

bool percolates(const CellGrid& grid) {
  const auto flow = solve_stokes_cell(grid);
  const auto K = permeability_gram(grid, flow);
  return K(0, 0) > 1e-6 && K(1, 1) > 1e-6;
}

}  // namespace

TEST_CASE("structural invariants hold on random microstructures") {
  std::mt19937_64 rng(7);
  int done = 0;
  while (done < 5) {
    GeometrySpec spec = random_spec(48, rng);
    CellGrid grid;
    try {
      grid = build_microstructure(spec);
    } catch (const Error&) {
      continue;  // degenerate draw
    }
    const double lam = pore_fraction(grid);
    if (lam < 0.3 || lam > 0.95 || !percolates(grid)) continue;
    ++done;

    const auto flow = solve_stokes_cell(grid);
    const auto vel = compute_pore_velocity(grid, flow, {0.4, -0.2});
    const double pe = 1.0;
    const auto vstar = compute_drift_velocity(grid, vel, pe);
    const auto chi = solve_chi_cell(grid, vel, vstar, pe);
    const auto props = compute_effective_properties(grid, flow, chi, pe);

    // Gram structure: exact symmetry and positive semidefiniteness
    CHECK(std::abs(props.K(0, 1) - props.K(1, 0)) <= 1e-10 * props.K.norm());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> keig(props.K);
    CHECK(keig.eigenvalues()(0) >= -1e-14);

    CHECK(flow.max_divergence <= 1e-9);
    CHECK(std::abs(props.gamma) >= 0.0);
    CHECK(props.lam > 0.0);
    CHECK(props.lam <= 1.0);

    const auto means = chi_pore_means(grid, chi);
    CHECK(std::abs(means(0)) <= 1e-10);
    CHECK(std::abs(means(1)) <= 1e-10);

    const auto fred = fredholm_residual(grid, vel, vstar, pe);
    CHECK(std::abs(fred(0)) <= 1e-8);
    CHECK(std::abs(fred(1)) <= 1e-8);

    // zero-velocity transport: D symmetric with eigenvalues in (0, lam]
    const auto chi0 = solve_chi_cell(grid, zero_pore_velocity(grid.n), {0.0, 0.0}, 0.0);
    const auto props0 = compute_effective_properties(grid, zero_flow(grid.n), chi0, 0.0);
    CHECK(std::abs(props0.D(0, 1) - props0.D(1, 0)) <= 1e-10);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> deig(props0.D);
    CHECK(deig.eigenvalues()(0) > 0.0);
    CHECK(deig.eigenvalues()(1) <= props0.lam + 1e-12);
  }
}

TEST_CASE("effective properties are invariant under lattice translation") {
  const int n = 48;
  auto make = [&](double sx, double sy) {
    GeometrySpec spec;
    spec.resolution = n;
    SolidPrimitive a;
    a.center = {0.32 + sx, 0.4 + sy};
    a.rx = a.ry = 0.22;
    spec.solids.push_back(a);
    SolidPrimitive b;
    b.center = {0.75 + sx, 0.8 + sy};
    b.rx = b.ry = 0.15;
    spec.solids.push_back(b);
    const auto grid = build_microstructure(spec);
    const auto flow = solve_stokes_cell(grid);
    const auto vel = compute_pore_velocity(grid, flow, {0.5, 0.25});
    const auto vstar = compute_drift_velocity(grid, vel, 1.0);
    const auto chi = solve_chi_cell(grid, vel, vstar, 1.0);
    return compute_effective_properties(grid, flow, chi, 1.0);
  };
  const auto base = make(0.0, 0.0);
  const auto shifted = make(10.0 / n, -7.0 / n);
  CHECK((pack_props(base) - pack_props(shifted)).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("circle perimeter appears in gamma") {
  GeometrySpec spec;
  spec.resolution = 64;
  SolidPrimitive p;
  p.center = {0.5, 0.5};
  p.rx = p.ry = 0.25;
  spec.solids.push_back(p);
  const auto grid = build_microstructure(spec);
  CHECK(specific_area(grid) == doctest::Approx(3.14159265358979323846 / 2).epsilon(0.02));
}

TEST_CASE("props pack/unpack round trip") {
  EffectiveProps p;
  p.K << 1e-3, 2e-5, 2e-5, 3e-3;
  p.D << 0.5, 0.01, -0.02, 0.6;
  p.vbar << 0.3, -0.1;
  p.gamma = 2.5;
  p.lam = 0.7;
  const auto x = pack_props(p);
  const auto q = unpack_props(x);
  CHECK((pack_props(q) - x).cwiseAbs().maxCoeff() == 0.0);
}
