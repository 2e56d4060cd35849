#include "rtms/cell_trajectory.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "rtms/chi_cell.hpp"
#include "rtms/stokes_cell.hpp"

namespace rtms {

void Trajectory::validate() const {
  const int m = size();
  if (m < 1) throw data_error("trajectory: empty");
  if (c0.size() != m || v0.rows() != m) throw data_error("trajectory: field lengths differ");
  if (times(0) != 0.0) throw data_error("trajectory: times must start at 0");
  for (int i = 1; i < m; ++i)
    if (!(times(i) > times(i - 1))) throw data_error("trajectory: times must be strictly increasing");
  for (int i = 0; i < m; ++i)
    if (c0(i) < 0.0 || c0(i) > 1.0) throw data_error("trajectory: c0 outside [0, 1]");
}

Eigen::MatrixXd PropsSeries::packed() const {
  Eigen::MatrixXd out(kNumPropComponents, static_cast<int>(props.size()));
  for (int i = 0; i < static_cast<int>(props.size()); ++i)
    out.col(i) = pack_props(props[static_cast<std::size_t>(i)]);
  return out;
}

CellGrid evolve_interface(const CellGrid& grid, double c0, double dt, const Kinetics& kin,
                          double da, double reinit_band_tol) {
  if (dt <= 0.0) throw config_error("evolve_interface: dt must be positive");
  if (c0 < 0.0 || c0 > 1.0) throw config_error("evolve_interface: c0 outside [0, 1]");
  const double vn = (da / kin.m) * kin.q(c0);
  const double h = grid.h();
  if (std::abs(vn) * dt > h)
    throw solver_error("evolve_interface: CFL violation, |v_n| dt = " + std::to_string(std::abs(vn) * dt) +
                       " exceeds grid spacing " + std::to_string(h) + "; split dt into sub-steps");
  CellGrid out = grid;
  if (vn == 0.0) return out;
  advance_levelset(out, vn * dt);
  if (band_gradient_error(out) > reinit_band_tol) {
    // Rebuilding the distance field may not move the interface against the
    // direction of motion, else the monotone-reconstruction property breaks.
    const Eigen::ArrayXXd advanced = out.phi;
    reinitialize(out);
    if (vn > 0.0) out.phi = out.phi.max(advanced);
    else out.phi = out.phi.min(advanced);
  }
  return out;
}

namespace {

// In-place variant used by the driver loop; sub-steps to respect the CFL
// limit of evolve_interface.
void evolve_in_place(CellGrid& grid, double vn, double dt, double cfl_fraction,
                     double reinit_band_tol) {
  if (vn == 0.0 || dt <= 0.0) return;
  const double h = grid.h();
  const double max_step = cfl_fraction * h / std::abs(vn);
  const int nsub = std::max(1, static_cast<int>(std::ceil(dt / max_step)));
  const double sub = dt / nsub;
  for (int s = 0; s < nsub; ++s) {
    advance_levelset(grid, vn * sub);
    if (band_gradient_error(grid) > reinit_band_tol) {
      const Eigen::ArrayXXd advanced = grid.phi;
      reinitialize(grid);
      if (vn > 0.0) grid.phi = grid.phi.max(advanced);
      else grid.phi = grid.phi.min(advanced);
    }
  }
}

}  // namespace

PropsSeries run_cell_trajectory(const CellGrid& grid0, const Trajectory& traj,
                                const CellConfig& cfg) {
  traj.validate();
  const int steps = traj.size();
  PropsSeries series;
  series.times = traj.times;
  series.props.resize(static_cast<std::size_t>(steps));

  CellGrid grid = grid0;
  StokesCellSolver stokes;
  FlowSolution flow;
  bool flow_valid = false;
  bool props_valid = false;
  Eigen::Vector2d last_v0 = Eigen::Vector2d::Zero();
  EffectiveProps last_props;

  for (int nstep = 0; nstep < steps; ++nstep) {
    const Eigen::Vector2d v0(traj.v0(nstep, 0), traj.v0(nstep, 1));
    try {
      if (!(props_valid && flow_valid && v0 == last_v0)) {
        const Eigen::ArrayXXd kappa = pore_weights_cells(grid);
        if (kappa.sum() <= 0.0) {
          // Fully solidified: no pore left, transport shuts down.
          EffectiveProps p;
          p.gamma = specific_area(grid);
          p.lam = pore_fraction(grid);
          last_props = p;
        } else {
          if (!flow_valid) {
            flow = stokes.solve(grid, cfg.nu, cfg.eta);
            flow_valid = true;
          }
          PoreVelocity vel = compute_pore_velocity(grid, flow, v0);
          const Eigen::Vector2d vstar = compute_drift_velocity(grid, vel, cfg.pe_hat);
          ChiSolution chi = solve_chi_cell(grid, vel, vstar, cfg.pe_hat, cfg.compat_tol);
          last_props = compute_effective_properties(grid, flow, chi, cfg.pe_hat);
        }
        last_v0 = v0;
        props_valid = true;
      }
    } catch (const Error& e) {
      throw Error(e.kind(), "cell trajectory failed at step " + std::to_string(nstep) + ": " + e.what());
    }
    series.props[static_cast<std::size_t>(nstep)] = last_props;

    if (nstep + 1 < steps) {
      const double dt = traj.times(nstep + 1) - traj.times(nstep);
      const double vn = (cfg.da_hat / cfg.kinetics.m) * cfg.kinetics.q(traj.c0(nstep));
      if (vn != 0.0) {
        evolve_in_place(grid, vn, dt, cfg.cfl_fraction, cfg.reinit_band_tol);
        flow_valid = false;
        props_valid = false;
      }
    }
  }
  return series;
}

void write_props_series_csv(const std::string& path, const PropsSeries& series) {
  std::ostringstream out;
  out.precision(17);
  out << "t";
  for (const char* name : kPropComponentNames) out << "," << name;
  out << "\n";
  for (int i = 0; i < static_cast<int>(series.props.size()); ++i) {
    out << series.times(i);
    const auto x = pack_props(series.props[static_cast<std::size_t>(i)]);
    for (int c = 0; c < kNumPropComponents; ++c) out << "," << x(c);
    out << "\n";
  }
  write_file_atomic(path, out.str());
}

namespace {

std::vector<std::vector<double>> read_csv_columns(const std::string& path,
                                                  std::vector<std::string>* header) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open CSV: " + path);
  std::string line;
  if (!std::getline(in, line)) throw data_error("empty CSV: " + path);
  std::vector<std::string> names;
  {
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) names.push_back(tok);
  }
  std::vector<std::vector<double>> cols(names.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::size_t c = 0;
    while (std::getline(ss, tok, ',')) {
      if (c >= cols.size()) throw data_error("CSV row wider than header: " + path);
      cols[c++].push_back(std::stod(tok));
    }
    if (c != cols.size()) throw data_error("CSV row narrower than header: " + path);
  }
  if (header) *header = names;
  return cols;
}

}  // namespace

PropsSeries read_props_series_csv(const std::string& path) {
  std::vector<std::string> names;
  auto cols = read_csv_columns(path, &names);
  if (names.size() != 1 + kNumPropComponents || names[0] != "t")
    throw data_error("props CSV: unexpected header in " + path);
  for (int c = 0; c < kNumPropComponents; ++c)
    if (names[static_cast<std::size_t>(c + 1)] != kPropComponentNames[static_cast<std::size_t>(c)])
      throw data_error(std::string("props CSV: missing or misplaced column ") +
                       kPropComponentNames[static_cast<std::size_t>(c)]);
  PropsSeries s;
  const int m = static_cast<int>(cols[0].size());
  s.times.resize(m);
  s.props.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    s.times(i) = cols[0][static_cast<std::size_t>(i)];
    Eigen::Matrix<double, kNumPropComponents, 1> x;
    for (int c = 0; c < kNumPropComponents; ++c) x(c) = cols[static_cast<std::size_t>(c + 1)][static_cast<std::size_t>(i)];
    s.props[static_cast<std::size_t>(i)] = unpack_props(x);
  }
  return s;
}

Trajectory read_trajectory_csv(const std::string& path) {
  std::vector<std::string> names;
  auto cols = read_csv_columns(path, &names);
  const std::vector<std::string> want = {"t", "c0", "v01", "v02"};
  if (names != want) throw data_error("trajectory CSV: header must be t,c0,v01,v02 in " + path);
  Trajectory traj;
  const int m = static_cast<int>(cols[0].size());
  traj.times.resize(m);
  traj.c0.resize(m);
  traj.v0.resize(m, 2);
  for (int i = 0; i < m; ++i) {
    traj.times(i) = cols[0][static_cast<std::size_t>(i)];
    traj.c0(i) = cols[1][static_cast<std::size_t>(i)];
    traj.v0(i, 0) = cols[2][static_cast<std::size_t>(i)];
    traj.v0(i, 1) = cols[3][static_cast<std::size_t>(i)];
  }
  traj.validate();
  return traj;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ostringstream out;
  out.precision(17);
  out << "t,c0,v01,v02\n";
  for (int i = 0; i < traj.size(); ++i)
    out << traj.times(i) << "," << traj.c0(i) << "," << traj.v0(i, 0) << "," << traj.v0(i, 1) << "\n";
  write_file_atomic(path, out.str());
}

}  // namespace rtms
