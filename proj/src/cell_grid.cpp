#include "rtms/cell_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace rtms {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kBig = 1e30;
}  // namespace

double smoothed_heaviside(double x, double eps) {
  if (x <= -eps) return 0.0;
  if (x >= eps) return 1.0;
  return 0.5 * (1.0 + x / eps + std::sin(kPi * x / eps) / kPi);
}

double smoothed_delta(double x, double eps) {
  if (std::abs(x) >= eps) return 0.0;
  return 0.5 * (1.0 + std::cos(kPi * x / eps)) / eps;
}

GeometrySpec GeometrySpec::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw config_error("geometry: JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  GeometrySpec spec;
  if (!j.contains("resolution")) throw config_error("geometry: missing field 'resolution'");
  spec.resolution = j.at("resolution").get<int>();
  if (j.contains("raw_phi")) {
    auto rows = j.at("raw_phi");
    int n = spec.resolution;
    if (static_cast<int>(rows.size()) != n) throw config_error("geometry: raw_phi must be resolution x resolution");
    spec.raw_phi.resize(n, n);
    for (int jj = 0; jj < n; ++jj) {
      if (static_cast<int>(rows[jj].size()) != n) throw config_error("geometry: raw_phi row size mismatch");
      for (int ii = 0; ii < n; ++ii) spec.raw_phi(ii, jj) = rows[jj][ii].get<double>();
    }
    spec.has_raw = true;
    return spec;
  }
  if (j.contains("solids")) {
    for (const auto& s : j.at("solids")) {
      SolidPrimitive p;
      const std::string type = s.value("type", "circle");
      if (type == "circle") {
        p.kind = SolidPrimitive::Kind::Circle;
        p.rx = p.ry = s.at("radius").get<double>();
      } else if (type == "ellipse") {
        p.kind = SolidPrimitive::Kind::Ellipse;
        p.rx = s.at("rx").get<double>();
        p.ry = s.at("ry").get<double>();
      } else {
        throw config_error("geometry: unknown primitive type '" + type + "'");
      }
      auto c = s.at("center");
      p.center = Eigen::Vector2d(c[0].get<double>(), c[1].get<double>());
      if (p.rx <= 0 || p.ry <= 0) throw config_error("geometry: primitive radius must be positive");
      spec.solids.push_back(p);
    }
  }
  return spec;
}

std::string GeometrySpec::to_json_text() const {
  nlohmann::json j;
  j["resolution"] = resolution;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : solids) {
    nlohmann::json p;
    if (s.kind == SolidPrimitive::Kind::Circle) {
      p["type"] = "circle";
      p["radius"] = s.rx;
    } else {
      p["type"] = "ellipse";
      p["rx"] = s.rx;
      p["ry"] = s.ry;
    }
    p["center"] = {s.center.x(), s.center.y()};
    arr.push_back(p);
  }
  j["solids"] = arr;
  return j.dump();
}

namespace {

// Solid-phase level set of one primitive (positive inside the solid),
// evaluated with periodic images so shapes wrap across cell faces.
double primitive_phi(const SolidPrimitive& p, double x, double y) {
  double best = -kBig;
  for (int sx = -1; sx <= 1; ++sx) {
    for (int sy = -1; sy <= 1; ++sy) {
      const double dx = x - (p.center.x() + sx);
      const double dy = y - (p.center.y() + sy);
      double v;
      if (p.kind == SolidPrimitive::Kind::Circle) {
        v = p.rx - std::sqrt(dx * dx + dy * dy);
      } else {
        const double q = std::sqrt((dx / p.rx) * (dx / p.rx) + (dy / p.ry) * (dy / p.ry));
        v = std::min(p.rx, p.ry) * (1.0 - q);
      }
      best = std::max(best, v);
    }
  }
  return best;
}

}  // namespace

CellGrid build_microstructure(const GeometrySpec& spec) {
  if (spec.resolution < 16) throw config_error("geometry: resolution must be at least 16");
  CellGrid grid;
  grid.n = spec.resolution;
  const int n = grid.n;
  const double h = grid.h();
  grid.phi.resize(n, n);
  if (spec.has_raw) {
    grid.phi = spec.raw_phi;
  } else if (spec.solids.empty()) {
    grid.phi.setConstant(-0.5);
    return grid;  // all pore; nothing to reinitialize
  } else {
    for (int j = 0; j < n; ++j) {
      const double y = (j + 0.5) * h;
      for (int i = 0; i < n; ++i) {
        const double x = (i + 0.5) * h;
        double v = -kBig;
        for (const auto& p : spec.solids) v = std::max(v, primitive_phi(p, x, y));
        grid.phi(i, j) = v;
      }
    }
  }
  reinitialize(grid);
  const double lam = pore_fraction(grid);
  if (lam <= 0.0) throw config_error("geometry: empty pore phase (pore fraction is zero)");
  return grid;
}

namespace {

// Local eikonal update from the smallest |phi| neighbors along each axis.
double eikonal_update(double a, double b, double h) {
  if (a > b) std::swap(a, b);
  if (b - a >= h) return a + h;
  return 0.5 * (a + b + std::sqrt(2.0 * h * h - (b - a) * (b - a)));
}

}  // namespace

void reinitialize(CellGrid& grid) {
  const int n = grid.n;
  const double h = grid.h();
  const Eigen::ArrayXXd& phi = grid.phi;

  Eigen::ArrayXXd dist(n, n);
  dist.setConstant(kBig);
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> frozen(n, n);
  frozen.setConstant(false);

  bool any_interface = false;
  // Pin nodes adjacent to a sign change with the gradient-normalized
  // distance |phi| / |grad phi|; exact when the input is already a signed
  // distance, first-order otherwise, and keeps the interface in place.
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double p0 = phi(i, j);
      const double pe_ = phi(wrap(i + 1, n), j), pw = phi(wrap(i - 1, n), j);
      const double pn = phi(i, wrap(j + 1, n)), ps = phi(i, wrap(j - 1, n));
      const bool crossing = p0 == 0.0 || p0 * pe_ < 0.0 || p0 * pw < 0.0 ||
                            p0 * pn < 0.0 || p0 * ps < 0.0;
      if (!crossing) continue;
      const double gx = (pe_ - pw) / (2 * h);
      const double gy = (pn - ps) / (2 * h);
      const double g = std::max(std::sqrt(gx * gx + gy * gy), 1e-8);
      dist(i, j) = std::abs(p0) / g;
      frozen(i, j) = true;
      any_interface = true;
    }
  }

  if (!any_interface) {
    // Single-phase cell: keep the sign, use a bounded placeholder distance.
    grid.phi = (phi(0, 0) < 0.0) ? -0.5 : 0.5;
    return;
  }

  // Fast sweeping with periodic wrap; a few rounds of the four orderings are
  // enough for distances to settle across the wrap-around.
  for (int round = 0; round < 3; ++round) {
    for (int sweep = 0; sweep < 4; ++sweep) {
      const bool ifwd = sweep == 0 || sweep == 1;
      const bool jfwd = sweep == 0 || sweep == 2;
      for (int jj = 0; jj < n; ++jj) {
        const int j = jfwd ? jj : n - 1 - jj;
        for (int ii = 0; ii < n; ++ii) {
          const int i = ifwd ? ii : n - 1 - ii;
          if (frozen(i, j)) continue;
          const double a = std::min(dist(wrap(i - 1, n), j), dist(wrap(i + 1, n), j));
          const double b = std::min(dist(i, wrap(j - 1, n)), dist(i, wrap(j + 1, n)));
          if (a >= kBig && b >= kBig) continue;
          const double d = (a >= kBig) ? b + h : (b >= kBig) ? a + h : eikonal_update(a, b, h);
          dist(i, j) = std::min(dist(i, j), d);
        }
      }
    }
  }

  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      grid.phi(i, j) = (phi(i, j) < 0.0 ? -1.0 : 1.0) * std::min(dist(i, j), 1.0);
}

void advance_levelset(CellGrid& grid, double normal_displacement) {
  grid.phi += normal_displacement;
}

double band_gradient_error(const CellGrid& grid) {
  const int n = grid.n;
  const double h = grid.h();
  const double eps = grid.band_eps();
  double worst = 0.0;
  bool has_band = false;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (std::abs(grid.phi(i, j)) > eps) continue;
      has_band = true;
      const double gx = (grid.phi(wrap(i + 1, n), j) - grid.phi(wrap(i - 1, n), j)) / (2 * h);
      const double gy = (grid.phi(i, wrap(j + 1, n)) - grid.phi(i, wrap(j - 1, n))) / (2 * h);
      worst = std::max(worst, std::abs(std::sqrt(gx * gx + gy * gy) - 1.0));
    }
  }
  return has_band ? worst : 0.0;
}

double pore_fraction(const CellGrid& grid) {
  const double eps = grid.band_eps();
  double sum = 0.0;
  for (int j = 0; j < grid.n; ++j)
    for (int i = 0; i < grid.n; ++i) sum += smoothed_heaviside(-grid.phi(i, j), eps);
  return sum / (static_cast<double>(grid.n) * grid.n);
}

double specific_area(const CellGrid& grid) {
  // Smeared-delta quadrature realized as a central derivative of the pore
  // area under interface offsets; the offset averaging suppresses the grid
  // oscillation a pointwise delta kernel picks up.
  const double d = grid.h();
  const double eps = grid.band_eps();
  const double inv = 1.0 / (static_cast<double>(grid.n) * grid.n);
  double shrunk = 0.0, grown = 0.0;
  for (int j = 0; j < grid.n; ++j)
    for (int i = 0; i < grid.n; ++i) {
      shrunk += smoothed_heaviside(-(grid.phi(i, j) - d), eps);
      grown += smoothed_heaviside(-(grid.phi(i, j) + d), eps);
    }
  return std::max(0.0, (shrunk - grown) * inv / (2.0 * d));
}

Eigen::ArrayXXd pore_weights_cells(const CellGrid& grid) {
  const double eps = grid.band_eps();
  Eigen::ArrayXXd w(grid.n, grid.n);
  for (int j = 0; j < grid.n; ++j)
    for (int i = 0; i < grid.n; ++i) w(i, j) = smoothed_heaviside(-grid.phi(i, j), eps);
  return w;
}

Eigen::ArrayXXd phi_at_corners(const CellGrid& grid) {
  const int n = grid.n;
  Eigen::ArrayXXd pc(n, n);
  for (int j = 0; j < n; ++j) {
    const int jm = wrap(j - 1, n);
    for (int i = 0; i < n; ++i) {
      const int im = wrap(i - 1, n);
      pc(i, j) = 0.25 * (grid.phi(i, j) + grid.phi(im, j) + grid.phi(i, jm) + grid.phi(im, jm));
    }
  }
  return pc;
}

}  // namespace rtms
