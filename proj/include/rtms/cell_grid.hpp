#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "rtms/common.hpp"

namespace rtms {

// Periodic unit-cell microstructure held as a level set sampled at cell
// centers: phi < 0 in the pore phase, phi > 0 in the solid phase.
// Node (i, j) sits at ((i + 1/2) h, (j + 1/2) h) with h = 1/n.
struct CellGrid {
  int n = 0;
  Eigen::ArrayXXd phi;  // n x n

  double h() const { return 1.0 / n; }
  // Half-width of the smoothed Heaviside/delta band, in physical units.
  double band_eps() const { return 1.5 * h(); }
};

// Smoothed Heaviside / delta used for all pore-phase quadratures.
double smoothed_heaviside(double x, double eps);
double smoothed_delta(double x, double eps);

// Solid primitives for declarative geometry configs. Ellipses are
// axis-aligned; their level set is approximate and fixed up by
// reinitialization.
struct SolidPrimitive {
  enum class Kind { Circle, Ellipse } kind = Kind::Circle;
  Eigen::Vector2d center{0.5, 0.5};
  double rx = 0.25;
  double ry = 0.25;
};

struct GeometrySpec {
  int resolution = 64;
  std::vector<SolidPrimitive> solids;
  // Optional raw level-set field (row i varies fastest); overrides solids.
  Eigen::ArrayXXd raw_phi;
  bool has_raw = false;

  static GeometrySpec from_json_text(const std::string& text);
  std::string to_json_text() const;
};

CellGrid build_microstructure(const GeometrySpec& spec);

// Rebuilds phi as a signed distance function (first-order fast sweeping on
// the periodic cell; interface-adjacent nodes are pinned from interpolated
// zero crossings so the interface does not move).
void reinitialize(CellGrid& grid);

// Uniform normal motion: positive speed grows the solid phase. Exact for a
// signed-distance field, so it preserves |grad phi| = 1.
void advance_levelset(CellGrid& grid, double normal_displacement);

// max | |grad phi| - 1 | over nodes within band_eps of the interface.
double band_gradient_error(const CellGrid& grid);

// Pore volume fraction (smoothed Heaviside quadrature).
double pore_fraction(const CellGrid& grid);
// Interface perimeter per unit cell volume (smoothed delta quadrature).
double specific_area(const CellGrid& grid);

// Pore indicator weights used by every cell solver and quadrature.
Eigen::ArrayXXd pore_weights_cells(const CellGrid& grid);
Eigen::ArrayXXd phi_at_corners(const CellGrid& grid);

inline int wrap(int i, int n) { return (i % n + n) % n; }

}  // namespace rtms
