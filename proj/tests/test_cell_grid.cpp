#include "doctest.h"

#include <cmath>

#include "rtms/cell_grid.hpp"

using namespace rtms;

namespace {
constexpr double kPi = 3.14159265358979323846;

GeometrySpec circle_spec(int n, double r, double cx = 0.5, double cy = 0.5) {
  GeometrySpec spec;
  spec.resolution = n;
  SolidPrimitive p;
  p.center = {cx, cy};
  p.rx = p.ry = r;
  spec.solids.push_back(p);
  return spec;
}
}  // namespace

TEST_CASE("centered circle matches analytic area and perimeter") {
  const auto grid = build_microstructure(circle_spec(64, 0.25));
  CHECK(pore_fraction(grid) == doctest::Approx(1.0 - kPi / 16.0).epsilon(0.01));
  CHECK(specific_area(grid) == doctest::Approx(kPi / 2.0).epsilon(0.03));
}

TEST_CASE("empty spec gives all-pore cell") {
  GeometrySpec spec;
  spec.resolution = 32;
  const auto grid = build_microstructure(spec);
  CHECK(pore_fraction(grid) == doctest::Approx(1.0));
  CHECK(specific_area(grid) == doctest::Approx(0.0));
}

TEST_CASE("periodic wrapping: corner circle equals centered circle") {
  const auto centered = build_microstructure(circle_spec(64, 0.25));
  const auto corner = build_microstructure(circle_spec(64, 0.25, 0.0, 0.0));
  CHECK(pore_fraction(corner) == doctest::Approx(pore_fraction(centered)).epsilon(1e-8));
  CHECK(specific_area(corner) == doctest::Approx(specific_area(centered)).epsilon(1e-6));
}

TEST_CASE("lattice-commensurate translation leaves quadratures unchanged") {
  const auto a = build_microstructure(circle_spec(64, 0.21, 0.3, 0.4));
  const auto b = build_microstructure(circle_spec(64, 0.21, 0.3 + 8.0 / 64, 0.4 - 16.0 / 64));
  CHECK(pore_fraction(b) == doctest::Approx(pore_fraction(a)).epsilon(1e-10));
  CHECK(specific_area(b) == doctest::Approx(specific_area(a)).epsilon(1e-10));
}

TEST_CASE("resolution convergence of circle area and perimeter is at least first order") {
  const double lam_exact = 1.0 - kPi / 16.0;
  const double gam_exact = kPi / 2.0;
  double el[3], eg[3];
  int idx = 0;
  for (int n : {32, 64, 128}) {
    const auto grid = build_microstructure(circle_spec(n, 0.25));
    el[idx] = std::abs(pore_fraction(grid) - lam_exact);
    eg[idx] = std::abs(specific_area(grid) - gam_exact);
    ++idx;
  }
  CHECK(el[2] <= el[0] / std::pow(4.0, 0.9) + 1e-12);
  CHECK(eg[2] <= eg[0] / std::pow(4.0, 0.9) + 1e-12);
}

TEST_CASE("signed distance property holds near the interface") {
  const auto grid = build_microstructure(circle_spec(64, 0.3, 0.4, 0.6));
  CHECK(band_gradient_error(grid) <= 0.1);
}

TEST_CASE("degenerate geometry configs are rejected") {
  CHECK_THROWS_AS(build_microstructure(circle_spec(8, 0.25)), Error);  // too coarse
  CHECK_THROWS_AS(build_microstructure(circle_spec(32, 0.9)), Error);  // no pore left
}

TEST_CASE("geometry spec JSON round trip") {
  auto spec = circle_spec(48, 0.2, 0.3, 0.7);
  const auto text = spec.to_json_text();
  const auto back = GeometrySpec::from_json_text(text);
  REQUIRE(back.solids.size() == 1);
  CHECK(back.resolution == 48);
  CHECK(back.solids[0].rx == doctest::Approx(0.2));
  CHECK(back.solids[0].center.y() == doctest::Approx(0.7));
  CHECK_THROWS_AS(GeometrySpec::from_json_text("{\"solids\": []}"), Error);  // missing resolution
}
