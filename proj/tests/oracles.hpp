#pragma once

// Independent reference computations used to freeze expected test values.
// These live in test code only and never call into the solver paths they
// check.

#include <cmath>
#include <functional>

namespace oracles {

// Composite-trapezoid quadrature on [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  double sum = 0.5 * (f(a) + f(b));
  const double h = (b - a) / n;
  for (int i = 1; i < n; ++i) sum += f(a + i * h);
  return sum * h;
}

// Plane Poiseuille cell permeability for a channel of gap `a` driven by a
// unit body force at unit viscosity: K = integral of u'(s)^2 over the gap
// for the exact parabolic profile u(s) = (a^2/4 - s^2)/2.
inline double poiseuille_permeability(double a) {
  auto du = [](double s) { return -s; };  // derivative of the parabola
  return integrate([&](double s) { return du(s) * du(s); }, -a / 2, a / 2);
}

// Longitudinal dispersion coefficient of a plane channel of gap `a` with a
// parabolic profile of pore-average speed vbar, at Peclet number pe:
//   D11 = a + pe * int (vbar - u) chi ds,
// where chi solves -chi'' = pe (vbar - u), chi'(+-a/2) = 0. Solved here by
// direct quadrature of the closed-form integrands.
inline double taylor_channel_d11(double a, double pe, double vbar) {
  auto u = [&](double s) { return 1.5 * vbar * (1.0 - 4.0 * s * s / (a * a)); };
  // chi'(s) = pe * vbar * (s/2 - 2 s^3 / a^2); integrate once more numerically
  auto dchi = [&](double s) { return pe * vbar * (0.5 * s - 2.0 * s * s * s / (a * a)); };
  auto chi = [&](double s) { return integrate(dchi, -a / 2, s, 4000); };
  const double adv = integrate([&](double s) { return (vbar - u(s)) * chi(s); }, -a / 2, a / 2, 2000);
  return a + pe * adv;
}

}  // namespace oracles
