#pragma once

// Independent oracles for the test suite. Everything here deliberately
// avoids the library's quadrature and special-function paths: plain
// Simpson / trapezoid rules, raw series, and closed forms derived by hand.

#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

// Composite Simpson on [a, b] with n (even) intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// Gamma(1/2) from the defining integral: 2 int_0^8 exp(-u^2) du plus a tail
// below 1e-27.
inline double gamma_half_by_integration() {
  return 2.0 * simpson([](double u) { return std::exp(-u * u); }, 0.0, 8.0, 20000);
}

// Ascending Bessel series in long double, summed to exhaustion. Independent
// of the library path (no closed forms, no asymptotics); usable while the
// alternating J series stays well conditioned (t <~ 8).
inline double bessel_series(double nu, double t, bool modified, double gamma_nu_plus_1) {
  if (t == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const long double q2 = (long double)t * t / 4.0L;
  long double term = 1.0L / (long double)gamma_nu_plus_1;
  long double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= (modified ? q2 : -q2) / ((long double)k * ((long double)nu + k));
    sum += term;
    if (std::abs((double)term) < 1e-20 * std::abs((double)sum) && q2 < (long double)k * (nu + k))
      break;
  }
  return (double)(sum * std::pow((long double)t / 2.0L, (long double)nu));
}

// Central second differences Laplacian.
inline double fd_laplacian(const std::function<double(std::span<const double>)>& u,
                           std::span<const double> x, double h) {
  std::vector<double> y(x.begin(), x.end());
  const double c = u(y);
  double lap = 0.0;
  for (size_t i = 0; i < y.size(); ++i) {
    const double o = y[i];
    y[i] = o + h;
    const double up = u(y);
    y[i] = o - h;
    const double dn = u(y);
    y[i] = o;
    lap += (up - 2.0 * c + dn) / (h * h);
  }
  return lap;
}

// Mean over the circle S_r(x) in the plane by plain trapezoid with n nodes,
// shifted half a step so the nodes differ from the library's.
inline double circle_mean(const std::function<double(std::span<const double>)>& u, double x1,
                          double x2, double r, int n = 4096) {
  double acc = 0.0;
  std::vector<double> y(2);
  for (int j = 0; j < n; ++j) {
    const double th = 2.0 * kPi * (j + 0.5) / n;
    y[0] = x1 + r * std::cos(th);
    y[1] = x2 + r * std::sin(th);
    acc += u(y);
  }
  return acc / n;
}

// Mean over the sphere S_r(x) in m = 3 by Simpson in the polar angle theta
// and trapezoid in azimuth (no Gauss nodes anywhere).
inline double sphere3_mean(const std::function<double(std::span<const double>)>& u,
                           std::span<const double> x, double r, int ntheta = 720,
                           int nphi = 720) {
  if (ntheta % 2) ++ntheta;
  const double htheta = kPi / ntheta;
  std::vector<double> y(3);
  double num = 0.0, den = 0.0;
  for (int i = 0; i <= ntheta; ++i) {
    const double th = i * htheta;
    const double wsimp = (i == 0 || i == ntheta) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double st = std::sin(th), ct = std::cos(th);
    double ring = 0.0;
    for (int j = 0; j < nphi; ++j) {
      const double ph = 2.0 * kPi * (j + 0.5) / nphi;
      y[0] = x[0] + r * ct;
      y[1] = x[1] + r * st * std::cos(ph);
      y[2] = x[2] + r * st * std::sin(ph);
      ring += u(y);
    }
    num += wsimp * st * ring / nphi;
    den += wsimp * st;
  }
  return num / den;
}

// Closed-form residual of the C3.1 probe for u == 1 on A_x(r1, r2):
//   lhs - rhs = (m/|A|) (|B_{r2}| log(r/r2) - |B_{r1}| log(r/r1))
// obtained by splitting the annular log integral into two ball integrals
// with int_{B_R} log(r/|y|) dy = |B_R| (log(r/R) + 1/m).
inline double c31_const_residual(int m, double r1, double r2, double r) {
  const double b2 = std::pow(r2, m), b1 = std::pow(r1, m);  // |B| up to a common factor
  return m * (b2 * std::log(r / r2) - b1 * std::log(r / r1)) / (b2 - b1);
}

// Plain log-weighted mean of 1 over the annulus, weight radius rw:
// (1/|A|) int_A log(rw/|y|) dy = [ |B2|(log(rw/r2) + 1/m) - |B1|(log(rw/r1) + 1/m) ] / |A|.
inline double annulus_log_mean_const(int m, double r1, double r2, double rw) {
  const double b2 = std::pow(r2, m), b1 = std::pow(r1, m);
  return (b2 * (std::log(rw / r2) + 1.0 / m) - b1 * (std::log(rw / r1) + 1.0 / m)) / (b2 - b1);
}

}  // namespace oracle
