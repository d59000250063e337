#pragma once

// Closed-form scalar coefficients of the mean value identities: the sphere
// and ball normalizations a_circ / a_bullet for the modified Helmholtz and
// Helmholtz equations, the log-weighted coefficients a and a-tilde, the
// annulus quadrature radius r*, and the annulus-to-sphere ratio coefficient.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mvq/errors.hpp"
#include "mvq/specfun.hpp"

namespace mvq::coeff {

namespace detail {

inline void check_args(int m, double t, const char* who) {
  if (m < 2 || m > 5) throw std::out_of_range(std::string(who) + ": dimension must be in [2, 5]");
  if (!(t >= 0.0) || t > 50.0)
    throw std::out_of_range(std::string(who) + ": t must lie in [0, 50]");
}

// Normalized kernel Gamma(base) I_nu(t) / (t/2)^nu with base = nu + 1, as an
// ascending series: sum_k (+-1)^k (t/2)^{2k} / (k! (base)_k). Used below the
// cancellation threshold and to define the t = 0 limits.
inline double normalized_series(double base, double t, double sign) {
  const double q2 = 0.25 * t * t;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 30; ++k) {
    term *= sign * q2 / (k * (base + k - 1.0));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

inline constexpr double kSeriesThreshold = 1e-2;

inline double a_circ(int m, double t, bool modified, const char* who) {
  check_args(m, t, who);
  const double base = 0.5 * m;  // = nu + 1 with nu = (m-2)/2
  if (t < kSeriesThreshold) return normalized_series(base, t, modified ? 1.0 : -1.0);
  const specfun::Order nu(m - 2);
  const double b = modified ? specfun::bessel_i(nu, t) : specfun::bessel_j(nu, t);
  return specfun::gamma(base) * b / std::pow(0.5 * t, nu.value());
}

inline double a_bullet(int m, double t, bool modified, const char* who) {
  check_args(m, t, who);
  const double base = 0.5 * m + 1.0;  // = nu + 1 with nu = m/2
  if (t < kSeriesThreshold) return normalized_series(base, t, modified ? 1.0 : -1.0);
  const specfun::Order nu(m);
  const double b = modified ? specfun::bessel_i(nu, t) : specfun::bessel_j(nu, t);
  return specfun::gamma(base) * b / std::pow(0.5 * t, nu.value());
}

}  // namespace detail

// a_circ(t) = Gamma(m/2) I_{(m-2)/2}(t) / (t/2)^{(m-2)/2}; a_circ(0) = 1.
inline double a_circ_pan(int m, double t) { return detail::a_circ(m, t, true, "a_circ_pan"); }

// a_bullet(t) = Gamma(m/2 + 1) I_{m/2}(t) / (t/2)^{m/2}; a_bullet(0) = 1.
inline double a_bullet_pan(int m, double t) { return detail::a_bullet(m, t, true, "a_bullet_pan"); }

// Helmholtz analogues with J in place of I; for m = 2 these reduce to J_0(t)
// and 2 J_1(t)/t.
inline double a_circ_meta(int m, double t) { return detail::a_circ(m, t, false, "a_circ_meta"); }
inline double a_bullet_meta(int m, double t) { return detail::a_bullet(m, t, false, "a_bullet_meta"); }

// a(t) = 2 [I_0(t) - 1] / t^2, the log-weighted disc coefficient; a(0) = 1/2.
inline double a_log(double t) {
  detail::check_args(2, t, "a_log");
  if (t < detail::kSeriesThreshold) {
    // 1/2 sum_k (t/2)^{2k} (k! (k+1)!)^{-1} ... expressed via the ratio below
    const double q2 = 0.25 * t * t;
    double term = 0.5, sum = 0.5;
    for (int k = 1; k <= 30; ++k) {
      term *= q2 / (k * (k + 1.0));
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    return sum;
  }
  return 2.0 * (specfun::bessel_i(specfun::Order(0), t) - 1.0) / (t * t);
}

// a~(t) = 2 [1 - J_0(t)] / t^2; a~(0) = 1/2, positive but non-monotone.
inline double a_tilde(double t) {
  detail::check_args(2, t, "a_tilde");
  if (t < detail::kSeriesThreshold) {
    const double q2 = 0.25 * t * t;
    double term = 0.5, sum = 0.5;
    for (int k = 1; k <= 30; ++k) {
      term *= -q2 / (k * (k + 1.0));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return 2.0 * (1.0 - specfun::bessel_j(specfun::Order(0), t)) / (t * t);
}

// Quadrature radius of the annulus-to-sphere identity:
//   m >= 3: r* = (2/m (r2^m - r1^m)/(r2^2 - r1^2))^{1/(m-2)}
//   m  = 2: r* = exp((r2^2 log r2 - r1^2 log r1)/(r2^2 - r1^2) - 1/2)
// with the convention r1^2 log r1 -> 0 as r1 -> 0, so ball degenerations are
// exact.
inline double r_star(int m, double r1, double r2) {
  if (m < 2 || m > 5) throw std::out_of_range("r_star: dimension must be in [2, 5]");
  if (!(r1 >= 0.0) || !(r2 > r1))
    throw std::invalid_argument("r_star: need 0 <= r1 < r2");
  const double denom = r2 * r2 - r1 * r1;
  if (m == 2) {
    const double t2 = r2 * r2 * std::log(r2);
    const double t1 = r1 == 0.0 ? 0.0 : r1 * r1 * std::log(r1);
    return std::exp((t2 - t1) / denom - 0.5);
  }
  const double ratio = (2.0 / m) * (std::pow(r2, m) - std::pow(r1, m)) / denom;
  return std::pow(ratio, 1.0 / (m - 2));
}

enum class HelmholtzKind { Pan, Meta };

// The coefficient of Theorems on annular means of pan/metaharmonic fields:
//   [a_bullet(p r2) |B_{r2}| - a_bullet(p r1) |B_{r1}|] / [a_circ(p r) |A|].
// For the Helmholtz case the radius bound r2 < j_{(m-2)/2,1}/lambda keeps the
// denominator away from zero.
inline double annulus_coeff(HelmholtzKind kind, int m, double parameter, double r1, double r2,
                            double r) {
  if (m < 2 || m > 5) throw std::out_of_range("annulus_coeff: dimension must be in [2, 5]");
  if (!(parameter > 0.0))
    throw std::invalid_argument("annulus_coeff: parameter must be positive");
  if (!(r1 > 0.0) || !(r2 > r1))
    throw std::invalid_argument("annulus_coeff: need 0 < r1 < r2");
  if (!(r >= r1 && r <= r2))
    throw PreconditionError("annulus_coeff: sphere radius r must lie in [r1, r2]");
  if (kind == HelmholtzKind::Meta) {
    const double j1 = specfun::bessel_j_first_zero(specfun::Order(m - 2));
    const double bound = j1 / parameter;
    if (!(r2 < bound)) {
      char msg[160];
      std::snprintf(msg, sizeof msg,
                    "annulus_coeff: Helmholtz case needs r2 < j_{(m-2)/2,1}/lambda = %.12g "
                    "(got r2 = %.12g)",
                    bound, r2);
      throw PreconditionError(msg);
    }
  }
  const bool modified = kind == HelmholtzKind::Pan;
  const double vol2 = specfun::unit_sphere_area(m) * std::pow(r2, m) / m;
  const double vol1 = specfun::unit_sphere_area(m) * std::pow(r1, m) / m;
  const double ab2 = detail::a_bullet(m, parameter * r2, modified, "annulus_coeff");
  const double ab1 = detail::a_bullet(m, parameter * r1, modified, "annulus_coeff");
  const double ac = detail::a_circ(m, parameter * r, modified, "annulus_coeff");
  const double den = ac * (vol2 - vol1);
  if (std::abs(den) < 1e-300)
    throw std::runtime_error("annulus_coeff: vanishing denominator");
  return (ab2 * vol2 - ab1 * vol1) / den;
}

struct CoefficientCurve {
  std::string name;
  std::vector<std::pair<double, double>> samples;
};

// 512 uniform samples of the named coefficient on [0, t_max]. The m argument
// is ignored by a_log / a_tilde (both are two-dimensional).
inline CoefficientCurve sample_coefficient(const std::string& name, int m, double t_max) {
  if (!(t_max > 0.0) || t_max > 50.0)
    throw std::invalid_argument("sample_coefficient: t_max must lie in (0, 50]");
  double (*fn2)(double) = nullptr;
  double (*fnm)(int, double) = nullptr;
  if (name == "a_circ_pan") fnm = a_circ_pan;
  else if (name == "a_bullet_pan") fnm = a_bullet_pan;
  else if (name == "a_circ_meta") fnm = a_circ_meta;
  else if (name == "a_bullet_meta") fnm = a_bullet_meta;
  else if (name == "a_log") fn2 = a_log;
  else if (name == "a_tilde") fn2 = a_tilde;
  else throw std::invalid_argument("sample_coefficient: unknown coefficient '" + name + "'");
  CoefficientCurve curve;
  curve.name = name;
  const int n = 512;
  curve.samples.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double t = t_max * i / (n - 1);
    curve.samples.emplace_back(t, fn2 ? fn2(t) : fnm(m, t));
  }
  return curve;
}

// CSV with header `t,value`, 17 significant digits.
inline void write_curve_csv(const CoefficientCurve& curve, std::ostream& os) {
  os << "t,value\n";
  char line[80];
  for (const auto& [t, v] : curve.samples) {
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", t, v);
    os << line;
  }
}

}  // namespace mvq::coeff
