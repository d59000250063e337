#pragma once

// Self-contained special functions: Gamma at (half-)integer arguments,
// modified Bessel I_nu, Bessel J_nu for 2*nu in {0..5}, first positive
// Bessel zeros, and the total area of the unit sphere.

#include <cmath>
#include <stdexcept>
#include <string>

namespace mvq::specfun {

namespace detail {
#if defined(__SIZEOF_FLOAT128__)
using wide_float = __float128;
inline constexpr double kJSeriesCrossover = 15.0;
#else
using wide_float = long double;
inline constexpr double kJSeriesCrossover = 13.0;
#endif

inline wide_float wabs(wide_float x) { return x < 0 ? -x : x; }
}  // namespace detail

// Bessel order nu stored as 2*nu, so integer and half-integer orders are
// exact. Only 0 <= nu <= 5/2 ever arises (nu = (m-2)/2 and m/2 for
// dimensions 2..5, plus nu = 2 for the I-derivative identity).
class Order {
 public:
  explicit constexpr Order(int twice_nu) : twice_(twice_nu) {
    if (twice_nu < 0 || twice_nu > 5)
      throw std::domain_error("Order: 2*nu must lie in [0, 5]");
  }
  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

 private:
  int twice_;
};

// Gamma(x) for x > 0. Half-integer and integer arguments are evaluated by
// the recurrence from Gamma(1/2) = sqrt(pi) and Gamma(1) = 1, which keeps
// them exact to a few ulp; anything else falls through to std::tgamma.
inline double gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma: argument must be positive");
  const double twice = 2.0 * x;
  const double twice_rounded = std::round(twice);
  if (std::abs(twice - twice_rounded) < 1e-12 && twice_rounded <= 400.0) {
    const long n2 = static_cast<long>(twice_rounded);
    long double acc;
    double base;
    if (n2 % 2 == 0) {
      acc = 1.0L;  // Gamma(1)
      base = 1.0;
    } else {
      acc = 1.772453850905516027298167483341145183L;  // Gamma(1/2) = sqrt(pi)
      base = 0.5;
    }
    for (double y = base; y + 0.5 < x; y += 1.0) acc *= (long double)y;
    return static_cast<double>(acc);
  }
  return std::tgamma(x);
}

// omega_m = 2 pi^{m/2} / Gamma(m/2), the area of the unit sphere S^{m-1}.
inline double unit_sphere_area(int m) {
  if (m < 2 || m > 5)
    throw std::out_of_range("unit_sphere_area: dimension must be in [2, 5]");
  const double pi = 3.14159265358979323846;
  return 2.0 * std::pow(pi, 0.5 * m) / gamma(0.5 * m);
}

namespace detail {

inline void check_t_range(double t, const char* who) {
  if (!(t >= 0.0) || t > 50.0)
    throw std::out_of_range(std::string(who) + ": t must lie in [0, 50]");
}

// Ascending series sum_k s^k (t/2)^{2k+nu} / (k! Gamma(nu+k+1)) with
// s = +1 for I and s = -1 for J. Accumulated in a wider type; for J the
// partial sums can exceed the result by ~e^t/2, which is why the series is
// abandoned above kJSeriesCrossover in favour of the Hankel expansion.
inline double cyl_series(Order nu, double t, bool modified) {
  if (t == 0.0) return nu.twice() == 0 ? 1.0 : 0.0;
  const double nuv = nu.value();
  const wide_float q2 = wide_float(t) * wide_float(t) / 4;
  const wide_float sign = modified ? wide_float(1) : wide_float(-1);
  wide_float term = wide_float(1) / wide_float(gamma(nuv + 1.0));
  wide_float sum = term;
  wide_float scale = wabs(term);
  for (int k = 1; k < 500; ++k) {
    term *= sign * q2 / (wide_float(k) * wide_float(nuv + k));
    sum += term;
    if (wabs(sum) > scale) scale = wabs(sum);
    if (wabs(term) < scale * wide_float(1e-19) && q2 < wide_float(k) * wide_float(nuv + k))
      break;
  }
  const long double pref = std::pow((long double)t / 2.0L, (long double)nuv);
  return static_cast<double>((long double)sum * pref);
}

// Hankel's large-argument expansion, truncated at its smallest term.
inline double bessel_j_asymptotic(Order nu, double t) {
  const double pi = 3.14159265358979323846;
  const long double mu = 4.0L * nu.value() * nu.value();
  long double P = 1.0L, Q = 0.0L;
  long double c = 1.0L;
  long double prev = 1e300L;
  for (int k = 1; k < 80; ++k) {
    const long double odd = 2.0L * k - 1.0L;
    c *= (mu - odd * odd) / (8.0L * k * (long double)t);
    if (std::abs((double)c) >= (double)prev) break;  // past the smallest term
    prev = c < 0 ? -c : c;
    switch (k % 4) {
      case 0: P += c; break;
      case 1: Q += c; break;
      case 2: P -= c; break;
      case 3: Q -= c; break;
    }
    if ((double)prev < 1e-19) break;
  }
  const long double omega = (long double)t - (0.5L * nu.value() + 0.25L) * pi;
  const long double amp = std::sqrt(2.0L / (pi * (long double)t));
  return static_cast<double>(amp * (P * std::cos(omega) - Q * std::sin(omega)));
}

inline constexpr double kHalfIntegerClosedFormMin = 1.0;

inline double bessel_i_half(int twice_nu, double t) {
  const double pref = std::sqrt(2.0 / (3.14159265358979323846 * t));
  const double sh = std::sinh(t), ch = std::cosh(t);
  switch (twice_nu) {
    case 1: return pref * sh;
    case 3: return pref * (ch - sh / t);
    case 5: return pref * ((1.0 + 3.0 / (t * t)) * sh - 3.0 * ch / t);
    default: throw std::domain_error("bessel_i_half: unsupported order");
  }
}

inline double bessel_j_half(int twice_nu, double t) {
  const double pref = std::sqrt(2.0 / (3.14159265358979323846 * t));
  const double sn = std::sin(t), cs = std::cos(t);
  switch (twice_nu) {
    case 1: return pref * sn;
    case 3: return pref * (sn / t - cs);
    case 5: return pref * ((3.0 / (t * t) - 1.0) * sn - 3.0 * cs / t);
    default: throw std::domain_error("bessel_j_half: unsupported order");
  }
}

}  // namespace detail

// Modified Bessel function I_nu(t) on [0, 50]. The ascending series has
// positive terms only, so it stays accurate over the whole supported range;
// half-integer orders use their closed forms once t is large enough that
// they do not cancel.
inline double bessel_i(Order nu, double t) {
  detail::check_t_range(t, "bessel_i");
  if (!nu.is_integer() && t >= detail::kHalfIntegerClosedFormMin)
    return detail::bessel_i_half(nu.twice(), t);
  return detail::cyl_series(nu, t, /*modified=*/true);
}

// Bessel function J_nu(t) on [0, 50].
inline double bessel_j(Order nu, double t) {
  detail::check_t_range(t, "bessel_j");
  if (!nu.is_integer() && t >= detail::kHalfIntegerClosedFormMin)
    return detail::bessel_j_half(nu.twice(), t);
  if (t > detail::kJSeriesCrossover) return detail::bessel_j_asymptotic(nu, t);
  return detail::cyl_series(nu, t, /*modified=*/false);
}

// dJ_nu/dt via J'_nu = (nu/t) J_nu - J_{nu+1} (valid for t > 0).
inline double bessel_j_derivative(Order nu, double t) {
  if (t <= 0.0) throw std::domain_error("bessel_j_derivative: t must be positive");
  return nu.value() / t * bessel_j(nu, t) - bessel_j(Order(nu.twice() + 2), t);
}

// First positive zero j_{nu,1} for nu in {0, 1/2, 1, 3/2}: bracketed by a
// scan of (0, 10], bisected to width 1e-6, then polished by Newton.
inline double bessel_j_first_zero(Order nu) {
  if (nu.twice() > 3)
    throw std::domain_error("bessel_j_first_zero: order must be <= 3/2");
  double lo = 0.25, hi = 0.0;
  double flo = bessel_j(nu, lo);
  for (double t = 0.5; t <= 10.0 + 1e-12; t += 0.25) {
    const double ft = bessel_j(nu, t);
    if (flo > 0.0 && ft <= 0.0) {
      hi = t;
      break;
    }
    lo = t;
    flo = ft;
  }
  if (hi == 0.0)
    throw std::runtime_error("bessel_j_first_zero: failed to bracket in (0, 10]");
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    if (bessel_j(nu, mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double z = 0.5 * (lo + hi);
  for (int it = 0; it < 12; ++it) {
    const double f = bessel_j(nu, z);
    const double df = bessel_j_derivative(nu, z);
    const double step = f / df;
    z -= step;
    if (std::abs(step) < 1e-14 * z) break;
  }
  return z;
}

}  // namespace mvq::specfun
