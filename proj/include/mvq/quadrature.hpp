#pragma once

// Deterministic product quadrature for the spherical, volume, annular, and
// logarithmically weighted means. The m = 2 circle uses the periodic
// trapezoid rule; m = 3..5 spheres use Gauss-Gegenbauer nodes in the cosines
// of the polar angles times a trapezoid in azimuth; radial integration is
// composite Gauss-Legendre, geometrically graded toward the center when a
// log(r/s) weight is present. Every public mean carries a two-level error
// estimate obtained by repeating the computation at half resolution.

#include <cmath>
#include <stdexcept>

#include "mvq/gauss.hpp"
#include "mvq/geometry.hpp"
#include "mvq/specfun.hpp"

namespace mvq::quad {

inline double ball_volume(int m, double r) {
  if (m < kMinDim || m > kMaxDim)
    throw std::out_of_range("ball_volume: dimension must be in [2, 5]");
  if (!(r > 0.0)) throw std::invalid_argument("ball_volume: radius must be positive");
  return specfun::unit_sphere_area(m) * std::pow(r, m) / m;
}

namespace detail {

// Calls fn(direction, weight) for every node of the unit-sphere product
// rule; the weights sum to the unit sphere area (up to rounding).
template <typename Fn>
void for_each_unit_sphere_node(int m, const QuadratureSpec& q, Fn&& fn) {
  const double two_pi = 6.283185307179586476925287;
  if (m == 2) {
    const int n = q.azimuth_nodes;
    const double w = two_pi / n;
    std::array<double, kMaxDim> dir{};
    for (int j = 0; j < n; ++j) {
      const double th = two_pi * j / n;
      dir[0] = std::cos(th);
      dir[1] = std::sin(th);
      fn(std::span<const double>{dir.data(), 2}, w);
    }
    return;
  }
  // polar rules: weight (1 - c^2)^{(m-2-k)/2} for the k-th polar cosine
  std::array<std::shared_ptr<const gauss::Rule1D>, 3> polar{};
  const int npolar = m - 2;
  for (int k = 1; k <= npolar; ++k)
    polar[static_cast<size_t>(k) - 1] = gauss::gegenbauer_rule(q.angular_nodes, 0.5 * (m - 2 - k));
  const int naz = q.azimuth_nodes;
  const double waz = two_pi / naz;

  std::array<int, 3> idx{};
  std::array<double, kMaxDim> dir{};
  const int total = [&] {
    int t = 1;
    for (int k = 0; k < npolar; ++k) t *= q.angular_nodes;
    return t;
  }();
  for (int flat = 0; flat < total; ++flat) {
    int rem = flat;
    for (int k = npolar - 1; k >= 0; --k) {
      idx[static_cast<size_t>(k)] = rem % q.angular_nodes;
      rem /= q.angular_nodes;
    }
    double prefix = 1.0;
    double wpolar = 1.0;
    for (int k = 0; k < npolar; ++k) {
      const auto& rule = *polar[static_cast<size_t>(k)];
      const double c = rule.x[static_cast<size_t>(idx[static_cast<size_t>(k)])];
      wpolar *= rule.w[static_cast<size_t>(idx[static_cast<size_t>(k)])];
      dir[static_cast<size_t>(k)] = prefix * c;
      prefix *= std::sqrt(std::max(0.0, 1.0 - c * c));
    }
    for (int j = 0; j < naz; ++j) {
      const double ph = two_pi * j / naz;
      dir[static_cast<size_t>(m) - 2] = prefix * std::cos(ph);
      dir[static_cast<size_t>(m) - 1] = prefix * std::sin(ph);
      fn(std::span<const double>{dir.data(), static_cast<size_t>(m)}, wpolar * waz);
    }
  }
}

// Unit-sphere integral of u(center + s * dir): returns (sum of w*u, sum of w).
struct ShellSum {
  double integral;
  double weight;
};

inline ShellSum shell_integral(const Field& u, const Point& center, double s,
                               const QuadratureSpec& q) {
  const int m = center.dim();
  long double acc = 0.0L, wacc = 0.0L;
  std::array<double, kMaxDim> y{};
  for_each_unit_sphere_node(m, q, [&](std::span<const double> dir, double w) {
    for (int i = 0; i < m; ++i) y[static_cast<size_t>(i)] = center[i] + s * dir[static_cast<size_t>(i)];
    acc += (long double)(w * u(std::span<const double>{y.data(), static_cast<size_t>(m)}));
    wacc += (long double)w;
  });
  return {static_cast<double>(acc), static_cast<double>(wacc)};
}

// Composite Gauss-Legendre over the given panel boundaries.
template <typename Fn>
double radial_integral(const std::vector<double>& bounds, int order, Fn&& f) {
  const auto rule = gauss::legendre_rule(order);
  long double acc = 0.0L;
  for (size_t p = 0; p + 1 < bounds.size(); ++p) {
    const double a = bounds[p], b = bounds[p + 1];
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (size_t i = 0; i < rule->x.size(); ++i)
      acc += (long double)(half * rule->w[i] * f(mid + half * rule->x[i]));
  }
  return static_cast<double>(acc);
}

inline std::vector<double> uniform_panels(double a, double b, int count) {
  std::vector<double> bounds(static_cast<size_t>(count) + 1);
  for (int i = 0; i <= count; ++i) bounds[static_cast<size_t>(i)] = a + (b - a) * i / count;
  return bounds;
}

// Panels geometrically graded toward 0: [0, R g^{P-1}], ..., [R g, R].
inline std::vector<double> graded_panels(double r, int count, double ratio) {
  std::vector<double> bounds(static_cast<size_t>(count) + 1);
  bounds[0] = 0.0;
  for (int i = 1; i <= count; ++i)
    bounds[static_cast<size_t>(i)] = r * std::pow(ratio, count - i);
  return bounds;
}

inline double sphere_mean_once(const Field& u, const GeometrySpec& s, const QuadratureSpec& q) {
  const auto shell = shell_integral(u, s.center, s.r2, q);
  return shell.integral / shell.weight;
}

inline double radial_mean_once(const Field& u, const GeometrySpec& g, double rlo, double rhi,
                               bool graded_at_zero, double log_weight_radius,
                               const QuadratureSpec& q) {
  const int m = g.dim();
  const bool weighted = log_weight_radius > 0.0;
  const int panels = weighted ? std::max(16, q.radial_panels) : q.radial_panels;
  const int order = weighted ? std::max(8, q.radial_order) : q.radial_order;
  const auto bounds = graded_at_zero ? graded_panels(rhi, panels, q.grading_ratio)
                                     : uniform_panels(rlo, rhi, panels);
  double wsum = 0.0;
  const double numer = radial_integral(bounds, order, [&](double s) {
    const auto shell = shell_integral(u, g.center, s, q);
    wsum = shell.weight;
    const double w = weighted ? std::log(log_weight_radius / s) : 1.0;
    return std::pow(s, m - 1) * w * shell.integral;
  });
  // measure of the domain through the same radial rule (exact for s^{m-1})
  const double denom =
      radial_integral(bounds, order, [&](double s) { return std::pow(s, m - 1); }) * wsum;
  return numer / denom;
}

}  // namespace detail

// Spherical mean (1/|S_r|) \int_{S_r(x)} u dS.
inline MeanValue sphere_mean(const Field& u, const GeometrySpec& s, const QuadratureSpec& q) {
  if (s.kind != GeomKind::Sphere) throw std::invalid_argument("sphere_mean: geometry is not a sphere");
  q.validate();
  const double full = detail::sphere_mean_once(u, s, q);
  const double half = detail::sphere_mean_once(u, s, q.halved());
  return {full, std::abs(full - half)};
}

// Volume mean (1/|B_r|) \int_{B_r(x)} u dy.
inline MeanValue ball_mean(const Field& u, const GeometrySpec& b, const QuadratureSpec& q) {
  if (b.kind != GeomKind::Ball) throw std::invalid_argument("ball_mean: geometry is not a ball");
  q.validate();
  const double full = detail::radial_mean_once(u, b, 0.0, b.r2, false, 0.0, q);
  const double half = detail::radial_mean_once(u, b, 0.0, b.r2, false, 0.0, q.halved());
  return {full, std::abs(full - half)};
}

// Volume mean over the annulus A_x(r1, r2).
inline MeanValue annulus_mean(const Field& u, const GeometrySpec& a, const QuadratureSpec& q) {
  if (a.kind != GeomKind::Annulus)
    throw std::invalid_argument("annulus_mean: geometry is not an annulus");
  q.validate();
  const double full = detail::radial_mean_once(u, a, a.r1, a.r2, false, 0.0, q);
  const double half = detail::radial_mean_once(u, a, a.r1, a.r2, false, 0.0, q.halved());
  return {full, std::abs(full - half)};
}

// Plain integral average (1/|g|) \int_g u(y) log(r_weight/|x-y|) dy over a
// ball or annulus centered at x. Callers apply the dimensional prefactor
// (m, or 2 with a(mu r) weighting) required by the identity at hand.
inline MeanValue log_weighted_mean(const Field& u, const GeometrySpec& g, double r_weight,
                                   const QuadratureSpec& q) {
  if (g.kind == GeomKind::Sphere)
    throw std::invalid_argument("log_weighted_mean: geometry must be a ball or annulus");
  if (!(r_weight > 0.0))
    throw std::invalid_argument("log_weighted_mean: weight radius must be positive");
  q.validate();
  const bool is_ball = g.kind == GeomKind::Ball;
  const double full =
      detail::radial_mean_once(u, g, g.r1, g.r2, /*graded_at_zero=*/is_ball, r_weight, q);
  const double half =
      detail::radial_mean_once(u, g, g.r1, g.r2, is_ball, r_weight, q.halved());
  return {full, std::abs(full - half)};
}

// \int_{S_r(x)} dw/dn dS for m = 2, with the radial unit normal.
inline double normal_derivative_circle_integral(const GradientField& grad, const GeometrySpec& s,
                                                const QuadratureSpec& q) {
  if (s.kind != GeomKind::Sphere)
    throw std::invalid_argument("normal_derivative_circle_integral: geometry is not a sphere");
  if (s.dim() != 2)
    throw std::invalid_argument("normal_derivative_circle_integral: only m = 2 is supported");
  if (!grad) throw std::invalid_argument("normal_derivative_circle_integral: gradient required");
  q.validate();
  const double two_pi = 6.283185307179586476925287;
  const int n = q.azimuth_nodes;
  long double acc = 0.0L;
  std::array<double, 2> y{}, gv{};
  for (int j = 0; j < n; ++j) {
    const double th = two_pi * j / n;
    const double nx = std::cos(th), ny = std::sin(th);
    y[0] = s.center[0] + s.r2 * nx;
    y[1] = s.center[1] + s.r2 * ny;
    grad(std::span<const double>{y.data(), 2}, std::span<double>{gv.data(), 2});
    acc += (long double)(gv[0] * nx + gv[1] * ny);
  }
  return static_cast<double>(acc * (two_pi * s.r2 / n));
}

}  // namespace mvq::quad
