#pragma once

// Integration domains (spheres, balls, annuli), quadrature controls, and the
// scalar-field callable type shared by every mean-value computation.

#include <array>
#include <cmath>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>

namespace mvq {

inline constexpr int kMaxDim = 5;
inline constexpr int kMinDim = 2;

// A point of R^m, 2 <= m <= 5. Fixed storage keeps quadrature loops free of
// allocations.
class Point {
 public:
  Point() : dim_(kMinDim) {}
  Point(std::initializer_list<double> coords) { assign({coords.begin(), coords.size()}); }
  explicit Point(std::span<const double> coords) { assign(coords); }

  static Point zero(int m) {
    if (m < kMinDim || m > kMaxDim)
      throw std::invalid_argument("Point: dimension must be in [2, 5]");
    Point p;
    p.dim_ = m;
    return p;
  }

  int dim() const { return dim_; }
  double operator[](int i) const { return c_[static_cast<size_t>(i)]; }
  double& operator[](int i) { return c_[static_cast<size_t>(i)]; }
  std::span<const double> view() const { return {c_.data(), static_cast<size_t>(dim_)}; }

  double norm() const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += c_[static_cast<size_t>(i)] * c_[static_cast<size_t>(i)];
    return std::sqrt(s);
  }

  friend double distance(const Point& a, const Point& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("distance: dimension mismatch");
    double s = 0.0;
    for (int i = 0; i < a.dim_; ++i) {
      const double d = a[i] - b[i];
      s += d * d;
    }
    return std::sqrt(s);
  }

 private:
  void assign(std::span<const double> coords) {
    if (coords.size() < kMinDim || coords.size() > kMaxDim)
      throw std::invalid_argument("Point: dimension must be in [2, 5]");
    dim_ = static_cast<int>(coords.size());
    for (int i = 0; i < dim_; ++i) {
      if (!std::isfinite(coords[static_cast<size_t>(i)]))
        throw std::invalid_argument("Point: coordinates must be finite");
      c_[static_cast<size_t>(i)] = coords[static_cast<size_t>(i)];
    }
  }

  std::array<double, kMaxDim> c_{};
  int dim_;
};

// Scalar field u: R^m -> R and its gradient. Evaluators must be pure and
// reentrant; quadrature may invoke them from several workers.
using Field = std::function<double(std::span<const double>)>;
using GradientField = std::function<void(std::span<const double>, std::span<double>)>;

enum class GeomKind { Sphere, Ball, Annulus };

inline const char* to_string(GeomKind k) {
  switch (k) {
    case GeomKind::Sphere: return "Sphere";
    case GeomKind::Ball: return "Ball";
    case GeomKind::Annulus: return "Annulus";
  }
  return "?";
}

// Sphere S_{r2}(center), ball B_{r2}(center), or annulus
// A_center(r1, r2) = { y : r1 < |y - center| < r2 }. Spheres and balls keep
// r1 = 0; an annulus constructed with r1 = 0 degenerates to a ball.
struct GeometrySpec {
  GeomKind kind = GeomKind::Ball;
  Point center;
  double r1 = 0.0;
  double r2 = 1.0;

  int dim() const { return center.dim(); }

  static GeometrySpec sphere(Point center, double r) {
    validate_radii(0.0, r);
    return {GeomKind::Sphere, center, 0.0, r};
  }
  static GeometrySpec ball(Point center, double r) {
    validate_radii(0.0, r);
    return {GeomKind::Ball, center, 0.0, r};
  }
  static GeometrySpec annulus(Point center, double r1, double r2) {
    validate_radii(r1, r2);
    if (r1 == 0.0) return ball(center, r2);
    return {GeomKind::Annulus, center, r1, r2};
  }

 private:
  static void validate_radii(double r1, double r2) {
    if (!(r1 >= 0.0) || !(r2 > r1) || !std::isfinite(r2))
      throw std::invalid_argument("GeometrySpec: need 0 <= r1 < r2 < inf");
  }
};

// Node counts and grading for all deterministic quadratures. angular_nodes
// applies per polar angle (m >= 3), azimuth_nodes to the periodic trapezoid
// rule, and the radial rule uses radial_panels composite panels of
// Gauss-Legendre order radial_order. grading_ratio controls the geometric
// grading that absorbs the integrable log endpoint of weighted means.
struct QuadratureSpec {
  int angular_nodes = 32;
  int azimuth_nodes = 64;
  int radial_panels = 8;
  int radial_order = 12;
  double grading_ratio = 0.5;

  void validate() const {
    if (angular_nodes < 4 || azimuth_nodes < 4 || radial_panels < 4 || radial_order < 4)
      throw std::invalid_argument("QuadratureSpec: node counts must be >= 4");
    if (!(grading_ratio >= 0.1 && grading_ratio <= 0.9))
      throw std::invalid_argument("QuadratureSpec: grading_ratio must lie in [0.1, 0.9]");
  }

  // Half-resolution companion used for the two-level error estimate.
  QuadratureSpec halved() const {
    QuadratureSpec h = *this;
    h.angular_nodes = std::max(4, angular_nodes / 2);
    h.azimuth_nodes = std::max(4, azimuth_nodes / 2);
    h.radial_panels = std::max(4, radial_panels / 2);
    h.radial_order = std::max(4, radial_order / 2);
    return h;
  }

  QuadratureSpec refined(int factor) const {
    QuadratureSpec r = *this;
    r.angular_nodes *= factor;
    r.azimuth_nodes *= factor;
    r.radial_panels *= factor;
    r.radial_order *= factor;
    return r;
  }
};

// A computed mean together with a two-level Richardson-style error estimate
// (|value - value at half resolution|).
struct MeanValue {
  double value = 0.0;
  double error_estimate = 0.0;
};

}  // namespace mvq
