#pragma once

// Numerical probes of the open statements: the log-weighted annular mean
// versus the sphere mean (harmonic and panharmonic cases) and the converse
// of the subharmonic annular inequality. Probes emit residual geometry
// (curves, sign-change roots, perturbation slopes); they never assert truth
// or falsity of a conjecture.

#include <cmath>
#include <string>
#include <vector>

#include "mvq/identities.hpp"

namespace mvq::conjectures {

enum class ConjectureId { C3_1, C5_1, Q2_subharmonic };

inline const char* to_string(ConjectureId c) {
  switch (c) {
    case ConjectureId::C3_1: return "C3_1";
    case ConjectureId::C5_1: return "C5_1";
    case ConjectureId::Q2_subharmonic: return "Q2_subharmonic";
  }
  return "?";
}

inline ConjectureId conjecture_from_string(const std::string& s) {
  if (s == "C3_1" || s == "3.1") return ConjectureId::C3_1;
  if (s == "C5_1" || s == "5.1") return ConjectureId::C5_1;
  if (s == "Q2_subharmonic" || s == "2q") return ConjectureId::Q2_subharmonic;
  throw std::invalid_argument("conjectures: unknown conjecture '" + s + "'");
}

struct PerturbationPoint {
  double eps;
  double max_residual_change;  // max_r |residual(f + eps v) - residual(f)|
};

struct ProbeReport {
  ConjectureId conjecture = ConjectureId::C3_1;
  std::string family_id;
  GeometrySpec geometry;
  std::vector<std::pair<double, double>> residual_curve;  // (r, lhs - rhs)
  std::vector<double> roots;                              // sign changes of the residual
  std::vector<PerturbationPoint> perturbation_response;
  bool counterexample_candidate = false;  // Q2 probe only; recorded, never asserted
  std::string note;
};

// 50 Chebyshev-spaced radii on (0.05 r2, r2]: clustered at both ends.
inline std::vector<double> default_r_grid(double r2, int n = 50) {
  const double a = 0.05 * r2, b = r2;
  const double pi = 3.14159265358979323846;
  std::vector<double> grid(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k)
    grid[static_cast<size_t>(k)] = a + (b - a) * 0.5 * (1.0 - std::cos(pi * k / (n - 1)));
  return grid;
}

namespace detail {

inline std::vector<double> residuals_on_grid(ConjectureId conj, const SolutionFamily& f,
                                             const GeometrySpec& annulus,
                                             std::span<const double> r_grid,
                                             const QuadratureSpec& q) {
  const int m = annulus.dim();
  std::vector<double> res;
  res.reserve(r_grid.size());
  for (const double r : r_grid) {
    if (!(r > 0.0) || r > annulus.r2 * (1.0 + 1e-12))
      throw std::invalid_argument("conjectures: grid radii must lie in (0, r2]");
    const auto lwm = quad::log_weighted_mean(f.evaluate, annulus, r, q);
    const auto sph =
        quad::sphere_mean(f.evaluate, GeometrySpec::sphere(annulus.center, r), q);
    double lhs, rhs;
    if (conj == ConjectureId::C3_1) {
      lhs = m * lwm.value;
      rhs = sph.value;
    } else {
      lhs = 2.0 * lwm.value;
      rhs = coeff::a_log(f.parameter * r) * sph.value;
    }
    res.push_back(lhs - rhs);
  }
  return res;
}

inline std::vector<double> sign_change_roots(std::span<const double> r_grid,
                                             std::span<const double> residuals) {
  std::vector<double> roots;
  for (size_t i = 0; i + 1 < residuals.size(); ++i) {
    const double a = residuals[i], b = residuals[i + 1];
    if (a == 0.0) roots.push_back(r_grid[i]);
    if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0))
      roots.push_back(r_grid[i] + (r_grid[i + 1] - r_grid[i]) * (-a) / (b - a));
  }
  if (!residuals.empty() && residuals.back() == 0.0) roots.push_back(r_grid.back());
  return roots;
}

inline double fd_laplacian(const Field& u, const Point& x, double h) {
  const int m = x.dim();
  std::array<double, kMaxDim> y{};
  for (int i = 0; i < m; ++i) y[static_cast<size_t>(i)] = x[i];
  const std::span<const double> yv{y.data(), static_cast<size_t>(m)};
  const double c = u(yv);
  double lap = 0.0;
  for (int i = 0; i < m; ++i) {
    const double o = y[static_cast<size_t>(i)];
    y[static_cast<size_t>(i)] = o + h;
    const double up = u(yv);
    y[static_cast<size_t>(i)] = o - h;
    const double dn = u(yv);
    y[static_cast<size_t>(i)] = o;
    lap += (up - 2.0 * c + dn) / (h * h);
  }
  return lap;
}

}  // namespace detail

// Residual curve of the conjectured log-weighted annular identity:
//   C3_1:  m/|A| int_A u log(r/|x-y|) dy  vs  sphere mean at radius r
//   C5_1:  2/|A| int_A u log(r/|x-y|) dy  vs  a(mu r) * sphere mean
// Radii may scan below r1; every probe sphere stays inside B_{r2}(x).
inline ProbeReport probe_weighted_annulus(ConjectureId conj, const SolutionFamily& f,
                                          const GeometrySpec& annulus,
                                          std::span<const double> r_grid,
                                          const QuadratureSpec& q) {
  if (conj != ConjectureId::C3_1 && conj != ConjectureId::C5_1)
    throw std::invalid_argument("probe_weighted_annulus: conjecture must be C3_1 or C5_1");
  if (annulus.kind != GeomKind::Annulus)
    throw std::invalid_argument("probe_weighted_annulus: geometry must be an annulus");
  if (conj == ConjectureId::C3_1 && f.kind != SolutionKind::Harmonic)
    throw std::invalid_argument("probe_weighted_annulus: C3_1 needs a harmonic family");
  if (conj == ConjectureId::C5_1) {
    if (f.kind != SolutionKind::Panharmonic)
      throw std::invalid_argument("probe_weighted_annulus: C5_1 needs a panharmonic family");
    if (annulus.dim() != 2)
      throw std::invalid_argument("probe_weighted_annulus: C5_1 is stated for m = 2");
  }
  if (!identities::admissible(f, annulus, /*full_ball_hypothesis=*/true))
    throw PreconditionError("probe_weighted_annulus: geometry not admissible for family");

  ProbeReport rep;
  rep.conjecture = conj;
  rep.family_id = f.id;
  rep.geometry = annulus;
  const auto res = detail::residuals_on_grid(conj, f, annulus, r_grid, q);
  for (size_t i = 0; i < r_grid.size(); ++i) rep.residual_curve.emplace_back(r_grid[i], res[i]);
  rep.roots = detail::sign_change_roots(r_grid, res);
  return rep;
}

// Same probe with a perturbation study: for each eps, the max over the grid
// of |residual(f + eps v) - residual(f)|. All functionals are linear in the
// field, so this response is linear in eps.
inline ProbeReport probe_weighted_annulus_perturbed(ConjectureId conj, const SolutionFamily& f,
                                                    const SolutionFamily& v,
                                                    std::span<const double> eps_values,
                                                    const GeometrySpec& annulus,
                                                    std::span<const double> r_grid,
                                                    const QuadratureSpec& q) {
  ProbeReport rep = probe_weighted_annulus(conj, f, annulus, r_grid, q);
  std::vector<double> base;
  base.reserve(rep.residual_curve.size());
  for (const auto& [r, d] : rep.residual_curve) base.push_back(d);
  for (const double eps : eps_values) {
    SolutionFamily fp = perturb(f, v, eps);
    fp.parameter = f.parameter;  // C5_1 keeps the weight a(mu r) of the base field
    const auto res = detail::residuals_on_grid(conj, fp, annulus, r_grid, q);
    double worst = 0.0;
    for (size_t i = 0; i < res.size(); ++i)
      worst = std::max(worst, std::abs(res[i] - base[i]));
    rep.perturbation_response.push_back({eps, worst});
  }
  return rep;
}

// The open question of the converse subharmonic annular inequality: evaluate
// M(A) - M(S_r) on the grid and cross-check the sign of the finite-difference
// Laplacian. A field with mixed-sign Laplacian that still satisfies the
// inequality on the whole grid is flagged as a candidate (recorded only).
inline ProbeReport probe_subharmonic_annulus_converse(const SolutionFamily& f,
                                                      const GeometrySpec& annulus,
                                                      std::span<const double> r_grid,
                                                      const QuadratureSpec& q) {
  if (annulus.kind != GeomKind::Annulus)
    throw std::invalid_argument("probe_subharmonic_annulus_converse: geometry must be an annulus");
  ProbeReport rep;
  rep.conjecture = ConjectureId::Q2_subharmonic;
  rep.family_id = f.id;
  rep.geometry = annulus;

  const auto ann = quad::annulus_mean(f.evaluate, annulus, q);
  double tol = 1e-8 + 10.0 * ann.error_estimate;
  bool holds_everywhere = true;
  for (const double r : r_grid) {
    const auto sph = quad::sphere_mean(f.evaluate, GeometrySpec::sphere(annulus.center, r), q);
    const double d = ann.value - sph.value;
    rep.residual_curve.emplace_back(r, d);
    const double scale = std::max({1.0, std::abs(ann.value), std::abs(sph.value)});
    if (d > tol * scale + 10.0 * sph.error_estimate) holds_everywhere = false;
  }
  {
    std::vector<double> res;
    res.reserve(rep.residual_curve.size());
    std::vector<double> rs;
    for (const auto& [r, d] : rep.residual_curve) {
      rs.push_back(r);
      res.push_back(d);
    }
    rep.roots = detail::sign_change_roots(rs, res);
  }

  // oracle sign of the Laplacian on a deterministic scatter in B_{r2}(x)
  double lap_min = 1e300, lap_max = -1e300;
  const int m = annulus.dim();
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int accepted = 0; accepted < 64;) {
    std::array<double, kMaxDim> off{};
    double norm2 = 0.0;
    for (int i = 0; i < m; ++i) {
      off[static_cast<size_t>(i)] = unif(rng);
      norm2 += off[static_cast<size_t>(i)] * off[static_cast<size_t>(i)];
    }
    if (norm2 > 1.0) continue;
    Point p = annulus.center;
    for (int i = 0; i < m; ++i) p[i] = p[i] + 0.9 * annulus.r2 * off[static_cast<size_t>(i)];
    ++accepted;
    if (f.singular_point && distance(p, *f.singular_point) < f.exclusion_radius + 1e-2)
      continue;
    const double lap = detail::fd_laplacian(f.evaluate, p, 1e-4);
    lap_min = std::min(lap_min, lap);
    lap_max = std::max(lap_max, lap);
  }
  const double lap_tol = 1e-5;
  const bool mixed_sign = lap_min < -lap_tol && lap_max > lap_tol;
  rep.counterexample_candidate = mixed_sign && holds_everywhere;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "fd laplacian range [%.6g, %.6g]; inequality %s on the grid", lap_min, lap_max,
                holds_everywhere ? "holds" : "fails somewhere");
  rep.note = buf;
  return rep;
}

}  // namespace mvq::conjectures
