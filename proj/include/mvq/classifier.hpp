#pragma once

// Operationalizes the converse theorems: probe a black-box field with sphere
// means, invert the monotone coefficient curves for mu or lambda, then
// confirm the matching identity family over a center/radius grid.

#include <algorithm>
#include <cmath>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mvq/coefficients.hpp"
#include "mvq/identities.hpp"

namespace mvq::classifier {

enum class Verdict { Harmonic, Panharmonic, Metaharmonic, Subharmonic, Unclassified };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Harmonic: return "Harmonic";
    case Verdict::Panharmonic: return "Panharmonic";
    case Verdict::Metaharmonic: return "Metaharmonic";
    case Verdict::Subharmonic: return "Subharmonic";
    case Verdict::Unclassified: return "Unclassified";
  }
  return "?";
}

struct Thresholds {
  double identity_residual = 1e-6;   // relative residual admitted by a verdict
  double harmonic_ratio_band = 1e-6; // |M_sphere/u - 1| within this reads as harmonic
  double center_floor = 0.1;         // skip centers with |u| < floor * max|u|
};

struct ClassificationResult {
  Verdict verdict = Verdict::Unclassified;
  std::optional<double> parameter_estimate;  // mu-hat or lambda-hat
  double parameter_spread = 0.0;             // interquartile range across probes
  std::vector<identities::IdentityReport> evidence;
  Thresholds thresholds;
  std::string diagnostic;
};

// Solves a_circ(m, p r) = rho for p on the monotone branch: the modified
// Helmholtz curve increases from 1, the Helmholtz curve decreases from 1 and
// stays invertible until the first zero of J_{(m-2)/2}.
inline double invert_a_circ(coeff::HelmholtzKind kind, int m, double rho, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("invert_a_circ: radius must be positive");
  if (kind == coeff::HelmholtzKind::Pan) {
    if (!(rho > 1.0)) throw std::invalid_argument("invert_a_circ: pan ratio must exceed 1");
    double lo = 0.0, hi = 1.0 / r;
    while (coeff::a_circ_pan(m, hi * r) < rho) {
      lo = hi;
      hi *= 2.0;
      if (hi * r > 50.0)
        throw std::runtime_error("invert_a_circ: ratio outside the supported pan branch");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (coeff::a_circ_pan(m, mid * r) < rho ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }
  if (!(rho < 1.0) || !(rho > 0.0))
    throw std::runtime_error("invert_a_circ: ratio outside the first Helmholtz branch");
  const double j1 = specfun::bessel_j_first_zero(specfun::Order(m - 2));
  double lo = 0.0, hi = (1.0 - 1e-12) * j1 / r;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (coeff::a_circ_meta(m, mid * r) > rho ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct ProbeEstimate {
  Verdict hint = Verdict::Unclassified;
  std::optional<double> estimate;
  double spread = 0.0;
  int probes_used = 0;
  std::string diagnostic;
};

// Ratio probes rho = M_sphere / u(x) across (center, radius) pairs; the
// median of the per-probe inversions estimates the parameter and the
// interquartile range its dispersion. Centers where |u| is below
// center_floor * max|u| are skipped as ill-conditioned.
inline ProbeEstimate estimate_parameter(const Field& u, int m, std::span<const Point> centers,
                                        std::span<const double> radii, const QuadratureSpec& q,
                                        const Thresholds& thr = {}) {
  if (centers.empty() || radii.empty())
    throw std::invalid_argument("estimate_parameter: need at least one center and radius");
  std::vector<double> uvals(centers.size());
  double umax = 0.0;
  for (size_t i = 0; i < centers.size(); ++i) {
    uvals[i] = u(centers[i].view());
    umax = std::max(umax, std::abs(uvals[i]));
  }
  int usable = 0;
  int above = 0, below = 0, near = 0;
  std::vector<double> pan_estimates, meta_estimates;
  for (size_t i = 0; i < centers.size(); ++i) {
    if (std::abs(uvals[i]) < thr.center_floor * umax) continue;
    for (const double r : radii) {
      const auto mv = quad::sphere_mean(u, GeometrySpec::sphere(centers[i], r), q);
      const double rho = mv.value / uvals[i];
      const double band = std::max(thr.harmonic_ratio_band,
                                   10.0 * mv.error_estimate / std::abs(uvals[i]));
      ++usable;
      if (std::abs(rho - 1.0) <= band) {
        ++near;
        continue;
      }
      if (rho > 1.0) {
        ++above;
        pan_estimates.push_back(invert_a_circ(coeff::HelmholtzKind::Pan, m, rho, r));
      } else {
        ++below;
        if (rho > 0.0 && rho < 1.0)
          meta_estimates.push_back(invert_a_circ(coeff::HelmholtzKind::Meta, m, rho, r));
        else
          meta_estimates.push_back(std::numeric_limits<double>::quiet_NaN());
      }
    }
  }
  if (usable == 0)
    throw std::runtime_error("estimate_parameter: all probe centers are ill-conditioned");

  ProbeEstimate out;
  out.probes_used = usable;
  if (near == usable) {
    out.hint = Verdict::Harmonic;
    return out;
  }
  auto summarize = [&](std::vector<double>& v) {
    std::erase_if(v, [](double x) { return std::isnan(x); });
    if (v.empty()) return false;
    std::sort(v.begin(), v.end());
    const auto at = [&](double frac) {
      return v[static_cast<size_t>(frac * (static_cast<double>(v.size()) - 1.0) + 0.5)];
    };
    out.estimate = at(0.5);
    out.spread = at(0.75) - at(0.25);
    return true;
  };
  if (above > 0 && below == 0 && summarize(pan_estimates)) {
    out.hint = Verdict::Panharmonic;
  } else if (below > 0 && above == 0 && summarize(meta_estimates)) {
    out.hint = Verdict::Metaharmonic;
  } else {
    out.hint = Verdict::Unclassified;
    out.diagnostic = "ratio probes are not one-sided (above=" + std::to_string(above) +
                     ", below=" + std::to_string(below) + ", near=" + std::to_string(near) + ")";
  }
  return out;
}

namespace detail {

inline SolutionFamily wrap_field(const Field& u, int m, SolutionKind kind, double parameter,
                                 const GeometrySpec& domain) {
  SolutionFamily f;
  f.id = "<input>";
  f.kind = kind;
  f.parameter = parameter;
  f.dimension = m;
  f.evaluate = u;
  f.laplacian = nullptr;
  f.safe_center = domain.center;
  f.safe_radius = domain.r2;
  return f;
}

inline std::vector<Point> probe_centers(const GeometrySpec& domain) {
  const int m = domain.dim();
  const double step = 0.3 * domain.r2;
  std::vector<Point> centers;
  centers.push_back(domain.center);
  for (int i = 0; i < m; ++i)
    for (const double s : {step, -step}) {
      Point p = domain.center;
      p[i] = p[i] + s;
      centers.push_back(p);
    }
  return centers;
}

}  // namespace detail

// Full pipeline on a callable field over a ball domain: ratio probes, then
// verification of the matching identity family on a center/radius grid,
// falling back to the subharmonic inequality before giving up.
inline ClassificationResult classify(const Field& u, const GeometrySpec& domain,
                                     const QuadratureSpec& q, Thresholds thr = {}) {
  if (domain.kind != GeomKind::Ball)
    throw std::invalid_argument("classify: domain must be a ball");
  if (!(domain.r2 > 1e-3)) throw std::invalid_argument("classify: domain too small to probe");
  const int m = domain.dim();
  const std::vector<Point> centers = detail::probe_centers(domain);
  const std::vector<double> radii = {0.25 * domain.r2, 0.4 * domain.r2, 0.55 * domain.r2};

  ClassificationResult result;
  result.thresholds = thr;
  ProbeEstimate est;
  try {
    est = estimate_parameter(u, m, centers, radii, q, thr);
  } catch (const std::runtime_error& e) {
    result.verdict = Verdict::Unclassified;
    result.diagnostic = e.what();
    return result;
  }
  result.diagnostic = est.diagnostic;

  const double umax_scale = [&] {
    double s = 0.0;
    for (const auto& c : centers) s = std::max(s, std::abs(u(c.view())));
    return s;
  }();

  auto verify = [&](SolutionKind kind, double parameter,
                    std::initializer_list<identities::IdentityId> ids) {
    const SolutionFamily f = detail::wrap_field(u, m, kind, parameter, domain);
    bool all_pass = true;
    for (const auto id : ids) {
      const auto& entry = identities::catalog(id);
      for (const auto& c : centers) {
        if (std::abs(u(c.view())) < thr.center_floor * umax_scale) continue;
        for (const double r : radii) {
          if (distance(c, domain.center) + r > domain.r2) continue;
          const GeometrySpec g = entry.geometry == GeomKind::Sphere
                                     ? GeometrySpec::sphere(c, r)
                                     : GeometrySpec::ball(c, r);
          auto rep = identities::check(id, f, g, {}, q, thr.identity_residual);
          all_pass = all_pass && rep.pass;
          result.evidence.push_back(std::move(rep));
        }
      }
    }
    return all_pass;
  };

  using identities::IdentityId;
  if (est.hint == Verdict::Harmonic &&
      verify(SolutionKind::Harmonic, 0.0, {IdentityId::GaussSphere, IdentityId::GaussBall})) {
    result.verdict = Verdict::Harmonic;
    return result;
  }
  if (est.hint == Verdict::Panharmonic && est.estimate &&
      verify(SolutionKind::Panharmonic, *est.estimate,
             {IdentityId::PanSphere, IdentityId::PanBall})) {
    result.verdict = Verdict::Panharmonic;
    result.parameter_estimate = est.estimate;
    result.parameter_spread = est.spread;
    return result;
  }
  if (est.hint == Verdict::Metaharmonic && est.estimate &&
      verify(SolutionKind::Metaharmonic, *est.estimate,
             {IdentityId::MetaSphere, IdentityId::MetaBall})) {
    result.verdict = Verdict::Metaharmonic;
    result.parameter_estimate = est.estimate;
    result.parameter_spread = est.spread;
    return result;
  }
  if (verify(SolutionKind::Subharmonic, 0.0, {IdentityId::SubharmonicBallIneq})) {
    result.verdict = Verdict::Subharmonic;
    return result;
  }
  result.verdict = Verdict::Unclassified;
  if (result.diagnostic.empty())
    result.diagnostic = "no identity family matched within thresholds";
  return result;
}

// ---------------------------------------------------------------------------
// Sampled-grid front end

// Rectangular lattice samples of a scalar field, row-major with the last
// axis varying fastest.
struct GridField {
  int dimension = 2;
  std::vector<std::vector<double>> axes;  // strictly increasing coordinates
  std::vector<double> values;

  void validate() const {
    if (dimension < kMinDim || dimension > kMaxDim)
      throw std::invalid_argument("GridField: dimension must be in [2, 5]");
    size_t total = 1;
    for (const auto& ax : axes) {
      if (ax.size() < 16) throw std::invalid_argument("GridField: need >= 16 samples per axis");
      if (!(ax.back() > ax.front()))
        throw std::invalid_argument("GridField: degenerate bounding box");
      total *= ax.size();
    }
    if (values.size() != total)
      throw std::invalid_argument("GridField: value count does not match the lattice");
  }

  // Multilinear interpolant over the bounding box.
  Field interpolant() const {
    const auto axes_copy = axes;
    const auto values_copy = values;
    const int m = dimension;
    return [axes_copy, values_copy, m](std::span<const double> y) {
      std::array<size_t, kMaxDim> i0{};
      std::array<double, kMaxDim> frac{};
      for (int a = 0; a < m; ++a) {
        const auto& ax = axes_copy[static_cast<size_t>(a)];
        const double v = y[static_cast<size_t>(a)];
        if (v < ax.front() - 1e-12 || v > ax.back() + 1e-12)
          throw std::out_of_range("GridField: evaluation outside the sampled box");
        const auto it = std::upper_bound(ax.begin(), ax.end(), v);
        size_t hi = static_cast<size_t>(std::clamp<ptrdiff_t>(it - ax.begin(), 1,
                                                              static_cast<ptrdiff_t>(ax.size()) - 1));
        i0[static_cast<size_t>(a)] = hi - 1;
        frac[static_cast<size_t>(a)] = (v - ax[hi - 1]) / (ax[hi] - ax[hi - 1]);
      }
      double acc = 0.0;
      for (int corner = 0; corner < (1 << m); ++corner) {
        double w = 1.0;
        size_t flat = 0;
        for (int a = 0; a < m; ++a) {
          const bool up = corner & (1 << a);
          w *= up ? frac[static_cast<size_t>(a)] : 1.0 - frac[static_cast<size_t>(a)];
          flat = flat * axes_copy[static_cast<size_t>(a)].size() +
                 (i0[static_cast<size_t>(a)] + (up ? 1 : 0));
        }
        acc += w * values_copy[flat];
      }
      return acc;
    };
  }
};

// Parses the CSV lattice format: header `x1,...,xm,u`, one row per sample,
// row-major with the last axis fastest. Malformed lattices are rejected with
// the offending line number.
inline GridField read_grid_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("grid csv: empty input");
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(s);
    while (std::getline(ss, cur, ',')) out.push_back(cur);
    return out;
  };
  const auto header = split(line);
  if (header.size() < 3 || header.back() != "u")
    throw std::invalid_argument("grid csv line 1: header must be x1,...,xm,u");
  const int m = static_cast<int>(header.size()) - 1;
  for (int a = 0; a < m; ++a)
    if (header[static_cast<size_t>(a)] != "x" + std::to_string(a + 1))
      throw std::invalid_argument("grid csv line 1: header must be x1,...,xm,u");
  if (m < kMinDim || m > kMaxDim)
    throw std::invalid_argument("grid csv line 1: dimension must be in [2, 5]");

  std::vector<std::array<double, kMaxDim + 1>> rows;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != static_cast<size_t>(m) + 1)
      throw std::invalid_argument("grid csv line " + std::to_string(lineno) +
                                  ": expected " + std::to_string(m + 1) + " columns");
    std::array<double, kMaxDim + 1> row{};
    for (size_t c = 0; c < cells.size(); ++c) {
      try {
        row[c] = std::stod(cells[c]);
      } catch (const std::exception&) {
        throw std::invalid_argument("grid csv line " + std::to_string(lineno) +
                                    ": cannot parse '" + cells[c] + "'");
      }
    }
    rows.push_back(row);
  }
  if (rows.empty()) throw std::invalid_argument("grid csv: no data rows");

  GridField gf;
  gf.dimension = m;
  gf.axes.resize(static_cast<size_t>(m));
  for (int a = 0; a < m; ++a) {
    std::vector<double> vals;
    vals.reserve(rows.size());
    for (const auto& r : rows) vals.push_back(r[static_cast<size_t>(a)]);
    std::sort(vals.begin(), vals.end());
    auto& ax = gf.axes[static_cast<size_t>(a)];
    const double span = std::max(1e-30, vals.back() - vals.front());
    for (const double v : vals)
      if (ax.empty() || v - ax.back() > 1e-9 * std::max(1.0, span)) ax.push_back(v);
  }
  size_t expected = 1;
  for (const auto& ax : gf.axes) expected *= ax.size();
  if (expected != rows.size())
    throw std::invalid_argument("grid csv: " + std::to_string(rows.size()) +
                                " rows do not form a rectangular lattice (expected " +
                                std::to_string(expected) + ")");
  gf.values.resize(rows.size());
  for (size_t k = 0; k < rows.size(); ++k) {
    // decompose k with the last axis fastest and match the stated lattice
    size_t rem = k;
    std::array<size_t, kMaxDim> idx{};
    for (int a = m - 1; a >= 0; --a) {
      const size_t n = gf.axes[static_cast<size_t>(a)].size();
      idx[static_cast<size_t>(a)] = rem % n;
      rem /= n;
    }
    for (int a = 0; a < m; ++a) {
      const double expect = gf.axes[static_cast<size_t>(a)][idx[static_cast<size_t>(a)]];
      const double got = rows[k][static_cast<size_t>(a)];
      const auto& ax = gf.axes[static_cast<size_t>(a)];
      const double span = std::max(1.0, ax.back() - ax.front());
      if (std::abs(expect - got) > 1e-9 * span)
        throw std::invalid_argument("grid csv line " + std::to_string(k + 2) +
                                    ": row breaks row-major lattice order (axis x" +
                                    std::to_string(a + 1) + ")");
    }
    gf.values[k] = rows[k][static_cast<size_t>(m)];
  }
  gf.validate();
  return gf;
}

inline constexpr int kGridMinimumPerAxis = 64;

// Wraps the multilinear interpolant and classifies it with loosened
// thresholds; interpolation resolution goes into the diagnostic.
inline ClassificationResult classify_grid(const GridField& gf, const QuadratureSpec& q,
                                          std::optional<Thresholds> thr_opt = std::nullopt) {
  gf.validate();
  for (const auto& ax : gf.axes)
    if (ax.size() < kGridMinimumPerAxis)
      throw std::invalid_argument(
          "classify_grid: resolution below the documented minimum of " +
          std::to_string(kGridMinimumPerAxis) + " points per axis");
  Thresholds thr = thr_opt.value_or(Thresholds{.identity_residual = 1e-3,
                                               .harmonic_ratio_band = 1e-3,
                                               .center_floor = 0.1});
  Point center = Point::zero(gf.dimension);
  double half_extent = 1e30;
  for (int a = 0; a < gf.dimension; ++a) {
    const auto& ax = gf.axes[static_cast<size_t>(a)];
    center[a] = 0.5 * (ax.front() + ax.back());
    half_extent = std::min(half_extent, 0.5 * (ax.back() - ax.front()));
  }
  const GeometrySpec domain = GeometrySpec::ball(center, 0.95 * half_extent);
  auto result = classify(gf.interpolant(), domain, q, thr);
  std::string res = "grid resolution:";
  for (const auto& ax : gf.axes) res += " " + std::to_string(ax.size());
  result.diagnostic = result.diagnostic.empty() ? res : result.diagnostic + "; " + res;
  return result;
}

}  // namespace mvq::classifier
