#pragma once

// The test corpus: closed-form fields with known PDE class, each exposing
// value, gradient, and exact Laplacian so a finite-difference oracle can
// audit every label independently of the identity machinery.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvq/geometry.hpp"
#include "mvq/specfun.hpp"
#include "mvq/version.hpp"

namespace mvq {

enum class SolutionKind { Harmonic, Panharmonic, Metaharmonic, Subharmonic, None };

inline const char* to_string(SolutionKind k) {
  switch (k) {
    case SolutionKind::Harmonic: return "Harmonic";
    case SolutionKind::Panharmonic: return "Panharmonic";
    case SolutionKind::Metaharmonic: return "Metaharmonic";
    case SolutionKind::Subharmonic: return "Subharmonic";
    case SolutionKind::None: return "None";
  }
  return "?";
}

struct SolutionFamily {
  std::string id;
  SolutionKind kind = SolutionKind::None;
  double parameter = 0.0;  // mu for panharmonic, lambda for metaharmonic
  int dimension = 2;
  Field evaluate;
  GradientField gradient;  // may be empty
  Field laplacian;

  // Ball within which the evaluators are trustworthy and, away from the
  // optional singular point, the PDE label holds.
  Point safe_center;
  double safe_radius = 2.0;

  // Pole of a fundamental solution. The family solves its PDE on the safe
  // ball minus the exclusion ball around this point; annular geometries may
  // hide the pole inside their hole.
  std::optional<Point> singular_point;
  double exclusion_radius = 0.0;

  bool positive = false;  // u > 0 throughout the safe ball

  double operator()(const Point& x) const { return evaluate(x.view()); }
};

struct CorpusManifest {
  std::string version;
  int dimension = 2;
  std::vector<SolutionFamily> families;

  const SolutionFamily& find(const std::string& id) const {
    for (const auto& f : families)
      if (f.id == id) return f;
    throw std::invalid_argument("corpus: unknown family id '" + id + "'");
  }
};

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> y) { return dot(y, y); }

// I_nu(mu s)/s^nu and J_nu(lam s)/s^nu, finite at s = 0; switches to the
// ascending series below s = 1e-2 to avoid 0/0.
inline double scaled_radial_kernel(bool modified, int twice_nu, double p, double s) {
  const double nu = 0.5 * twice_nu;
  if (s < 1e-2) {
    const double q2 = 0.25 * p * p * s * s;
    double term = std::pow(0.5 * p, nu) / specfun::gamma(nu + 1.0);
    double sum = term;
    for (int k = 1; k <= 6; ++k) {
      term *= (modified ? q2 : -q2) / (k * (nu + k));
      sum += term;
    }
    return sum;
  }
  const specfun::Order ord(twice_nu);
  const double b = modified ? specfun::bessel_i(ord, p * s) : specfun::bessel_j(ord, p * s);
  return b / std::pow(s, nu);
}

}  // namespace detail

// Radial solution u(y) = I_{(m-2)/2}(mu |y|) / |y|^{(m-2)/2} of the modified
// Helmholtz equation (J analogue for Helmholtz), finite at the origin.
inline SolutionFamily radial_solution(SolutionKind kind, int m, double parameter) {
  if (m < kMinDim || m > kMaxDim)
    throw std::out_of_range("radial_solution: dimension must be in [2, 5]");
  if (!(parameter > 0.0))
    throw std::invalid_argument("radial_solution: parameter must be positive");
  if (kind != SolutionKind::Panharmonic && kind != SolutionKind::Metaharmonic)
    throw std::invalid_argument("radial_solution: kind must be panharmonic or metaharmonic");
  const bool modified = kind == SolutionKind::Panharmonic;
  const int tnu = m - 2;
  const double p = parameter;
  const double sign = modified ? 1.0 : -1.0;

  SolutionFamily f;
  f.id = (modified ? std::string("pan:radial:mu=") : std::string("meta:radial:lam=")) +
         std::to_string(p).substr(0, 3) + ":m" + std::to_string(m);
  f.kind = kind;
  f.parameter = p;
  f.dimension = m;
  f.safe_center = Point::zero(m);
  f.safe_radius = 2.0;
  f.positive = modified;
  f.evaluate = [modified, tnu, p](std::span<const double> y) {
    return detail::scaled_radial_kernel(modified, tnu, p, std::sqrt(detail::norm2(y)));
  };
  // d/ds [s^-nu I_nu(mu s)] = mu s^-nu I_{nu+1}(mu s); J version gains a sign
  f.gradient = [modified, tnu, p](std::span<const double> y, std::span<double> g) {
    const double s = std::sqrt(detail::norm2(y));
    const double factor =
        (modified ? p : -p) * detail::scaled_radial_kernel(modified, tnu + 2, p, s);
    for (size_t i = 0; i < y.size(); ++i) g[i] = factor * y[i];
  };
  f.laplacian = [modified, tnu, p, sign](std::span<const double> y) {
    return sign * p * p *
           detail::scaled_radial_kernel(modified, tnu, p, std::sqrt(detail::norm2(y)));
  };
  return f;
}

namespace detail {

inline SolutionFamily base_family(std::string id, SolutionKind kind, int m) {
  SolutionFamily f;
  f.id = std::move(id);
  f.kind = kind;
  f.dimension = m;
  f.safe_center = Point::zero(m);
  f.safe_radius = 2.0;
  return f;
}

// Re/Im (y1 + i y2)^k and the gradient via k z^{k-1}.
inline void complex_power(double y1, double y2, int k, double& re, double& im) {
  double a = 1.0, b = 0.0;
  for (int i = 0; i < k; ++i) {
    const double na = a * y1 - b * y2;
    b = a * y2 + b * y1;
    a = na;
  }
  re = a;
  im = b;
}

inline SolutionFamily harmonic_poly_2d(int m, int k, bool imaginary) {
  auto f = base_family("harm:poly:m2:" + std::string(imaginary ? "im" : "re") + std::to_string(k),
                       SolutionKind::Harmonic, m);
  f.evaluate = [k, imaginary](std::span<const double> y) {
    double re, im;
    complex_power(y[0], y[1], k, re, im);
    return imaginary ? im : re;
  };
  f.gradient = [k, imaginary](std::span<const double> y, std::span<double> g) {
    double re, im;
    complex_power(y[0], y[1], k - 1, re, im);
    for (auto& gi : g) gi = 0.0;
    if (imaginary) {
      g[0] = k * im;
      g[1] = k * re;
    } else {
      g[0] = k * re;
      g[1] = -k * im;
    }
  };
  f.laplacian = [](std::span<const double>) { return 0.0; };
  return f;
}

inline SolutionFamily plane_wave(int m, SolutionKind kind, double p, bool diagonal,
                                 bool sine = false) {
  std::string id;
  if (kind == SolutionKind::Panharmonic)
    id = "pan:exp:mu=" + std::to_string(p).substr(0, 3) + (diagonal ? ":d=diag" : ":d=e1");
  else
    id = std::string(sine ? "meta:sin" : "meta:cos") + ":lam=" + std::to_string(p).substr(0, 3);
  auto f = base_family(id + ":m" + std::to_string(m), kind, m);
  f.parameter = p;
  std::vector<double> d(static_cast<size_t>(m), 0.0);
  if (diagonal) {
    const double inv = 1.0 / std::sqrt(static_cast<double>(m));
    for (auto& di : d) di = inv;
  } else {
    d[0] = 1.0;
  }
  if (kind == SolutionKind::Panharmonic) {
    f.positive = true;
    f.evaluate = [d, p](std::span<const double> y) { return std::exp(p * dot(d, y)); };
    f.gradient = [d, p](std::span<const double> y, std::span<double> g) {
      const double u = std::exp(p * dot(d, y));
      for (size_t i = 0; i < y.size(); ++i) g[i] = p * d[i] * u;
    };
    f.laplacian = [d, p](std::span<const double> y) {
      return p * p * std::exp(p * dot(d, y));
    };
  } else {
    f.evaluate = [d, p, sine](std::span<const double> y) {
      const double t = p * dot(d, y);
      return sine ? std::sin(t) : std::cos(t);
    };
    f.gradient = [d, p, sine](std::span<const double> y, std::span<double> g) {
      const double t = p * dot(d, y);
      const double du = sine ? p * std::cos(t) : -p * std::sin(t);
      for (size_t i = 0; i < y.size(); ++i) g[i] = d[i] * du;
    };
    f.laplacian = [d, p, sine](std::span<const double> y) {
      const double t = p * dot(d, y);
      return -p * p * (sine ? std::sin(t) : std::cos(t));
    };
  }
  return f;
}

// log|y - p| (m = 2) or |y - p|^{2-m} (m >= 3).
inline SolutionFamily fundamental_solution(int m, const Point& pole, std::string id,
                                           bool pole_is_singularity) {
  auto f = base_family(std::move(id), SolutionKind::Harmonic, m);
  std::vector<double> pv(pole.view().begin(), pole.view().end());
  f.evaluate = [pv, m](std::span<const double> y) {
    double s = 0.0;
    for (size_t i = 0; i < y.size(); ++i) {
      const double d = y[i] - pv[i];
      s += d * d;
    }
    return m == 2 ? 0.5 * std::log(s) : std::pow(s, 0.5 * (2 - m));
  };
  f.gradient = [pv, m](std::span<const double> y, std::span<double> g) {
    double s = 0.0;
    for (size_t i = 0; i < y.size(); ++i) {
      const double d = y[i] - pv[i];
      s += d * d;
    }
    const double factor = m == 2 ? 1.0 / s : (2.0 - m) * std::pow(s, 0.5 * (2 - m) - 1.0);
    for (size_t i = 0; i < y.size(); ++i) g[i] = factor * (y[i] - pv[i]);
  };
  f.laplacian = [](std::span<const double>) { return 0.0; };
  if (pole_is_singularity) {
    f.singular_point = pole;
    f.exclusion_radius = 0.15;
  }
  return f;
}

}  // namespace detail

// Builds the labeled corpus for dimension m. Ids are the stable public
// naming scheme used by the CLI.
inline CorpusManifest build_corpus(int m) {
  if (m < kMinDim || m > kMaxDim)
    throw std::out_of_range("build_corpus: dimension must be in [2, 5]");
  using detail::base_family;
  CorpusManifest manifest;
  manifest.version = kCorpusVersion;
  manifest.dimension = m;
  auto& fam = manifest.families;

  {
    auto f = base_family("const:1", SolutionKind::Harmonic, m);
    f.positive = true;
    f.evaluate = [](std::span<const double>) { return 1.0; };
    f.gradient = [](std::span<const double>, std::span<double> g) {
      for (auto& gi : g) gi = 0.0;
    };
    f.laplacian = [](std::span<const double>) { return 0.0; };
    fam.push_back(std::move(f));
  }
  for (int axis = 0; axis < 2; ++axis) {
    auto f = base_family("harm:coord:y" + std::to_string(axis + 1), SolutionKind::Harmonic, m);
    f.evaluate = [axis](std::span<const double> y) { return y[static_cast<size_t>(axis)]; };
    f.gradient = [axis](std::span<const double>, std::span<double> g) {
      for (auto& gi : g) gi = 0.0;
      g[static_cast<size_t>(axis)] = 1.0;
    };
    f.laplacian = [](std::span<const double>) { return 0.0; };
    fam.push_back(std::move(f));
  }
  if (m == 2) {
    for (int k = 2; k <= 5; ++k) fam.push_back(detail::harmonic_poly_2d(m, k, false));
    for (int k = 2; k <= 3; ++k) fam.push_back(detail::harmonic_poly_2d(m, k, true));
  } else {
    {
      auto f = base_family("harm:poly:xy", SolutionKind::Harmonic, m);
      f.evaluate = [](std::span<const double> y) { return y[0] * y[1]; };
      f.gradient = [](std::span<const double> y, std::span<double> g) {
        for (auto& gi : g) gi = 0.0;
        g[0] = y[1];
        g[1] = y[0];
      };
      f.laplacian = [](std::span<const double>) { return 0.0; };
      fam.push_back(std::move(f));
    }
    {
      auto f = base_family("harm:poly:x2-y2", SolutionKind::Harmonic, m);
      f.evaluate = [](std::span<const double> y) { return y[0] * y[0] - y[1] * y[1]; };
      f.gradient = [](std::span<const double> y, std::span<double> g) {
        for (auto& gi : g) gi = 0.0;
        g[0] = 2.0 * y[0];
        g[1] = -2.0 * y[1];
      };
      f.laplacian = [](std::span<const double>) { return 0.0; };
      fam.push_back(std::move(f));
    }
    {
      auto f = base_family("harm:poly:deg3", SolutionKind::Harmonic, m);
      f.evaluate = [](std::span<const double> y) {
        return y[0] * y[0] * y[0] - 3.0 * y[0] * y[1] * y[1];
      };
      f.gradient = [](std::span<const double> y, std::span<double> g) {
        for (auto& gi : g) gi = 0.0;
        g[0] = 3.0 * y[0] * y[0] - 3.0 * y[1] * y[1];
        g[1] = -6.0 * y[0] * y[1];
      };
      f.laplacian = [](std::span<const double>) { return 0.0; };
      fam.push_back(std::move(f));
    }
  }
  {
    Point pole = Point::zero(m);
    pole[0] = 3.0;  // 1.5x the safe-ball circumradius
    fam.push_back(detail::fundamental_solution(m, pole, "harm:fund:m" + std::to_string(m), false));
  }
  fam.push_back(detail::fundamental_solution(m, Point::zero(m),
                                             "harm:fund:origin:m" + std::to_string(m), true));
  for (const double mu : {0.5, 1.0, 2.0})
    fam.push_back(detail::plane_wave(m, SolutionKind::Panharmonic, mu, false));
  fam.push_back(detail::plane_wave(m, SolutionKind::Panharmonic, 1.0, true));
  fam.push_back(radial_solution(SolutionKind::Panharmonic, m, 1.0));
  for (const double lam : {0.5, 1.0, 2.0})
    fam.push_back(detail::plane_wave(m, SolutionKind::Metaharmonic, lam, false));
  fam.push_back(detail::plane_wave(m, SolutionKind::Metaharmonic, 1.0, false, /*sine=*/true));
  fam.push_back(radial_solution(SolutionKind::Metaharmonic, m, 1.0));
  {
    auto f = base_family("sub:ysq", SolutionKind::Subharmonic, m);
    f.evaluate = [](std::span<const double> y) { return detail::norm2(y); };
    f.gradient = [](std::span<const double> y, std::span<double> g) {
      for (size_t i = 0; i < y.size(); ++i) g[i] = 2.0 * y[i];
    };
    f.laplacian = [m](std::span<const double>) { return 2.0 * m; };
    fam.push_back(std::move(f));
  }
  {
    auto f = base_family("sub:y1sq", SolutionKind::Subharmonic, m);
    f.evaluate = [](std::span<const double> y) { return y[0] * y[0]; };
    f.gradient = [](std::span<const double> y, std::span<double> g) {
      for (auto& gi : g) gi = 0.0;
      g[0] = 2.0 * y[0];
    };
    f.laplacian = [](std::span<const double>) { return 2.0; };
    fam.push_back(std::move(f));
  }
  {
    auto f = base_family("none:exp+sq", SolutionKind::None, m);
    f.evaluate = [](std::span<const double> y) { return std::exp(y[0]) + y[1] * y[1]; };
    f.gradient = [](std::span<const double> y, std::span<double> g) {
      for (auto& gi : g) gi = 0.0;
      g[0] = std::exp(y[0]);
      g[1] = 2.0 * y[1];
    };
    f.laplacian = [](std::span<const double> y) { return std::exp(y[0]) + 2.0; };
    fam.push_back(std::move(f));
  }
  {
    auto f = base_family("none:quartic", SolutionKind::None, m);
    f.evaluate = [](std::span<const double> y) { return y[0] * y[0] * y[0] * y[0]; };
    f.gradient = [](std::span<const double> y, std::span<double> g) {
      for (auto& gi : g) gi = 0.0;
      g[0] = 4.0 * y[0] * y[0] * y[0];
    };
    f.laplacian = [](std::span<const double> y) { return 12.0 * y[0] * y[0]; };
    fam.push_back(std::move(f));
  }

  for (size_t i = 0; i < fam.size(); ++i)
    for (size_t j = i + 1; j < fam.size(); ++j)
      if (fam[i].id == fam[j].id) throw std::logic_error("corpus: duplicate family id");
  return manifest;
}

// |FD Laplacian - claimed Laplacian| with central second differences; the
// residual is O(h^2) when the label is truthful.
inline double pde_residual_oracle(const SolutionFamily& f, const Point& x, double h) {
  const int m = f.dimension;
  std::array<double, kMaxDim> y{};
  for (int i = 0; i < m; ++i) y[static_cast<size_t>(i)] = x[i];
  const std::span<const double> yv{y.data(), static_cast<size_t>(m)};
  const double center = f.evaluate(yv);
  double lap = 0.0;
  for (int i = 0; i < m; ++i) {
    const double orig = y[static_cast<size_t>(i)];
    y[static_cast<size_t>(i)] = orig + h;
    const double up = f.evaluate(yv);
    y[static_cast<size_t>(i)] = orig - h;
    const double dn = f.evaluate(yv);
    y[static_cast<size_t>(i)] = orig;
    lap += (up - 2.0 * center + dn) / (h * h);
  }
  return std::abs(lap - f.laplacian(yv));
}

// Residual of the Laplacian claimed by the *kind* label (0, mu^2 u, or
// -lambda^2 u); for subharmonic kinds, the negative part of the Laplacian.
inline double kind_residual(const SolutionFamily& f, const Point& x) {
  const auto yv = x.view();
  const double lap = f.laplacian(yv);
  switch (f.kind) {
    case SolutionKind::Harmonic: return std::abs(lap);
    case SolutionKind::Panharmonic:
      return std::abs(lap - f.parameter * f.parameter * f.evaluate(yv));
    case SolutionKind::Metaharmonic:
      return std::abs(lap + f.parameter * f.parameter * f.evaluate(yv));
    case SolutionKind::Subharmonic: return std::max(0.0, -lap);
    case SolutionKind::None: return 0.0;
  }
  return 0.0;
}

// f + eps * v; the result carries kind None unless eps == 0.
inline SolutionFamily perturb(const SolutionFamily& f, const SolutionFamily& v, double eps) {
  if (f.dimension != v.dimension)
    throw std::invalid_argument("perturb: dimension mismatch");
  if (eps == 0.0) return f;
  SolutionFamily out = f;
  out.id = f.id + "+eps*" + v.id;
  out.kind = SolutionKind::None;
  out.parameter = 0.0;
  out.positive = false;
  const Field fe = f.evaluate, ve = v.evaluate;
  out.evaluate = [fe, ve, eps](std::span<const double> y) { return fe(y) + eps * ve(y); };
  const Field fl = f.laplacian, vl = v.laplacian;
  out.laplacian = [fl, vl, eps](std::span<const double> y) { return fl(y) + eps * vl(y); };
  if (f.gradient && v.gradient) {
    const GradientField fg = f.gradient, vg = v.gradient;
    out.gradient = [fg, vg, eps](std::span<const double> y, std::span<double> g) {
      std::array<double, kMaxDim> tmp{};
      fg(y, g);
      vg(y, {tmp.data(), y.size()});
      for (size_t i = 0; i < y.size(); ++i) g[i] += eps * tmp[i];
    };
  } else {
    out.gradient = nullptr;
  }
  out.safe_radius = std::min(f.safe_radius, v.safe_radius);
  return out;
}

}  // namespace mvq
