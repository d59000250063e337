#pragma once

// Gauss-Legendre and Gauss-Gegenbauer rules via Golub-Welsch: eigenvalues of
// the symmetric tridiagonal Jacobi matrix give the nodes, squared first
// eigenvector components (scaled by the zeroth moment) give the weights.

#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "mvq/specfun.hpp"

namespace mvq::gauss {

struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
};

namespace detail {

// QL with implicit shifts for a symmetric tridiagonal matrix. d holds the
// diagonal, e the subdiagonal in e[0..n-2]; z is transformed along and on
// return carries the first component of each normalized eigenvector.
inline void diagonalize_tridiagonal(std::vector<double>& d, std::vector<double>& e,
                                    std::vector<double>& z) {
  const int n = static_cast<int>(d.size());
  if (n == 1) return;
  const double prec = std::numeric_limits<double>::epsilon();
  e.resize(static_cast<size_t>(n), 0.0);
  for (int l = 0; l < n; ++l) {
    for (int iter = 0;; ++iter) {
      if (iter > 60) throw std::runtime_error("gauss: tridiagonal QL failed to converge");
      int m = l;
      for (; m < n - 1; ++m) {
        const double dd = std::abs(d[static_cast<size_t>(m)]) + std::abs(d[static_cast<size_t>(m) + 1]);
        if (std::abs(e[static_cast<size_t>(m)]) <= prec * dd) break;
      }
      if (m == l) break;
      double g = (d[static_cast<size_t>(l) + 1] - d[static_cast<size_t>(l)]) / (2.0 * e[static_cast<size_t>(l)]);
      double r = std::hypot(g, 1.0);
      g = d[static_cast<size_t>(m)] - d[static_cast<size_t>(l)] +
          e[static_cast<size_t>(l)] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      int i = m - 1;
      for (; i >= l; --i) {
        double f = s * e[static_cast<size_t>(i)];
        const double b = c * e[static_cast<size_t>(i)];
        r = std::hypot(f, g);
        e[static_cast<size_t>(i) + 1] = r;
        if (r == 0.0) {
          d[static_cast<size_t>(i) + 1] -= p;
          e[static_cast<size_t>(m)] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[static_cast<size_t>(i) + 1] - p;
        r = (d[static_cast<size_t>(i)] - g) * s + 2.0 * c * b;
        p = s * r;
        d[static_cast<size_t>(i) + 1] = g + p;
        g = c * r - b;
        f = z[static_cast<size_t>(i) + 1];
        z[static_cast<size_t>(i) + 1] = s * z[static_cast<size_t>(i)] + c * f;
        z[static_cast<size_t>(i)] = c * z[static_cast<size_t>(i)] - s * f;
      }
      if (r == 0.0 && i >= l) continue;
      d[static_cast<size_t>(l)] -= p;
      e[static_cast<size_t>(l)] = g;
      e[static_cast<size_t>(m)] = 0.0;
    }
  }
  // sort nodes ascending, carrying z along
  for (int i = 1; i < n; ++i) {
    const double dv = d[static_cast<size_t>(i)], zv = z[static_cast<size_t>(i)];
    int j = i - 1;
    for (; j >= 0 && d[static_cast<size_t>(j)] > dv; --j) {
      d[static_cast<size_t>(j) + 1] = d[static_cast<size_t>(j)];
      z[static_cast<size_t>(j) + 1] = z[static_cast<size_t>(j)];
    }
    d[static_cast<size_t>(j) + 1] = dv;
    z[static_cast<size_t>(j) + 1] = zv;
  }
}

inline Rule1D compute_gegenbauer(int n, double alpha) {
  if (n < 1) throw std::invalid_argument("gauss: rule order must be >= 1");
  std::vector<double> d(static_cast<size_t>(n), 0.0);
  std::vector<double> e(static_cast<size_t>(n), 0.0);
  std::vector<double> z(static_cast<size_t>(n), 0.0);
  z[0] = 1.0;
  for (int k = 1; k < n; ++k)
    e[static_cast<size_t>(k) - 1] =
        std::sqrt(k * (k + 2.0 * alpha) / ((2.0 * k + 2.0 * alpha) * (2.0 * k + 2.0 * alpha) - 1.0));
  diagonalize_tridiagonal(d, e, z);
  const double pi = 3.14159265358979323846;
  const double mu0 = std::sqrt(pi) * specfun::gamma(alpha + 1.0) / specfun::gamma(alpha + 1.5);
  Rule1D rule;
  rule.x = std::move(d);
  rule.w.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) rule.w[static_cast<size_t>(i)] = mu0 * z[static_cast<size_t>(i)] * z[static_cast<size_t>(i)];
  // the weight is even in x: symmetrize nodes pairwise
  for (int i = 0; i < n / 2; ++i) {
    const double v = 0.5 * (rule.x[static_cast<size_t>(i)] - rule.x[static_cast<size_t>(n - 1 - i)]);
    rule.x[static_cast<size_t>(i)] = v;
    rule.x[static_cast<size_t>(n - 1 - i)] = -v;
  }
  if (n % 2 == 1) rule.x[static_cast<size_t>(n) / 2] = 0.0;
  return rule;
}

}  // namespace detail

// Rule for weight (1 - x^2)^alpha on [-1, 1]; alpha = 0 is Gauss-Legendre.
// Rules are memoized (only a handful of (n, alpha) pairs ever occur).
inline std::shared_ptr<const Rule1D> gegenbauer_rule(int n, double alpha) {
  static std::mutex mtx;
  static std::unordered_map<long, std::shared_ptr<const Rule1D>> cache;
  const long key = static_cast<long>(n) * 16 + static_cast<long>(std::lround(alpha * 4.0));
  {
    std::scoped_lock lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const Rule1D>(detail::compute_gegenbauer(n, alpha));
  std::scoped_lock lock(mtx);
  return cache.emplace(key, std::move(rule)).first->second;
}

inline std::shared_ptr<const Rule1D> legendre_rule(int n) { return gegenbauer_rule(n, 0.0); }

}  // namespace mvq::gauss
