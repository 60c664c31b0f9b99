#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library's interpolation or error code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "fsweep/domain.hpp"

namespace fsweep::testing {

inline std::vector<Sample> make_samples(std::span<const double> freqs,
                                        std::span<const double> values) {
  std::vector<Sample> out;
  for (std::size_t i = 0; i < freqs.size(); ++i) out.push_back({freqs[i], values[i]});
  return out;
}

inline std::vector<Sample> make_samples(std::initializer_list<double> freqs,
                                        std::initializer_list<double> values) {
  return make_samples(std::span<const double>(freqs.begin(), freqs.size()),
                      std::span<const double>(values.begin(), values.size()));
}

/// Neville's tableau, a route to the interpolating polynomial that shares
/// no code with the basis-product evaluation under test.
inline double neville(std::vector<Sample> pts, double x) {
  std::vector<double> p;
  for (const Sample& s : pts) p.push_back(s.value);
  const std::size_t n = pts.size();
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i) {
      const double xi = pts[i].freq;
      const double xj = pts[i + m].freq;
      p[i] = ((x - xj) * p[i] + (xi - x) * p[i + 1]) / (xi - xj);
    }
  }
  return p[0];
}

/// Brute-force strict interior extremum scan.
inline std::vector<std::size_t> brute_extrema(std::span<const double> v) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const bool max = v[i] > v[i - 1] && v[i] > v[i + 1];
    const bool min = v[i] < v[i - 1] && v[i] < v[i + 1];
    if (max || min) out.push_back(i);
  }
  return out;
}

/// f(t) = sum_k a_k sin(2 pi f0 (t - c_k)) / (pi (t - c_k)). The spectrum is
/// sum_k a_k exp(-j 2 pi nu c_k) on |nu| < f0, so by Parseval
/// B^2 = sum_k sum_l a_k a_l kernel(c_k - c_l) with kernel(0) = 2 f0.
struct BandLimitedFunction {
  double f0 = 1.0;
  std::vector<double> amp;
  std::vector<double> centre;

  double kernel(double t) const {
    if (std::abs(t) < 1e-12) return 2.0 * f0;
    return std::sin(2.0 * std::numbers::pi * f0 * t) / (std::numbers::pi * t);
  }
  double operator()(double t) const {
    double y = 0.0;
    for (std::size_t k = 0; k < amp.size(); ++k) y += amp[k] * kernel(t - centre[k]);
    return y;
  }
  double energy_root() const {
    double e = 0.0;
    for (std::size_t k = 0; k < amp.size(); ++k) {
      for (std::size_t l = 0; l < amp.size(); ++l) e += amp[k] * amp[l] * kernel(centre[k] - centre[l]);
    }
    return std::sqrt(e);
  }

  static BandLimitedFunction random(std::mt19937_64& rng, double f0) {
    std::uniform_int_distribution<int> terms(1, 5);
    std::uniform_real_distribution<double> a(-1.0, 1.0);
    std::uniform_real_distribution<double> c(-3.0, 3.0);
    BandLimitedFunction fn;
    fn.f0 = f0;
    const int k = terms(rng);
    for (int i = 0; i < k; ++i) {
      fn.amp.push_back(a(rng));
      fn.centre.push_back(c(rng));
    }
    return fn;
  }
};

/// Largest error of a piecewise quadratic through evenly spaced triples
/// (nodes -4, -4+h, ...) against fn, scanned at `points` locations over [-4, 4).
template <class Fn>
double max_quadratic_error(const Fn& fn, double h, std::size_t points = 10000) {
  const double lo = -4.0;
  const auto triples = static_cast<std::size_t>(std::floor(8.0 / (2.0 * h)));
  const double hi = lo + 2.0 * h * static_cast<double>(triples);
  double worst = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points);
    const auto j = std::min(triples - 1, static_cast<std::size_t>((t - lo) / (2.0 * h)));
    const double t0 = lo + 2.0 * h * static_cast<double>(j);
    std::vector<Sample> tri{{t0, fn(t0)}, {t0 + h, fn(t0 + h)}, {t0 + 2.0 * h, fn(t0 + 2.0 * h)}};
    worst = std::max(worst, std::abs(neville(tri, t) - fn(t)));
  }
  return worst;
}

}  // namespace fsweep::testing
