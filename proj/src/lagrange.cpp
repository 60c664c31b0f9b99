#include "fsweep/lagrange.hpp"

#include <atomic>

#include "fsweep/error.hpp"
#include "fsweep/grouping.hpp"

namespace fsweep {

namespace {

std::atomic<std::uint64_t> g_evaluations{0};
std::atomic<std::uint64_t> g_over_cap{0};
std::atomic<std::size_t> g_max_support{0};

void record(std::size_t n) noexcept {
  g_evaluations.fetch_add(1, std::memory_order_relaxed);
  if (n > kMaxGroupSize) g_over_cap.fetch_add(1, std::memory_order_relaxed);
  std::size_t seen = g_max_support.load(std::memory_order_relaxed);
  while (n > seen && !g_max_support.compare_exchange_weak(seen, n, std::memory_order_relaxed)) {
  }
}

}  // namespace

double lagrange_eval(std::span<const Sample> support, double x) {
  record(support.size());
  if (support.empty()) throw InputError("Lagrange support is empty");
  for (std::size_t i = 0; i < support.size(); ++i) {
    for (std::size_t k = i + 1; k < support.size(); ++k) {
      if (support[i].freq == support[k].freq) {
        throw InputError("Lagrange support has repeated frequencies");
      }
    }
  }
  for (const Sample& s : support) {
    if (x == s.freq) return s.value;
  }
  // f_0 + sum_i (f_i - f_0) v_i(x): equal to sum_i f_i v_i(x) since the basis
  // sums to one, and reproduces constants exactly.
  const double base = support[0].value;
  double y = base;
  for (std::size_t i = 1; i < support.size(); ++i) {
    double basis = 1.0;
    for (std::size_t k = 0; k < support.size(); ++k) {
      if (k == i) continue;
      basis *= (x - support[k].freq) / (support[i].freq - support[k].freq);
    }
    y += (support[i].value - base) * basis;
  }
  return y;
}

LagrangeStats lagrange_stats() noexcept {
  return {g_evaluations.load(), g_over_cap.load(), g_max_support.load()};
}

void reset_lagrange_stats() noexcept {
  g_evaluations = 0;
  g_over_cap = 0;
  g_max_support = 0;
}

}  // namespace fsweep
