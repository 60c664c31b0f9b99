#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "fsweep/domain.hpp"

namespace fsweep {

/// Value at x of the Lagrange polynomial through `support`
/// (interpolation or extrapolation). A single support point is the constant
/// fallback. Throws InputError on an empty support or repeated frequencies.
double lagrange_eval(std::span<const Sample> support, double x);

/// Process-wide counters over every lagrange_eval call.
struct LagrangeStats {
  std::uint64_t evaluations = 0;
  /// Calls that used more than three support points.
  std::uint64_t over_cap = 0;
  std::size_t max_support = 0;
};

LagrangeStats lagrange_stats() noexcept;
void reset_lagrange_stats() noexcept;

}  // namespace fsweep
