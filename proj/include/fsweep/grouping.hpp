#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fsweep/domain.hpp"

namespace fsweep {

/// Largest number of samples in any group; keeps every local polynomial at
/// most quadratic.
inline constexpr std::size_t kMaxGroupSize = 3;

enum class GroupKind { NonSingle, Single };

/// A run of consecutive samples answered by one local polynomial.
struct Group {
  std::vector<Sample> samples;
  GroupKind kind = GroupKind::NonSingle;
  /// Gap between this group's first sample and the previous group's last
  /// sample. Zero for the first group.
  double dist_prev = 0.0;
  /// Set only on single groups that hold a sampled local extremum.
  bool is_extreme = false;

  bool single() const noexcept { return kind == GroupKind::Single; }
  double min_freq() const { return samples.front().freq; }
  double max_freq() const { return samples.back().freq; }
};

struct GroupSet {
  FrequencyBand band;
  std::vector<Group> groups;
  std::size_t m_ns = 0;
  std::size_t m_s = 0;

  std::size_t size() const noexcept { return groups.size(); }
  const Group& operator[](std::size_t i) const { return groups[i]; }
};

/// Indices of strict interior local extrema; endpoints and plateaus never
/// qualify. Fewer than three samples yield an empty list.
std::vector<std::size_t> detect_extrema(std::span<const Sample> samples);

/// Splits sorted samples into groups: each extremum is a single group, and the
/// remaining runs are chunked left to right into threes. A trailing chunk of
/// one becomes a (non-extreme) single group, a trailing chunk of two stays
/// non-single.
///
/// The band defaults to [first sample, last sample].
GroupSet partition_into_groups(std::span<const Sample> samples);
GroupSet partition_into_groups(std::span<const Sample> samples, const FrequencyBand& band);

/// Window test: min(X_i) - D_i/2 <= x <= max(X_i) + D_{i+1}/2, where the first
/// window opens at the band start and the last closes at the band end.
bool window_contains(const GroupSet& set, std::size_t i, double x);

}  // namespace fsweep
