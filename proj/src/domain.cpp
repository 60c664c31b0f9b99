#include "fsweep/domain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fsweep/error.hpp"

namespace fsweep {

FrequencyBand::FrequencyBand(double f_min, double f_max) : f_min_(f_min), f_max_(f_max) {
  if (!std::isfinite(f_min) || !std::isfinite(f_max) || f_min <= 0.0 || f_max <= 0.0) {
    throw InputError("frequency band edges must be finite and positive");
  }
  if (!(f_min < f_max)) {
    throw InputError("frequency band requires f_min < f_max");
  }
}

SampleGrid::SampleGrid(FrequencyBand band, std::vector<double> points)
    : band_(band), points_(std::move(points)) {
  if (points_.empty()) throw InputError("sample grid is empty");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const double f = points_[i];
    if (!std::isfinite(f) || !band_.contains(f)) {
      throw InputError("grid point " + std::to_string(i) + " lies outside the band");
    }
    if (i > 0 && !(f > points_[i - 1])) {
      throw InputError("grid points must be strictly increasing (index " + std::to_string(i) +
                       ")");
    }
  }
}

std::size_t SampleGrid::nearest(double f) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), f);
  if (it == points_.end()) return points_.size() - 1;
  const auto hi = static_cast<std::size_t>(it - points_.begin());
  if (hi == 0) return 0;
  return (f - points_[hi - 1] <= points_[hi] - f) ? hi - 1 : hi;
}

std::optional<std::size_t> SampleGrid::find(double f, double tol) const {
  const std::size_t i = nearest(f);
  if (std::abs(points_[i] - f) <= tol) return i;
  return std::nullopt;
}

SampleGrid make_uniform_grid(const FrequencyBand& band, std::size_t n_points) {
  if (n_points < 2) throw InputError("a uniform grid needs at least 2 points");
  const double h = band.width() / static_cast<double>(n_points - 1);
  std::vector<double> pts(n_points);
  for (std::size_t i = 0; i + 1 < n_points; ++i) {
    pts[i] = band.f_min() + static_cast<double>(i) * h;
  }
  pts.back() = band.f_max();
  return SampleGrid(band, std::move(pts));
}

BandPartition::BandPartition(FrequencyBand band, std::size_t n_parts) : band_(band) {
  if (n_parts == 0) throw InputError("a band partition needs at least one part");
  const double w = band.width() / static_cast<double>(n_parts);
  boundaries_.resize(n_parts + 1);
  for (std::size_t j = 0; j < n_parts; ++j) {
    boundaries_[j] = band.f_min() + static_cast<double>(j) * w;
  }
  boundaries_.front() = band.f_min();
  boundaries_.back() = band.f_max();
}

std::size_t BandPartition::part_of(double f) const {
  const double tol = band_.tolerance();
  // First interior boundary strictly above f (after tolerance).
  auto it = std::upper_bound(boundaries_.begin() + 1, boundaries_.end() - 1, f + tol);
  return static_cast<std::size_t>(it - boundaries_.begin()) - 1;
}

BandPartition partition_band(const FrequencyBand& band, std::size_t n_parts) {
  return BandPartition(band, n_parts);
}

}  // namespace fsweep
