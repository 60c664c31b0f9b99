#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace fsweep {

/// Swept interval [f_min, f_max] in Hz.
class FrequencyBand {
 public:
  FrequencyBand(double f_min, double f_max);

  double f_min() const noexcept { return f_min_; }
  double f_max() const noexcept { return f_max_; }
  double width() const noexcept { return f_max_ - f_min_; }

  /// Absolute tolerance used for every frequency comparison inside the band.
  double tolerance() const noexcept { return 1e-6 * width(); }

  bool contains(double f) const noexcept {
    return f >= f_min_ - tolerance() && f <= f_max_ + tolerance();
  }

  friend bool operator==(const FrequencyBand&, const FrequencyBand&) = default;

 private:
  double f_min_;
  double f_max_;
};

/// One solver evaluation: frequency (Hz) and linear-magnitude response.
struct Sample {
  double freq = 0.0;
  double value = 0.0;

  friend bool operator==(const Sample&, const Sample&) = default;
};

/// Strictly increasing frequencies inside a band.
class SampleGrid {
 public:
  SampleGrid(FrequencyBand band, std::vector<double> points);

  const FrequencyBand& band() const noexcept { return band_; }
  std::span<const double> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }

  /// Index of the grid point within `tol` of f, if any.
  std::optional<std::size_t> find(double f, double tol) const;
  std::optional<std::size_t> find(double f) const { return find(f, band_.tolerance()); }

  /// Index of the grid point nearest to f.
  std::size_t nearest(double f) const;

 private:
  FrequencyBand band_;
  std::vector<double> points_;
};

SampleGrid make_uniform_grid(const FrequencyBand& band, std::size_t n_points);

/// Equal-width contiguous parts tiling a band.
class BandPartition {
 public:
  BandPartition(FrequencyBand band, std::size_t n_parts);

  const FrequencyBand& band() const noexcept { return band_; }
  std::size_t count() const noexcept { return boundaries_.size() - 1; }

  /// count()+1 boundaries; the first and last equal the band edges exactly.
  std::span<const double> boundaries() const noexcept { return boundaries_; }
  double lower(std::size_t part) const { return boundaries_[part]; }
  double upper(std::size_t part) const { return boundaries_[part + 1]; }

  /// Part owning frequency f. A frequency on an interior boundary belongs to
  /// the part on its right; f_max belongs to the last part.
  std::size_t part_of(double f) const;

 private:
  FrequencyBand band_;
  std::vector<double> boundaries_;
};

BandPartition partition_band(const FrequencyBand& band, std::size_t n_parts);

}  // namespace fsweep
