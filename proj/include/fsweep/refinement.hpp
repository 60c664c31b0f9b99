#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fsweep/domain.hpp"
#include "fsweep/error.hpp"
#include "fsweep/oracles.hpp"

namespace fsweep {

/// max(n_parts / 5, 10), rounded.
std::size_t default_initial_samples(std::size_t n_parts);

struct SweepConfig {
  explicit SweepConfig(FrequencyBand b) : band(b) {}

  FrequencyBand band;
  std::size_t dense_points = 601;
  std::size_t n_parts = 70;
  double part_error_threshold = 0.05;
  /// Unset means default_initial_samples(n_parts).
  std::optional<std::size_t> initial_samples;
  std::size_t max_iterations = 20;
  /// Upper bound on concurrent oracle evaluations within one batch.
  std::size_t threads = 1;
  /// Replaces the uniform grid over `band`, e.g. a tabulated oracle's own
  /// frequencies.
  std::optional<SampleGrid> dense_grid;

  std::size_t seed_count() const;
  SampleGrid grid() const;
  /// Throws InputError unless dense >= seeds >= 4, threshold > 0 and
  /// max_iterations >= 1.
  void validate() const;
};

/// sum |refined - previous| / sum |refined|. Throws InputError on length
/// mismatch, empty input or an all-zero refined curve.
double relative_error(std::span<const double> previous, std::span<const double> refined);

struct PartError {
  double error = 0.0;
  /// The metric was undefined (all-zero refined values); counts as failing.
  bool undefined = false;
};

/// relative_error restricted to the dense points of each part. A part holding
/// fewer than two dense points is assessed together with its left neighbour
/// (the right one for the first part) and reports the merged error.
std::vector<PartError> assess_parts(const BandPartition& partition, const SampleGrid& dense,
                                    std::span<const double> previous,
                                    std::span<const double> refined);

struct RefineResult {
  std::vector<std::size_t> new_indices;  ///< dense-grid indices, ascending
  std::vector<double> new_freqs;
  /// No failing part had room for another sample.
  bool saturated = false;
};

/// Bisects every pair of adjacent samples whose interval overlaps a failing
/// part. Midpoints snap to the dense grid; pairs already one dense step apart
/// are skipped. Sample frequencies must lie on the dense grid.
RefineResult refine_parts(const BandPartition& partition, std::span<const std::size_t> failing,
                          std::span<const double> sample_freqs, const SampleGrid& dense);

struct IterationRecord {
  std::size_t sample_count = 0;
  std::vector<double> part_errors;
  std::size_t failing_parts = 0;
  std::size_t inserted = 0;
  std::size_t corrected = 0;
};

struct SweepReport {
  std::vector<Sample> final_curve;
  /// Every oracle evaluation, ascending in frequency.
  std::vector<Sample> samples;
  std::size_t solver_calls = 0;
  std::size_t dense_points = 0;
  std::vector<IterationRecord> iterations;
  /// relative_error between the last two reconstructions over the whole grid.
  double global_error = 0.0;
  double reduction_ratio = 0.0;
  bool converged = false;
  bool saturated = false;
  std::size_t fallbacks = 0;

  std::size_t iteration_count() const noexcept { return iterations.size(); }
};

/// The oracle failed; carries the iterations completed before the failure.
class SweepAborted : public OracleError {
 public:
  SweepAborted(const std::string& what, SweepReport partial)
      : OracleError(what), partial_(std::move(partial)) {}
  const SweepReport& partial() const noexcept { return partial_; }

 private:
  SweepReport partial_;
};

/// Seeds a uniform sample set, then alternates reconstruction, per-part
/// assessment against the previous reconstruction and bisection of failing
/// parts until every part meets the threshold or max_iterations is reached.
/// The first comparison is against the reconstruction from every other seed
/// sample. Each distinct dense-grid frequency is evaluated at most once.
SweepReport run_adaptive_sweep(const ResponseOracle& oracle, const SweepConfig& config);

}  // namespace fsweep
