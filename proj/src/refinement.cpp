#include "fsweep/refinement.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>

#include "fsweep/grouping.hpp"
#include "fsweep/interpolator.hpp"

namespace fsweep {

std::size_t default_initial_samples(std::size_t n_parts) {
  const auto fifth = static_cast<std::size_t>(std::lround(static_cast<double>(n_parts) / 5.0));
  return std::max<std::size_t>(fifth, 10);
}

std::size_t SweepConfig::seed_count() const {
  return initial_samples.value_or(default_initial_samples(n_parts));
}

SampleGrid SweepConfig::grid() const {
  if (dense_grid) return *dense_grid;
  return make_uniform_grid(band, dense_points);
}

void SweepConfig::validate() const {
  const std::size_t dense = dense_grid ? dense_grid->size() : dense_points;
  const std::size_t seeds = seed_count();
  if (seeds < 4) throw InputError("initial samples must be at least 4");
  if (dense < seeds) throw InputError("dense grid must have at least as many points as the seed");
  if (n_parts == 0) throw InputError("number of parts must be positive");
  if (!(part_error_threshold > 0.0) || !std::isfinite(part_error_threshold)) {
    throw InputError("part error threshold must be > 0");
  }
  if (max_iterations == 0) throw InputError("max iterations must be >= 1");
  if (threads == 0) throw InputError("thread count must be >= 1");
}

double relative_error(std::span<const double> previous, std::span<const double> refined) {
  if (previous.size() != refined.size()) throw InputError("relative_error: length mismatch");
  if (refined.empty()) throw InputError("relative_error: empty input");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < refined.size(); ++i) {
    num += std::abs(refined[i] - previous[i]);
    den += std::abs(refined[i]);
  }
  if (den == 0.0) throw InputError("relative_error: refined values are all zero");
  return num / den;
}

std::vector<PartError> assess_parts(const BandPartition& partition, const SampleGrid& dense,
                                    std::span<const double> previous,
                                    std::span<const double> refined) {
  if (previous.size() != dense.size() || refined.size() != dense.size()) {
    throw InputError("assess_parts: curves do not match the dense grid");
  }
  const std::size_t n_parts = partition.count();
  std::vector<std::size_t> first(n_parts, dense.size());
  std::vector<std::size_t> count(n_parts, 0);
  for (std::size_t i = 0; i < dense.size(); ++i) {
    const std::size_t p = partition.part_of(dense[i]);
    if (count[p]++ == 0) first[p] = i;
  }

  // Each part is assessed over the points of its owner: itself when it holds
  // at least two dense points, otherwise the nearest such part on its left
  // (on its right for leading sparse parts).
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(n_parts, kNone);
  std::size_t last_dense = kNone;
  for (std::size_t p = 0; p < n_parts; ++p) {
    if (count[p] >= 2) last_dense = p;
    owner[p] = last_dense;
  }
  std::size_t first_dense = 0;
  while (first_dense < n_parts && count[first_dense] < 2) ++first_dense;
  if (first_dense == n_parts) first_dense = 0;
  for (std::size_t& o : owner) {
    if (o == kNone) o = first_dense;
  }

  std::vector<PartError> owner_err(n_parts);
  std::vector<double> prev_buf, next_buf;
  for (std::size_t q = 0; q < n_parts; ++q) {
    if (std::find(owner.begin(), owner.end(), q) == owner.end()) continue;
    prev_buf.clear();
    next_buf.clear();
    for (std::size_t p = 0; p < n_parts; ++p) {
      if (owner[p] != q) continue;
      for (std::size_t i = first[p]; i < first[p] + count[p]; ++i) {
        prev_buf.push_back(previous[i]);
        next_buf.push_back(refined[i]);
      }
    }
    try {
      owner_err[q].error = relative_error(prev_buf, next_buf);
    } catch (const InputError&) {
      owner_err[q] = {std::numeric_limits<double>::infinity(), true};
    }
  }
  std::vector<PartError> out(n_parts);
  for (std::size_t p = 0; p < n_parts; ++p) out[p] = owner_err[owner[p]];
  return out;
}

RefineResult refine_parts(const BandPartition& partition, std::span<const std::size_t> failing,
                          std::span<const double> sample_freqs, const SampleGrid& dense) {
  const double tol = dense.band().tolerance();
  std::vector<std::size_t> idx;
  idx.reserve(sample_freqs.size());
  for (double f : sample_freqs) {
    const auto i = dense.find(f);
    if (!i) throw InputError("sample frequency " + format_double(f) + " is not on the dense grid");
    idx.push_back(*i);
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());

  std::vector<char> is_failing(partition.count(), 0);
  for (std::size_t part : failing) is_failing.at(part) = 1;
  const auto in_failing = [&](std::size_t i) { return is_failing[partition.part_of(dense[i])] != 0; };

  // Bisect every gap that overlaps a failing part. When the midpoint falls in
  // a passing part, take the interior point of a failing part closest to it.
  std::set<std::size_t> fresh;
  for (std::size_t part : failing) {
    const double lo = partition.lower(part);
    const double hi = partition.upper(part);
    for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
      const double a = dense[idx[k]];
      const double b = dense[idx[k + 1]];
      if (!(a < hi - tol && b > lo + tol)) continue;
      if (idx[k + 1] - idx[k] < 2) continue;
      const std::size_t mid = idx[k] + (idx[k + 1] - idx[k]) / 2;
      if (in_failing(mid)) {
        fresh.insert(mid);
        continue;
      }
      std::optional<std::size_t> best;
      for (std::size_t i = idx[k] + 1; i < idx[k + 1]; ++i) {
        if (!in_failing(i)) continue;
        const auto dist = [&](std::size_t j) { return j > mid ? j - mid : mid - j; };
        if (!best || dist(i) < dist(*best)) best = i;
      }
      if (best) fresh.insert(*best);
    }
  }
  RefineResult r;
  r.new_indices.assign(fresh.begin(), fresh.end());
  for (std::size_t i : r.new_indices) r.new_freqs.push_back(dense[i]);
  r.saturated = r.new_indices.empty();
  return r;
}

namespace {

class SampleCache {
 public:
  SampleCache(const ResponseOracle& oracle, const SampleGrid& grid, std::size_t threads)
      : oracle_(oracle), grid_(grid), threads_(threads) {}

  /// Evaluates every index not yet cached. Returns the first failure message
  /// in index order, if any; successful values are kept either way.
  std::optional<std::string> evaluate(std::span<const std::size_t> indices) {
    std::vector<std::size_t> todo;
    for (std::size_t i : indices) {
      if (!values_.contains(i)) todo.push_back(i);
    }
    std::sort(todo.begin(), todo.end());
    todo.erase(std::unique(todo.begin(), todo.end()), todo.end());

    std::vector<double> out(todo.size());
    std::vector<std::string> errors(todo.size());
    std::vector<char> failed(todo.size(), 0);
    auto work = [&](std::size_t start, std::size_t stride) {
      for (std::size_t k = start; k < todo.size(); k += stride) {
        try {
          out[k] = oracle_.evaluate(grid_[todo[k]]);
          if (!std::isfinite(out[k])) {
            failed[k] = 1;
            errors[k] = "non-finite response at " + format_double(grid_[todo[k]]) + " Hz";
          }
        } catch (const std::exception& e) {
          failed[k] = 1;
          errors[k] = e.what();
        }
      }
    };
    const std::size_t workers = std::min(threads_, todo.size());
    if (workers <= 1) {
      work(0, 1);
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    }

    std::optional<std::string> first_error;
    for (std::size_t k = 0; k < todo.size(); ++k) {
      if (failed[k]) {
        if (!first_error) first_error = errors[k];
        continue;
      }
      values_.emplace(todo[k], out[k]);
    }
    return first_error;
  }

  std::vector<Sample> samples() const {
    std::vector<Sample> s;
    s.reserve(values_.size());
    for (const auto& [i, v] : values_) s.push_back({grid_[i], v});
    return s;
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> s;
    for (const auto& kv : values_) s.push_back(kv.first);
    return s;
  }

  std::size_t size() const noexcept { return values_.size(); }

 private:
  const ResponseOracle& oracle_;
  const SampleGrid& grid_;
  std::size_t threads_;
  std::map<std::size_t, double> values_;
};

std::vector<std::size_t> seed_indices(std::size_t dense, std::size_t seeds) {
  std::vector<std::size_t> idx(seeds);
  for (std::size_t k = 0; k < seeds; ++k) {
    idx[k] = static_cast<std::size_t>(std::llround(static_cast<double>(k) *
                                                   static_cast<double>(dense - 1) /
                                                   static_cast<double>(seeds - 1)));
  }
  return idx;
}

}  // namespace

SweepReport run_adaptive_sweep(const ResponseOracle& oracle, const SweepConfig& config) {
  config.validate();
  const SampleGrid grid = config.grid();
  const BandPartition partition = partition_band(grid.band(), config.n_parts);
  SampleCache cache(oracle, grid, config.threads);

  SweepReport report;
  report.dense_points = grid.size();
  auto finish = [&](std::vector<double> curve) {
    report.samples = cache.samples();
    report.solver_calls = cache.size();
    report.reduction_ratio =
        static_cast<double>(report.solver_calls) / static_cast<double>(report.dense_points);
    report.final_curve.resize(grid.size());
    for (std::size_t i = 0; i < grid.size() && i < curve.size(); ++i) {
      report.final_curve[i] = {grid[i], curve[i]};
    }
    if (curve.empty()) report.final_curve.clear();
  };
  auto abort_with = [&](const std::string& msg, std::vector<double> curve) -> SweepReport {
    finish(std::move(curve));
    throw SweepAborted("oracle failure: " + msg, report);
  };

  const std::vector<std::size_t> seeds = seed_indices(grid.size(), config.seed_count());
  if (auto err = cache.evaluate(seeds)) abort_with(*err, {});

  auto rebuild = [&](const std::vector<Sample>& samples) {
    return reconstruct(partition_into_groups(samples, grid.band()), grid.points());
  };

  // The first comparison is against every other seed sample (plus the last).
  std::vector<Sample> coarse;
  {
    const std::vector<Sample> all = cache.samples();
    for (std::size_t k = 0; k < all.size(); k += 2) coarse.push_back(all[k]);
    if (coarse.back().freq != all.back().freq) coarse.push_back(all.back());
  }
  std::vector<double> previous = rebuild(coarse).values;
  std::vector<double> current;

  for (std::size_t it = 0; it < config.max_iterations; ++it) {
    const std::vector<Sample> samples = cache.samples();
    Reconstruction rec = rebuild(samples);
    current = std::move(rec.values);
    report.fallbacks = rec.fallbacks;

    const auto errors = assess_parts(partition, grid, previous, current);
    IterationRecord record;
    record.sample_count = samples.size();
    record.corrected = rec.corrected;
    std::vector<std::size_t> failing;
    for (std::size_t p = 0; p < errors.size(); ++p) {
      record.part_errors.push_back(errors[p].error);
      if (errors[p].undefined || errors[p].error > config.part_error_threshold) {
        failing.push_back(p);
      }
    }
    record.failing_parts = failing.size();
    try {
      report.global_error = relative_error(previous, current);
    } catch (const InputError&) {
      report.global_error = std::numeric_limits<double>::quiet_NaN();
    }

    if (failing.empty()) {
      report.converged = true;
      report.iterations.push_back(std::move(record));
      break;
    }
    if (it + 1 == config.max_iterations) {
      report.iterations.push_back(std::move(record));
      break;
    }

    std::vector<double> freqs;
    freqs.reserve(samples.size());
    for (const Sample& s : samples) freqs.push_back(s.freq);
    const RefineResult refine = refine_parts(partition, failing, freqs, grid);
    record.inserted = refine.new_indices.size();
    if (refine.saturated) report.saturated = true;
    report.iterations.push_back(std::move(record));
    if (auto err = cache.evaluate(refine.new_indices)) abort_with(*err, current);
    previous = current;
  }

  finish(std::move(current));
  return report;
}

}  // namespace fsweep
