#include "fsweep/grouping.hpp"

#include <cmath>
#include <string>

#include "fsweep/error.hpp"

namespace fsweep {

std::vector<std::size_t> detect_extrema(std::span<const Sample> samples) {
  std::vector<std::size_t> out;
  if (samples.size() < 3) return out;
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    const double l = samples[i - 1].value;
    const double c = samples[i].value;
    const double r = samples[i + 1].value;
    if ((c > l && c > r) || (c < l && c < r)) out.push_back(i);
  }
  return out;
}

namespace {

void validate_samples(std::span<const Sample> samples, const FrequencyBand& band) {
  if (samples.size() < 2) throw InputError("grouping needs at least 2 samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Sample& s = samples[i];
    if (!std::isfinite(s.freq) || !std::isfinite(s.value)) {
      throw InputError("sample " + std::to_string(i) + " is not finite");
    }
    if (!band.contains(s.freq)) {
      throw InputError("sample " + std::to_string(i) + " lies outside the band");
    }
    if (i > 0 && !(s.freq > samples[i - 1].freq)) {
      throw InputError("samples must have strictly increasing frequencies (index " +
                       std::to_string(i) + ")");
    }
  }
}

}  // namespace

GroupSet partition_into_groups(std::span<const Sample> samples) {
  if (samples.size() < 2) throw InputError("grouping needs at least 2 samples");
  if (!(samples.front().freq < samples.back().freq)) {
    throw InputError("samples must have strictly increasing frequencies");
  }
  return partition_into_groups(samples, FrequencyBand(samples.front().freq, samples.back().freq));
}

GroupSet partition_into_groups(std::span<const Sample> samples, const FrequencyBand& band) {
  validate_samples(samples, band);

  GroupSet set{band, {}, 0, 0};
  auto emit = [&](std::span<const Sample> chunk, bool extreme) {
    Group g;
    g.samples.assign(chunk.begin(), chunk.end());
    g.kind = chunk.size() == 1 ? GroupKind::Single : GroupKind::NonSingle;
    g.is_extreme = extreme;
    if (!set.groups.empty()) g.dist_prev = g.min_freq() - set.groups.back().max_freq();
    (g.single() ? set.m_s : set.m_ns) += 1;
    set.groups.push_back(std::move(g));
  };
  auto emit_run = [&](std::size_t begin, std::size_t end) {
    while (begin < end) {
      const std::size_t n = std::min(kMaxGroupSize, end - begin);
      emit(samples.subspan(begin, n), false);
      begin += n;
    }
  };

  std::size_t run_start = 0;
  for (std::size_t e : detect_extrema(samples)) {
    emit_run(run_start, e);
    emit(samples.subspan(e, 1), true);
    run_start = e + 1;
  }
  emit_run(run_start, samples.size());
  return set;
}

bool window_contains(const GroupSet& set, std::size_t i, double x) {
  const Group& g = set.groups.at(i);
  const double lo = (i == 0) ? set.band.f_min() : g.min_freq() - g.dist_prev / 2.0;
  const double hi =
      (i + 1 == set.size()) ? set.band.f_max() : g.max_freq() + set.groups[i + 1].dist_prev / 2.0;
  return lo <= x && x <= hi;
}

}  // namespace fsweep
