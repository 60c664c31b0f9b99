#include "fsweep/interpolator.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "fsweep/error.hpp"
#include "fsweep/lagrange.hpp"

namespace fsweep {

std::string_view to_string(CaseTag tag) noexcept {
  switch (tag) {
    case CaseTag::None: return "none";
    case CaseTag::Case2: return "case2";
    case CaseTag::Case3: return "case3";
  }
  return "?";
}

std::string_view to_string(Branch branch) noexcept {
  switch (branch) {
    case Branch::InGroup: return "in_group";
    case Branch::SampleNode: return "sample_node";
    case Branch::ExtremePrevQuadratic: return "extreme_prev_quadratic";
    case Branch::ExtremeNearQuadratic: return "extreme_near_quadratic";
    case Branch::ExtremePrevLinear: return "extreme_prev_linear";
    case Branch::ExtremeNearLinear: return "extreme_near_linear";
    case Branch::IsolatedFormerWithPrev: return "isolated_former_with_prev";
    case Branch::IsolatedFormer: return "isolated_former";
    case Branch::IsolatedLatterWithPrev: return "isolated_latter_with_prev";
    case Branch::IsolatedLatter: return "isolated_latter";
    case Branch::IsolatedLinear: return "isolated_linear";
    case Branch::EdgeFallback: return "edge_fallback";
  }
  return "?";
}

namespace {

Evaluation make_eval(std::span<const Sample> support, double x, Branch branch,
                     std::size_t group, int direction, CaseTag tag = CaseTag::None) {
  for (const Sample& s : support) {
    if (!std::isfinite(s.value)) throw InputError("non-finite response in interpolation support");
  }
  Evaluation e;
  e.value = lagrange_eval(support, x);
  e.tag = tag;
  e.branch = branch;
  e.group = group;
  e.direction = direction;
  e.support.reserve(support.size());
  for (const Sample& s : support) e.support.push_back(s.freq);
  std::sort(e.support.begin(), e.support.end());
  return e;
}

template <std::size_t N>
Evaluation make_eval(const std::array<Sample, N>& support, double x, Branch branch,
                     std::size_t group, int direction, CaseTag tag = CaseTag::None) {
  return make_eval(std::span<const Sample>(support), x, branch, group, direction, tag);
}

// Line through X_near and the facing sample of whichever neighbour exists.
Evaluation edge_fallback(const GroupSet& set, const QueryContext& ctx, std::size_t near,
                         int direction) {
  const Sample& xn = set[near].samples.front();
  std::optional<Sample> other;
  if (near + 1 < set.size()) other = set[near + 1].samples.front();
  else if (near > 0) other = set[near - 1].samples.back();

  Evaluation e;
  if (other) {
    e = make_eval(std::array{xn, *other}, ctx.x_app, Branch::EdgeFallback, near, direction);
  } else {
    e = make_eval(std::array{xn}, ctx.x_app, Branch::EdgeFallback, near, direction);
  }
  e.fallback = true;
  return e;
}

bool beyond(const std::optional<Sample>& prev, double f, double tol) {
  return prev && prev->freq - f > tol;
}

}  // namespace

std::optional<std::size_t> nearest_single(const GroupSet& set, double x) {
  std::optional<std::size_t> best;
  double best_dist = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (!set[i].single()) continue;
    const double d = std::abs(x - set[i].samples.front().freq);
    if (!best || d < best_dist) {
      best = i;
      best_dist = d;
    }
  }
  return best;
}

Evaluation evaluate_at(const GroupSet& set, const QueryContext& ctx) {
  if (set.groups.empty()) throw InputError("cannot interpolate without groups");
  if (!std::isfinite(ctx.x_app)) throw InputError("query frequency is not finite");
  if (ctx.prev && !std::isfinite(ctx.prev->value)) {
    throw InputError("non-finite predecessor response");
  }

  for (std::size_t i = 0; i < set.size(); ++i) {
    if (!set[i].single() && window_contains(set, i, ctx.x_app)) {
      return make_eval(set[i].samples, ctx.x_app, Branch::InGroup, i, 0);
    }
  }

  const auto near = nearest_single(set, ctx.x_app);
  if (!near) throw InputError("query frequency is not covered by any group");
  const Sample& xn = set[*near].samples.front();
  if (std::abs(ctx.x_app - xn.freq) <= set.band.tolerance()) {
    if (!std::isfinite(xn.value)) throw InputError("non-finite response in interpolation support");
    Evaluation e;
    e.value = xn.value;
    e.branch = Branch::SampleNode;
    e.group = *near;
    e.support = {xn.freq};
    return e;
  }
  return set[*near].is_extreme ? scenario1(set, ctx, *near) : scenario2(set, ctx, *near);
}

Evaluation scenario1(const GroupSet& set, const QueryContext& ctx, std::size_t near) {
  const double tol = set.band.tolerance();
  const Sample& xn = set[near].samples.front();
  const int dir = ctx.x_app > xn.freq ? 1 : -1;

  if (dir > 0) {
    if (near + 1 >= set.size()) return edge_fallback(set, ctx, near, dir);
    const Group& latter = set[near + 1];
    const bool use_prev = beyond(ctx.prev, xn.freq, tol);
    if (!latter.single()) {
      const Sample& a = latter.samples[0];
      const Sample& b = latter.samples[1];
      if (use_prev) {
        return make_eval(std::array{*ctx.prev, a, b}, ctx.x_app, Branch::ExtremePrevQuadratic,
                         near, dir);
      }
      return make_eval(std::array{xn, a, b}, ctx.x_app, Branch::ExtremeNearQuadratic, near, dir,
                       CaseTag::Case2);
    }
    const Sample& a = latter.samples.front();
    if (use_prev) {
      return make_eval(std::array{*ctx.prev, a}, ctx.x_app, Branch::ExtremePrevLinear, near, dir,
                       CaseTag::Case3);
    }
    return make_eval(std::array{xn, a}, ctx.x_app, Branch::ExtremeNearLinear, near, dir);
  }

  // Mirror: X_near-1 takes the role of X_near+1 and its last points the role
  // of the first ones. The correction pass only knows the forward case, so
  // the mirrored branches carry no tag.
  if (near == 0) return edge_fallback(set, ctx, near, dir);
  const Group& former = set[near - 1];
  const bool use_prev = beyond(ctx.prev, former.max_freq(), tol);
  const std::size_t n = former.samples.size();
  if (!former.single()) {
    const Sample& a = former.samples[n - 2];
    const Sample& b = former.samples[n - 1];
    if (use_prev) {
      return make_eval(std::array{a, b, *ctx.prev}, ctx.x_app, Branch::ExtremePrevQuadratic, near,
                       dir);
    }
    return make_eval(std::array{a, b, xn}, ctx.x_app, Branch::ExtremeNearQuadratic, near, dir);
  }
  const Sample& a = former.samples.front();
  if (use_prev) {
    return make_eval(std::array{a, *ctx.prev}, ctx.x_app, Branch::ExtremePrevLinear, near, dir);
  }
  return make_eval(std::array{a, xn}, ctx.x_app, Branch::ExtremeNearLinear, near, dir);
}

Evaluation scenario2(const GroupSet& set, const QueryContext& ctx, std::size_t near) {
  const double tol = set.band.tolerance();
  const Sample& xn = set[near].samples.front();
  const int dir = ctx.x_app > xn.freq ? 1 : -1;
  const bool has_former = near > 0;
  const bool has_latter = near + 1 < set.size();

  if (has_former && !set[near - 1].single()) {
    const Group& former = set[near - 1];
    const std::size_t n = former.samples.size();
    // A predecessor sitting on X_near itself would repeat a node.
    if (beyond(ctx.prev, former.max_freq(), tol) && std::abs(ctx.prev->freq - xn.freq) > tol) {
      return make_eval(std::array{former.samples[n - 1], *ctx.prev, xn}, ctx.x_app,
                       Branch::IsolatedFormerWithPrev, near, dir);
    }
    return make_eval(std::array{former.samples[n - 2], former.samples[n - 1], xn}, ctx.x_app,
                     Branch::IsolatedFormer, near, dir);
  }
  if (has_latter && !set[near + 1].single()) {
    const Group& latter = set[near + 1];
    if (beyond(ctx.prev, xn.freq, tol)) {
      return make_eval(std::array{*ctx.prev, latter.samples[0], latter.samples[1]}, ctx.x_app,
                       Branch::IsolatedLatterWithPrev, near, dir);
    }
    return make_eval(std::array{xn, latter.samples[0], latter.samples[1]}, ctx.x_app,
                     Branch::IsolatedLatter, near, dir);
  }
  if (!has_former && !has_latter) return edge_fallback(set, ctx, near, dir);

  // Both remaining neighbours are single groups (or absent): take the one
  // nearer to the query, ties toward lower frequency.
  std::optional<Sample> other;
  if (has_former) other = set[near - 1].samples.back();
  if (has_latter) {
    const Sample& cand = set[near + 1].samples.front();
    if (!other || std::abs(cand.freq - ctx.x_app) < std::abs(other->freq - ctx.x_app)) {
      other = cand;
    }
  }
  return make_eval(std::array{xn, *other}, ctx.x_app, Branch::IsolatedLinear, near, dir);
}

namespace {

bool distinct(std::span<const Sample> pts, double tol) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t k = i + 1; k < pts.size(); ++k) {
      if (std::abs(pts[i].freq - pts[k].freq) <= tol) return false;
    }
  }
  return true;
}

}  // namespace

CorrectionResult correction_pass(std::span<const HistoryEntry> history, const GroupSet& set) {
  const double tol = set.band.tolerance();
  CorrectionResult out;
  out.values.reserve(history.size());
  for (const HistoryEntry& h : history) out.values.push_back(h.eval.value);

  for (std::size_t k = 0; k < history.size(); ++k) {
    const HistoryEntry& h = history[k];
    if (h.eval.tag == CaseTag::None) continue;
    const std::size_t near = h.eval.group;
    if (near + 1 >= set.size() || h.eval.direction <= 0) {
      out.flagged.push_back(k);
      continue;
    }
    const Sample& xn = set[near].samples.front();
    const Sample& first_latter = set[near + 1].samples.front();

    std::array<Sample, 3> support{};
    std::size_t n = 0;
    if (h.eval.tag == CaseTag::Case2) {
      if (k + 1 >= history.size() || history[k + 1].eval.branch != Branch::InGroup) continue;
      support = {xn, Sample{history[k + 1].ctx.x_app, out.values[k + 1]}, first_latter};
      n = 3;
    } else {
      if (!h.ctx.prev) {
        out.flagged.push_back(k);
        continue;
      }
      Sample prev = *h.ctx.prev;
      if (k > 0 && std::abs(history[k - 1].ctx.x_app - prev.freq) <= tol) {
        prev.value = out.values[k - 1];
      }
      support = {prev.freq > first_latter.freq ? prev : xn, first_latter};
      n = 2;
    }

    const std::span<const Sample> pts(support.data(), n);
    if (!distinct(pts, tol)) {
      out.flagged.push_back(k);
      continue;
    }
    CorrectionTrace t;
    t.index = k;
    t.tag = h.eval.tag;
    t.before = out.values[k];
    t.after = lagrange_eval(pts, h.ctx.x_app);
    for (const Sample& s : pts) t.support.push_back(s.freq);
    std::sort(t.support.begin(), t.support.end());
    out.values[k] = t.after;
    out.corrected.push_back(std::move(t));
  }
  return out;
}

Reconstruction reconstruct(const GroupSet& set, std::span<const double> points) {
  Reconstruction r;
  r.history.reserve(points.size());
  std::optional<Sample> prev;
  for (double x : points) {
    QueryContext ctx{x, prev};
    Evaluation e = evaluate_at(set, ctx);
    if (e.fallback) ++r.fallbacks;
    prev = Sample{x, e.value};
    r.history.push_back({std::move(ctx), std::move(e)});
  }
  CorrectionResult c = correction_pass(r.history, set);
  r.values = std::move(c.values);
  r.corrected = c.corrected.size();
  return r;
}

}  // namespace fsweep
