#pragma once

// Hand-traced fixtures for every branch of the dispatch, extreme-point and
// isolated-point strategies. Expected supports were enumerated by hand from
// the grouping rules; expected values come from Neville's tableau over the
// listed support samples.

#include <string>
#include <vector>

#include "fsweep/grouping.hpp"
#include "fsweep/interpolator.hpp"
#include "support/test_support.hpp"

namespace fsweep::testing {

inline std::vector<Sample> unit_grid(double start, std::initializer_list<double> values) {
  std::vector<Sample> s;
  for (double v : values) s.push_back({start + static_cast<double>(s.size()), v});
  return s;
}

/// 1..9 valley: {1,2,3} {4} {5}* {6,7,8} {9}.
inline GroupSet valley9() {
  return partition_into_groups(unit_grid(1.0, {5, 4, 3, 2, 1, 2, 3, 4, 5}));
}
/// 1..7 peak: {1,2,3} {4}* {5,6,7}.
inline GroupSet peak7() { return partition_into_groups(unit_grid(1.0, {1, 2, 3, 9, 3, 2, 1})); }
/// 1..6 ramp with a peak at 5: {1,2,3} {4} {5}* {6}.
inline GroupSet ramp6() { return partition_into_groups(unit_grid(1.0, {1, 2, 3, 4, 5, 4})); }
/// 4..8 zig-zag: {4} {5}* {6}* {7}* {8}.
inline GroupSet zigzag5() { return partition_into_groups(unit_grid(4.0, {1, 5, 4, 6, 2})); }

/// Isolated single first, non-single neighbours after it (not produced by
/// the left-to-right chunking, so built by hand).
inline GroupSet isolated_head() {
  GroupSet set{FrequencyBand(1.0, 6.0), {}, 0, 0};
  set.groups.push_back({{{1.0, 2.0}}, GroupKind::Single, 0.0, false});
  set.groups.push_back({{{2.0, 3.0}, {3.0, 5.0}, {4.0, 4.0}}, GroupKind::NonSingle, 1.0, false});
  set.groups.push_back({{{5.0, 3.0}, {6.0, 2.0}}, GroupKind::NonSingle, 1.0, false});
  set.m_ns = 2;
  set.m_s = 1;
  return set;
}

/// Extreme single as the last group; forward queries have no X_near+1.
inline GroupSet extreme_tail() {
  GroupSet set{FrequencyBand(1.0, 5.0), {}, 0, 0};
  set.groups.push_back({{{1.0, 1.0}, {2.0, 2.0}, {3.0, 3.0}}, GroupKind::NonSingle, 0.0, false});
  set.groups.push_back({{{4.0, 6.0}}, GroupKind::Single, 1.0, true});
  set.m_ns = 1;
  set.m_s = 1;
  return set;
}

struct TraceCase {
  std::string name;
  GroupSet set;
  QueryContext ctx;
  Branch branch;
  CaseTag tag;
  std::vector<Sample> support;  // ascending frequency
  bool fallback = false;

  double expected_value() const { return neville(support, ctx.x_app); }
};

inline std::vector<TraceCase> trace_cases() {
  using B = Branch;
  using C = CaseTag;
  const auto none = std::nullopt;
  std::vector<TraceCase> t;
  // Dispatch.
  t.push_back({"dispatch/in-group", valley9(), {2.5, none}, B::InGroup, C::None,
               {{1, 5}, {2, 4}, {3, 3}}});
  t.push_back({"dispatch/sample-node", valley9(), {5.0, Sample{4.9, 1.2}}, B::SampleNode, C::None,
               {{5, 1}}});
  // Extreme point, forward.
  t.push_back({"extreme/forward/prev-quadratic", valley9(), {5.3, Sample{5.2, 1.4}},
               B::ExtremePrevQuadratic, C::None, {{5.2, 1.4}, {6, 2}, {7, 3}}});
  t.push_back({"extreme/forward/near-quadratic-case2", valley9(), {5.3, Sample{4.8, 1.3}},
               B::ExtremeNearQuadratic, C::Case2, {{5, 1}, {6, 2}, {7, 3}}});
  t.push_back({"extreme/forward/near-quadratic-no-prev", peak7(), {4.3, none},
               B::ExtremeNearQuadratic, C::Case2, {{4, 9}, {5, 3}, {6, 2}}});
  t.push_back({"extreme/forward/prev-on-node-case2", peak7(), {4.3, Sample{4.0, 9.0}},
               B::ExtremeNearQuadratic, C::Case2, {{4, 9}, {5, 3}, {6, 2}}});
  t.push_back({"extreme/forward/prev-linear-case3", ramp6(), {5.3, Sample{5.2, 4.8}},
               B::ExtremePrevLinear, C::Case3, {{5.2, 4.8}, {6, 4}}});
  t.push_back({"extreme/forward/near-linear", ramp6(), {5.3, Sample{4.8, 4.8}},
               B::ExtremeNearLinear, C::None, {{5, 5}, {6, 4}}});
  // Extreme point, mirrored toward X_near-1.
  t.push_back({"extreme/mirror/prev-quadratic", peak7(), {3.7, Sample{3.6, 3.5}},
               B::ExtremePrevQuadratic, C::None, {{2, 2}, {3, 3}, {3.6, 3.5}}});
  t.push_back({"extreme/mirror/near-quadratic", peak7(), {3.7, Sample{2.9, 2.9}},
               B::ExtremeNearQuadratic, C::None, {{2, 2}, {3, 3}, {4, 9}}});
  t.push_back({"extreme/mirror/prev-linear", valley9(), {4.7, Sample{4.6, 1.5}},
               B::ExtremePrevLinear, C::None, {{4, 2}, {4.6, 1.5}}});
  t.push_back({"extreme/mirror/near-linear", valley9(), {4.7, Sample{3.9, 2.1}},
               B::ExtremeNearLinear, C::None, {{4, 2}, {5, 1}}});
  t.push_back({"extreme/edge-fallback", extreme_tail(), {4.5, none}, B::EdgeFallback, C::None,
               {{3, 3}, {4, 6}}, true});
  // Isolated point.
  t.push_back({"isolated/former", valley9(), {4.5, Sample{2.9, 3.1}}, B::IsolatedFormer, C::None,
               {{2, 4}, {3, 3}, {4, 2}}});
  t.push_back({"isolated/former-with-prev", valley9(), {4.5, Sample{4.2, 2.1}},
               B::IsolatedFormerWithPrev, C::None, {{3, 3}, {4, 2}, {4.2, 2.1}}});
  t.push_back({"isolated/former-with-prev-left", valley9(), {3.7, Sample{3.6, 2.5}},
               B::IsolatedFormerWithPrev, C::None, {{3, 3}, {3.6, 2.5}, {4, 2}}});
  t.push_back({"isolated/former-prev-on-node", valley9(), {4.3, Sample{4.0, 2.0}},
               B::IsolatedFormer, C::None, {{2, 4}, {3, 3}, {4, 2}}});
  t.push_back({"isolated/former-tail", valley9(), {8.8, Sample{8.7, 4.6}},
               B::IsolatedFormerWithPrev, C::None, {{8, 4}, {8.7, 4.6}, {9, 5}}});
  t.push_back({"isolated/latter-with-prev", isolated_head(), {1.3, Sample{1.2, 2.4}},
               B::IsolatedLatterWithPrev, C::None, {{1.2, 2.4}, {2, 3}, {3, 5}}});
  t.push_back({"isolated/latter", isolated_head(), {1.3, none}, B::IsolatedLatter, C::None,
               {{1, 2}, {2, 3}, {3, 5}}});
  t.push_back({"isolated/linear-latter-single", zigzag5(), {4.5, none}, B::IsolatedLinear,
               C::None, {{4, 1}, {5, 5}}});
  t.push_back({"isolated/linear-former-single", zigzag5(), {7.6, Sample{7.5, 4.0}},
               B::IsolatedLinear, C::None, {{7, 6}, {8, 2}}});
  return t;
}

/// A query history fed to the correction pass, with the one entry it must
/// rewrite and the support that rewrite has to use.
struct CorrectionCase {
  std::string name;
  GroupSet set;
  std::vector<HistoryEntry> history;
  std::size_t index = 0;
  std::vector<Sample> support;
  double x = 0.0;

  double expected_value() const { return neville(support, x); }
};

inline std::vector<CorrectionCase> correction_cases() {
  std::vector<CorrectionCase> c;
  {
    const auto set = peak7();
    const std::vector<double> xs{4.0, 4.3, 4.6};
    const double y2 = neville(unit_grid(5.0, {3, 2, 1}), 4.6);
    c.push_back({"case2/in-group-successor", set, reconstruct(set, xs).history, 1,
                 {{4, 9}, {4.6, y2}, {5, 3}}, 4.3});
  }
  {
    HistoryEntry h;
    h.ctx = {5.3, Sample{6.2, 3.5}};
    h.eval.tag = CaseTag::Case3;
    h.eval.group = 2;
    h.eval.direction = 1;
    c.push_back({"case3/prev-beyond-latter", ramp6(), {h}, 0, {{6, 4}, {6.2, 3.5}}, 5.3});
  }
  {
    const auto set = ramp6();
    const std::vector<double> xs{5.0, 5.2, 5.3};
    c.push_back({"case3/near-linear", set, reconstruct(set, xs).history, 2, {{5, 5}, {6, 4}}, 5.3});
  }
  return c;
}

}  // namespace fsweep::testing
