#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fsweep/domain.hpp"
#include "fsweep/grouping.hpp"

namespace fsweep {

/// Strategy record consumed by the correction pass.
enum class CaseTag { None, Case2, Case3 };

/// Which rule produced a value. Extreme* branches come from the
/// extreme-neighbour strategy (forward or mirrored), Isolated* from the
/// isolated-point strategy.
enum class Branch {
  InGroup,
  SampleNode,
  ExtremePrevQuadratic,
  ExtremeNearQuadratic,
  ExtremePrevLinear,
  ExtremeNearLinear,
  IsolatedFormerWithPrev,
  IsolatedFormer,
  IsolatedLatterWithPrev,
  IsolatedLatter,
  IsolatedLinear,
  EdgeFallback,
};

std::string_view to_string(CaseTag tag) noexcept;
std::string_view to_string(Branch branch) noexcept;

/// One query of a left-to-right sweep. `prev` is the preceding query point
/// together with the value already computed for it.
struct QueryContext {
  double x_app = 0.0;
  std::optional<Sample> prev;
};

struct Evaluation {
  double value = 0.0;
  CaseTag tag = CaseTag::None;
  Branch branch = Branch::InGroup;
  /// Matched non-single group for InGroup, otherwise the nearest single group.
  std::size_t group = 0;
  /// Sign of x_app - X_near; 0 for InGroup.
  int direction = 0;
  /// Frequencies of the support points, ascending.
  std::vector<double> support;
  /// A required neighbouring group was missing and an edge rule was used.
  bool fallback = false;
};

/// Nearest single group to x; ties go to the lower-frequency group.
std::optional<std::size_t> nearest_single(const GroupSet& set, double x);

/// Reconstructed response at ctx.x_app: the first non-single group whose
/// window holds x_app answers directly, otherwise the nearest single group
/// picks the extreme (scenario1) or isolated (scenario2) strategy.
Evaluation evaluate_at(const GroupSet& set, const QueryContext& ctx);

/// Strategy around an extreme single group `near`.
Evaluation scenario1(const GroupSet& set, const QueryContext& ctx, std::size_t near);

/// Strategy around an isolated (non-extreme) single group `near`.
Evaluation scenario2(const GroupSet& set, const QueryContext& ctx, std::size_t near);

struct HistoryEntry {
  QueryContext ctx;
  Evaluation eval;
};

struct CorrectionTrace {
  std::size_t index = 0;
  CaseTag tag = CaseTag::None;
  std::vector<double> support;
  double before = 0.0;
  double after = 0.0;
};

struct CorrectionResult {
  std::vector<double> values;
  std::vector<CorrectionTrace> corrected;
  /// Tagged entries that could not be corrected (missing neighbour or a
  /// degenerate support); their values are unchanged.
  std::vector<std::size_t> flagged;
};

/// Revisits Case2/Case3 entries of an increasing-frequency history.
///
/// A Case2 entry followed by an in-group query is recomputed from
/// {X_near, successor, first point of X_near+1}. A Case3 entry is recomputed
/// as the line through {predecessor, X_near+1 first point} when the
/// predecessor lies beyond that point, otherwise through
/// {X_near, X_near+1 first point}. Predecessor values are taken after their
/// own correction.
CorrectionResult correction_pass(std::span<const HistoryEntry> history, const GroupSet& set);

struct Reconstruction {
  std::vector<double> values;
  std::vector<HistoryEntry> history;
  std::size_t corrected = 0;
  std::size_t fallbacks = 0;
};

/// Sweeps `points` left to right through evaluate_at and applies the
/// correction pass.
Reconstruction reconstruct(const GroupSet& set, std::span<const double> points);

}  // namespace fsweep
