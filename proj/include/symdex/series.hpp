#pragma once

// Finite-horizon series: the weakly unconditionally Cauchy constant and the
// tail-bound harness. Every statement holds within the horizon only.

#include <optional>
#include <vector>

#include "symdex/indexes.hpp"

namespace symdex {

/// Measure of sup over the dual unit ball of sum_n |<f, x_n>|, which equals
/// max over sign patterns of ||sum_n theta_n x_n||.
Scalar wuc_bound(const SeriesSpec& s, const EvalOptions& opts = {});

SetExpr sign_sum_set(const SeriesSpec& s, SignMode mode);

/// Measure of max over all sign patterns of ||sum_{n=m}^{m_end} theta_n x_n||
/// by plain enumeration. Requires 1 <= m <= m_end <= horizon and a window of
/// at most 21 terms.
Scalar brute_tail_sup(const SeriesSpec& s, std::size_t m, std::size_t m_end);

enum class TailStatus { Found, NotAchievable };

const char* to_string(TailStatus status);

struct TailBoundResult {
  TailStatus status = TailStatus::NotAchievable;
  /// Tails over indices in (m, horizon] are within epsilon.
  std::size_t m = 0;
  /// Sign sums over indices <= m; x +- tail stays in the set for each.
  std::vector<SparseVec> witnesses;
  /// delta_0 of the symmetrized set (measure).
  BoundPair delta0;
  /// Enumeration check of the window (m, window_end].
  std::size_t window_end = 0;
  Scalar tail_sup;
  bool sound = false;
  /// NotAchievable: lower certificate against the last witnesses tried.
  std::optional<DeltaResult> lower;
};

TailBoundResult unconditional_tail_bound(const SeriesSpec& s, const Scalar& epsilon, const SearchStrategy& search,
                                         SignMode mode = SignMode::Subsets, const EvalOptions& opts = {});

}  // namespace symdex
