#pragma once

// Linear-programming view of polyhedral set expressions. A point v of the
// set is encoded over a finite coordinate window (every coordinate mentioned
// by the expression or the query, plus one fresh coordinate standing for all
// unmentioned ones); the expression contributes linear constraints on v and
// on auxiliary hull multipliers.

#include <optional>
#include <set>
#include <vector>

#include "symdex/lp.hpp"
#include "symdex/sets.hpp"

namespace symdex::detail {

/// Every coordinate appearing in the expression (boxes, points, witnesses,
/// translations, series terms).
std::set<Coord> mentioned_coords(const SetExpr& set);

class PolyhedralModel {
 public:
  /// nullopt when the expression contains a non-polyhedral variant.
  /// `extra` lists coordinates that must be part of the window.
  static std::optional<PolyhedralModel> build(const SetExpr& set, const std::vector<Coord>& extra = {});

  /// Sorted window; the last entry is the fresh coordinate.
  const std::vector<Coord>& window() const { return window_; }
  Coord fresh() const { return window_.back(); }

  struct Optimum {
    Scalar value;
    SparseVec point;
  };
  /// nullopt when the set is empty. f must be supported inside the window.
  std::optional<Optimum> maximize(const Functional& f) const;

 private:
  lp::LinearProgram program_;
  std::vector<Coord> window_;
  std::vector<std::size_t> positive_;
  std::vector<std::size_t> negative_;
};

/// Exact membership by LP feasibility. Requires is_polyhedral(set).
bool polyhedral_contains(const SetExpr& set, const SparseVec& v);

}  // namespace symdex::detail
