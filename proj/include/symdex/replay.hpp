#pragma once

// Replay logs: the checks a report carries so that a separate process can
// re-verify its certificates with membership tests and exact arithmetic
// alone. Sets are stored once in a table and referenced by index.

#include <string>
#include <vector>

#include "symdex/json_io.hpp"

namespace symdex {

class ReplayLog {
 public:
  void member(const SetExpr& set, const SparseVec& point, bool expect = true);
  /// norm(v) compared with a measure: "ge", "le" or "eq".
  void norm(const SparseVec& v, NormKind kind, const std::string& relation, const Scalar& value);
  void pair(const Functional& f, const SparseVec& v, const Scalar& value);
  void dual_norm(const Functional& f, NormKind kind, const Scalar& value);
  /// parent = (left + right) / 2.
  void midpoint(const SparseVec& parent, const SparseVec& left, const SparseVec& right);

  std::size_t size() const { return checks_.size(); }
  Json sets() const { return sets_; }
  Json checks() const { return checks_; }

 private:
  std::size_t set_index(const SetExpr& set);

  Json sets_ = Json::array();
  Json checks_ = Json::array();
  std::vector<std::string> keys_;
};

struct ReplayOutcome {
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;
};

/// Re-runs every check of a report's "replay" section against its "sets".
ReplayOutcome replay_report(const Json& report);

}  // namespace symdex
