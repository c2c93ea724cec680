#pragma once

// Dense two-phase primal simplex over exact rationals with Bland's rule.
// Problems here are small (tens of rows), so a dense tableau is adequate and
// Bland's rule makes the pivot sequence, and therefore the returned vertex,
// deterministic.

#include <cstddef>
#include <map>
#include <vector>

#include "symdex/scalar.hpp"

namespace symdex::lp {

enum class Relation { LessEq, Equal, GreaterEq };

struct Constraint {
  std::map<std::size_t, Scalar> coeffs;
  Relation relation = Relation::LessEq;
  Scalar rhs;
};

/// maximize objective . x  subject to constraints, x >= 0.
class LinearProgram {
 public:
  std::size_t add_variable() { return num_vars_++; }
  std::size_t num_variables() const { return num_vars_; }

  void add_constraint(Constraint c) { constraints_.push_back(std::move(c)); }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  void set_objective(std::map<std::size_t, Scalar> objective) { objective_ = std::move(objective); }
  const std::map<std::size_t, Scalar>& objective() const { return objective_; }

 private:
  std::size_t num_vars_ = 0;
  std::vector<Constraint> constraints_;
  std::map<std::size_t, Scalar> objective_;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  Scalar objective;
  std::vector<Scalar> values;
};

Solution solve(const LinearProgram& program);

}  // namespace symdex::lp
