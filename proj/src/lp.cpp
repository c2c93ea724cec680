#include "symdex/lp.hpp"

#include <limits>
#include <optional>

namespace symdex::lp {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

class Tableau {
 public:
  // rows_[r] has `cols_` coefficients followed by the right-hand side.
  std::vector<std::vector<Scalar>> rows;
  std::vector<std::size_t> basis;
  std::size_t cols = 0;

  const Scalar& rhs(std::size_t r) const { return rows[r][cols]; }

  void pivot(std::size_t r, std::size_t c) {
    const Scalar p = rows[r][c];
    for (auto& x : rows[r]) x /= p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Scalar factor = rows[i][c];
      for (std::size_t j = 0; j <= cols; ++j) {
        if (rows[r][j] != 0) rows[i][j] -= factor * rows[r][j];
      }
    }
    basis[r] = c;
  }

  // Maximizes cost . x over columns not in `blocked`. Returns false when
  // the objective is unbounded.
  bool optimize(const std::vector<Scalar>& cost, const std::vector<bool>& blocked) {
    for (;;) {
      // Reduced costs r_j = c_j - c_B . column_j; Bland: smallest j with r_j > 0.
      std::size_t entering = kNone;
      for (std::size_t j = 0; j < cols && entering == kNone; ++j) {
        if (blocked[j] || is_basic(j)) continue;
        Scalar reduced = cost[j];
        for (std::size_t r = 0; r < rows.size(); ++r) {
          if (rows[r][j] != 0) reduced -= cost[basis[r]] * rows[r][j];
        }
        if (reduced > 0) entering = j;
      }
      if (entering == kNone) return true;

      std::size_t leaving = kNone;
      Scalar best_ratio;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r][entering] <= 0) continue;
        Scalar ratio = rhs(r) / rows[r][entering];
        if (leaving == kNone || ratio < best_ratio ||
            (ratio == best_ratio && basis[r] < basis[leaving])) {
          leaving = r;
          best_ratio = ratio;
        }
      }
      if (leaving == kNone) return false;
      pivot(leaving, entering);
    }
  }

  bool is_basic(std::size_t j) const {
    for (auto b : basis) {
      if (b == j) return true;
    }
    return false;
  }
};

}  // namespace

Solution solve(const LinearProgram& program) {
  const std::size_t n = program.num_variables();
  const auto& constraints = program.constraints();
  const std::size_t m = constraints.size();

  // Column layout: structural | slack/surplus | artificial.
  std::size_t slack_count = 0;
  std::size_t artificial_count = 0;
  std::vector<bool> flip(m, false);
  for (std::size_t r = 0; r < m; ++r) {
    Relation rel = constraints[r].relation;
    flip[r] = constraints[r].rhs < 0;
    if (flip[r] && rel != Relation::Equal) rel = rel == Relation::LessEq ? Relation::GreaterEq : Relation::LessEq;
    if (rel != Relation::Equal) ++slack_count;
    if (rel != Relation::LessEq) ++artificial_count;
  }

  Tableau t;
  t.cols = n + slack_count + artificial_count;
  t.rows.assign(m, std::vector<Scalar>(t.cols + 1));
  t.basis.assign(m, kNone);
  const std::size_t first_artificial = n + slack_count;
  std::size_t next_slack = n;
  std::size_t next_artificial = first_artificial;
  for (std::size_t r = 0; r < m; ++r) {
    const Constraint& c = constraints[r];
    const Scalar sign = flip[r] ? -1 : 1;
    for (const auto& [j, a] : c.coeffs) t.rows[r][j] += sign * a;
    t.rows[r][t.cols] = sign * c.rhs;
    Relation rel = c.relation;
    if (flip[r] && rel != Relation::Equal) rel = rel == Relation::LessEq ? Relation::GreaterEq : Relation::LessEq;
    if (rel == Relation::LessEq) {
      t.rows[r][next_slack] = 1;
      t.basis[r] = next_slack++;
    } else {
      if (rel == Relation::GreaterEq) t.rows[r][next_slack++] = -1;
      t.rows[r][next_artificial] = 1;
      t.basis[r] = next_artificial++;
    }
  }

  std::vector<bool> blocked(t.cols, false);
  if (artificial_count > 0) {
    std::vector<Scalar> phase1(t.cols, Scalar(0));
    for (std::size_t j = first_artificial; j < t.cols; ++j) phase1[j] = -1;
    t.optimize(phase1, blocked);
    Scalar infeasibility = 0;
    for (std::size_t r = 0; r < m; ++r) {
      if (t.basis[r] >= first_artificial) infeasibility += t.rhs(r);
    }
    if (infeasibility != 0) return {Status::Infeasible, 0, {}};
    // Drive zero-valued artificials out of the basis; rows with no other
    // nonzero entry are redundant and dropped.
    for (std::size_t r = 0; r < t.rows.size();) {
      if (t.basis[r] < first_artificial) {
        ++r;
        continue;
      }
      std::size_t col = kNone;
      for (std::size_t j = 0; j < first_artificial && col == kNone; ++j) {
        if (t.rows[r][j] != 0) col = j;
      }
      if (col == kNone) {
        t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(r));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(r));
      } else {
        t.pivot(r, col);
        ++r;
      }
    }
    for (std::size_t j = first_artificial; j < t.cols; ++j) blocked[j] = true;
  }

  std::vector<Scalar> cost(t.cols, Scalar(0));
  for (const auto& [j, c] : program.objective()) cost[j] = c;
  if (!t.optimize(cost, blocked)) return {Status::Unbounded, 0, {}};

  Solution out;
  out.status = Status::Optimal;
  out.values.assign(n, Scalar(0));
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (t.basis[r] < n) out.values[t.basis[r]] = t.rhs(r);
  }
  out.objective = 0;
  for (const auto& [j, c] : program.objective()) out.objective += c * out.values[j];
  return out;
}

}  // namespace symdex::lp
