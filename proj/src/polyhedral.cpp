#include "polyhedral.hpp"

#include <algorithm>

#include "symdex/error.hpp"

namespace symdex::detail {

namespace {

struct Affine {
  std::map<std::size_t, Scalar> terms;
  Scalar constant;
};

Affine operator+(Affine a, const Scalar& c) {
  a.constant += c;
  return a;
}

Affine negate(Affine a) {
  for (auto& t : a.terms) t.second = -t.second;
  a.constant = -a.constant;
  return a;
}

using AffinePoint = std::vector<Affine>;  // aligned with the window

class Emitter {
 public:
  Emitter(lp::LinearProgram& program, const std::vector<Coord>& window) : program_(program), window_(window) {}

  // Adds constraints expressing point in set; false for non-polyhedral input.
  bool emit(const SetExpr& set, const AffinePoint& point) {
    return std::visit([&](const auto& node) { return emit_node(node, point); }, set.node());
  }

 private:
  void bound(const Affine& a, lp::Relation rel, const Scalar& value) {
    program_.add_constraint({a.terms, rel, value - a.constant});
  }

  bool emit_node(const Box& box, const AffinePoint& point) {
    for (std::size_t k = 0; k < window_.size(); ++k) {
      const Scalar& r = box.radius(window_[k]);
      bound(point[k], lp::Relation::LessEq, r);
      bound(point[k], lp::Relation::GreaterEq, -r);
    }
    return true;
  }

  bool emit_node(const AbsConvHull& hull, const AffinePoint& point) {
    std::vector<std::pair<std::size_t, std::size_t>> multipliers;
    lp::Constraint budget{{}, lp::Relation::LessEq, 1};
    for (std::size_t j = 0; j < hull.points.size(); ++j) {
      const std::size_t plus = program_.add_variable();
      const std::size_t minus = program_.add_variable();
      multipliers.emplace_back(plus, minus);
      budget.coeffs[plus] = 1;
      budget.coeffs[minus] = 1;
    }
    program_.add_constraint(std::move(budget));
    for (std::size_t k = 0; k < window_.size(); ++k) {
      Affine row = point[k];
      for (std::size_t j = 0; j < hull.points.size(); ++j) {
        const Scalar p = hull.points[j][window_[k]];
        if (p == 0) continue;
        row.terms[multipliers[j].first] -= p;
        row.terms[multipliers[j].second] += p;
      }
      bound(row, lp::Relation::Equal, 0);
    }
    return true;
  }

  bool emit_node(const Translate& t, const AffinePoint& point) {
    AffinePoint shifted = point;
    for (std::size_t k = 0; k < window_.size(); ++k) shifted[k] = shifted[k] + Scalar(-t.by[window_[k]]);
    return emit(t.base, shifted);
  }

  bool emit_node(const Negate& n, const AffinePoint& point) {
    AffinePoint flipped;
    for (const auto& a : point) flipped.push_back(negate(a));
    return emit(n.base, flipped);
  }

  bool emit_node(const Intersect& in, const AffinePoint& point) {
    for (const auto& part : in.parts) {
      if (!emit(part, point)) return false;
    }
    return true;
  }

  bool emit_node(const Symmetrized& s, const AffinePoint& point) {
    for (const auto& x : s.witnesses) {
      AffinePoint plus = point;
      AffinePoint minus;
      for (std::size_t k = 0; k < window_.size(); ++k) {
        plus[k] = plus[k] + x[window_[k]];
        minus.push_back(negate(point[k]) + x[window_[k]]);
      }
      if (!emit(s.base, plus) || !emit(s.base, minus)) return false;
    }
    return true;
  }

  bool emit_node(const FinitePoints&, const AffinePoint&) { return false; }
  bool emit_node(const SignSums&, const AffinePoint&) { return false; }

  lp::LinearProgram& program_;
  const std::vector<Coord>& window_;
};

std::vector<Coord> make_window(const SetExpr& set, const std::vector<Coord>& extra) {
  std::set<Coord> coords = mentioned_coords(set);
  coords.insert(extra.begin(), extra.end());
  std::vector<Coord> window(coords.begin(), coords.end());
  window.push_back(window.empty() ? 1 : window.back() + 1);
  return window;
}

}  // namespace

std::optional<PolyhedralModel> PolyhedralModel::build(const SetExpr& set, const std::vector<Coord>& extra) {
  if (!is_polyhedral(set)) return std::nullopt;
  PolyhedralModel model;
  model.window_ = make_window(set, extra);
  AffinePoint point;
  for (std::size_t k = 0; k < model.window_.size(); ++k) {
    const std::size_t plus = model.program_.add_variable();
    const std::size_t minus = model.program_.add_variable();
    model.positive_.push_back(plus);
    model.negative_.push_back(minus);
    Affine a;
    a.terms[plus] = 1;
    a.terms[minus] = -1;
    point.push_back(std::move(a));
  }
  Emitter emitter(model.program_, model.window_);
  if (!emitter.emit(set, point)) return std::nullopt;
  return model;
}

std::optional<PolyhedralModel::Optimum> PolyhedralModel::maximize(const Functional& f) const {
  lp::LinearProgram program = program_;
  std::map<std::size_t, Scalar> objective;
  for (std::size_t k = 0; k < window_.size(); ++k) {
    const Scalar c = f[window_[k]];
    if (c == 0) continue;
    objective[positive_[k]] = c;
    objective[negative_[k]] = -c;
  }
  program.set_objective(std::move(objective));
  const lp::Solution sol = lp::solve(program);
  if (sol.status == lp::Status::Infeasible) return std::nullopt;
  if (sol.status == lp::Status::Unbounded) {
    throw Error(ErrorKind::Unbounded, "functional unbounded over a polyhedral set");
  }
  Optimum out{sol.objective, {}};
  for (std::size_t k = 0; k < window_.size(); ++k) {
    out.point.set(window_[k], sol.values[positive_[k]] - sol.values[negative_[k]]);
  }
  return out;
}

bool polyhedral_contains(const SetExpr& set, const SparseVec& v) {
  std::vector<Coord> extra;
  for (const auto& [i, x] : v.entries()) extra.push_back(i);
  std::vector<Coord> window = make_window(set, extra);
  lp::LinearProgram program;
  AffinePoint point;
  for (Coord i : window) point.push_back(Affine{{}, v[i]});
  Emitter emitter(program, window);
  if (!emitter.emit(set, point)) throw Error(ErrorKind::InvalidInput, "set is not polyhedral");
  return lp::solve(program).status == lp::Status::Optimal;
}

}  // namespace symdex::detail
