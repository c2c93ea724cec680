#pragma once

// Bounded sets in c00 described by a small closed algebra of expressions.
// Every variant has an exact membership test; diameters and functional
// suprema come back as certified intervals (BoundPair), collapsing to a
// single value whenever a closed form, an enumeration or a linear program
// decides them exactly.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "symdex/vectors.hpp"

namespace symdex {

/// A finite-horizon series x_1..x_H.
struct SeriesSpec {
  std::vector<SparseVec> terms;
  NormKind norm = NormKind::Sup;
  std::string label;

  std::size_t horizon() const { return terms.size(); }
};

enum class SignMode { Prefixes, Subsets };

const char* to_string(SignMode mode);
SignMode parse_sign_mode(std::string_view text);

inline constexpr std::uint64_t kDefaultNodeBudget = 2'000'000;

class SetExpr;

struct FinitePoints {
  std::vector<SparseVec> points;
};

/// {v : |v_i| <= r_i}, r_i = overrides[i] if present, else default_radius.
/// Canonical form never stores an override equal to the default.
struct Box {
  Scalar default_radius;
  std::map<Coord, Scalar> overrides;

  const Scalar& radius(Coord i) const {
    auto it = overrides.find(i);
    return it == overrides.end() ? default_radius : it->second;
  }
};

/// PREFIXES: {sum_{n<=m} t_n x_n : 1 <= m <= horizon, t_n = +-1}.
/// SUBSETS:  {sum_{n in F} t_n x_n : F subset of [1..horizon], t_n = +-1}.
struct SignSums {
  SeriesSpec series;
  SignMode mode = SignMode::Subsets;
  std::size_t horizon = 0;
  std::uint64_t node_budget = kDefaultNodeBudget;
};

struct Translate;
struct Negate;
struct Intersect;
struct Symmetrized;

/// Absolutely convex hull of finitely many points.
struct AbsConvHull {
  std::vector<SparseVec> points;
};

/// Immutable handle; copies share the expression tree.
class SetExpr {
 public:
  struct Node;

  SetExpr(FinitePoints v);
  SetExpr(Box v);
  SetExpr(SignSums v);
  SetExpr(Translate v);
  SetExpr(Negate v);
  SetExpr(Intersect v);
  SetExpr(Symmetrized v);
  SetExpr(AbsConvHull v);

  /// The std::variant over the node structs.
  const auto& node() const;

  template <class T>
  const T* as() const;

 private:
  std::shared_ptr<const Node> node_;
};

struct Translate {
  SetExpr base;
  SparseVec by;
};

struct Negate {
  SetExpr base;
};

struct Intersect {
  std::vector<SetExpr> parts;
};

/// The intersection over witnesses x of (base - x) and (x - base).
struct Symmetrized {
  SetExpr base;
  std::vector<SparseVec> witnesses;
};

struct SetExpr::Node : std::variant<FinitePoints, Box, SignSums, Translate, Negate, Intersect, Symmetrized, AbsConvHull> {
  using variant::variant;
};

inline const auto& SetExpr::node() const {
  using Variant = std::variant<FinitePoints, Box, SignSums, Translate, Negate, Intersect, Symmetrized, AbsConvHull>;
  return static_cast<const Variant&>(*node_);
}

template <class T>
const T* SetExpr::as() const {
  return std::get_if<T>(&node());
}

// Convenience constructors.
SetExpr make_box(const Scalar& default_radius, std::map<Coord, Scalar> overrides = {});
SetExpr make_points(std::vector<SparseVec> points);
SetExpr make_sign_sums(SeriesSpec series, SignMode mode, std::size_t horizon = 0,
                       std::uint64_t node_budget = kDefaultNodeBudget);

/// Certified interval. Values are measures (see vectors.hpp): squared for
/// the Euclidean norm. An absent upper bound means +infinity.
struct BoundPair {
  Scalar lower;
  std::optional<Scalar> upper;
  /// Points that realize the lower bound (e.g. a far pair for a diameter).
  std::vector<SparseVec> lower_witness;
  /// Points that realize the upper bound when it is attained.
  std::vector<SparseVec> upper_witness;

  bool exact() const { return upper && *upper == lower; }
  static BoundPair exactly(const Scalar& value) { return {value, value, {}, {}}; }
};

/// Knobs for the computations that may enumerate or sample. Everything is
/// deterministic given these values.
struct EvalOptions {
  std::uint64_t seed = 0;
  /// Largest finite set that is materialized member by member.
  std::size_t enumeration_limit = 1u << 14;
  /// Largest sign-pattern enumeration (2^20).
  std::uint64_t sign_budget = 1ull << 20;
  /// Largest support for sign-vector LP enumeration in the sum norm.
  std::size_t sign_lp_support = 12;
  /// Seeded random probes used by interval lower bounds.
  std::size_t samples = 32;
};

// ---------------------------------------------------------------------------
// Axis-aligned boxes with arbitrary intervals; the closed form of boxes and of
// their translates, negations, intersections and symmetrizations.

struct Interval {
  Scalar lo;
  Scalar hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct AxisBox {
  Interval fallback;                  // every coordinate not listed
  std::map<Coord, Interval> ranges;   // never equal to fallback

  const Interval& range(Coord i) const {
    auto it = ranges.find(i);
    return it == ranges.end() ? fallback : it->second;
  }
  void set_range(Coord i, Interval r);
  bool empty() const;
  /// Largest listed coordinate.
  Coord max_listed() const { return ranges.empty() ? 0 : ranges.rbegin()->first; }
  bool symmetric() const;
  Box to_box() const;  // requires symmetric()
};

AxisBox to_axis_box(const Box& box);
std::optional<AxisBox> as_axis_box(const SetExpr& set);

// ---------------------------------------------------------------------------
// Structural helpers.

/// Largest coordinate mentioned anywhere in the expression.
Coord max_coord(const SetExpr& set);

/// Rewrites into closed forms where possible: boxes through symmetrization,
/// negation and intersection; nested symmetrizations flattened into a
/// single witness list over the innermost base.
SetExpr simplify(const SetExpr& set);

/// All members when the set is finite with at most opts.enumeration_limit
/// members; sorted by lex order, no duplicates.
std::optional<std::vector<SparseVec>> enumerate_members(const SetExpr& set, const EvalOptions& opts = {});

/// Measure of max over sign patterns theta of ||sum_n theta_n terms_n||.
/// Closed form for the sup norm; otherwise enumerates the smaller of the
/// sign patterns and (sum norm only) the dual sign vectors on the joint
/// support. Throws BudgetExceeded beyond `budget` patterns.
Scalar max_signed_sum(std::span<const SparseVec> terms, NormKind kind, std::uint64_t budget);

/// True for sets expressible by finitely many linear constraints over a
/// finite coordinate window (boxes, hulls and their combinations).
bool is_polyhedral(const SetExpr& set);

// ---------------------------------------------------------------------------
// Operations.

bool contains(const SetExpr& set, const SparseVec& v);

/// Symmetrized(set, witnesses) in closed form where possible. Throws
/// WitnessNotMember when a witness is outside the set.
SetExpr symmetrize(const SetExpr& set, const std::vector<SparseVec>& witnesses);

BoundPair diameter(const SetExpr& set, NormKind kind, const EvalOptions& opts = {});

BoundPair sup_functional(const Functional& f, const SetExpr& set, const EvalOptions& opts = {});

/// Box containing a symmetrized set, from coordinate-functional suprema of
/// its base.
Box coordinate_relaxation(const SetExpr& symmetrized, const EvalOptions& opts = {});

/// A nonzero d with x + d and x - d in the set for every witness, chosen
/// norm-maximal within the candidate family of the set's variant (ties:
/// leading-positive, then lowest coordinate / lex order). `shrink` in [0,1)
/// scales the result by (1 - shrink).
std::optional<SparseVec> free_direction(const SetExpr& set, const std::vector<SparseVec>& witnesses,
                                        const Scalar& shrink = 0, NormKind kind = NormKind::Sup,
                                        const EvalOptions& opts = {});

/// Best nonzero member of `set` by better_direction() within the candidate
/// family of its variant. For symmetric sets this is free_direction with the
/// witness 0.
std::optional<SparseVec> best_member_direction(const SetExpr& set, NormKind kind, const EvalOptions& opts = {});

/// A member maximizing f when the variant allows computing one exactly.
std::optional<SparseVec> argmax_point(const Functional& f, const SetExpr& set, const EvalOptions& opts = {});

std::string describe(const SetExpr& set);

}  // namespace symdex
