#include <algorithm>
#include <set>

#include "polyhedral.hpp"
#include "symdex/error.hpp"
#include "symdex/sets.hpp"

namespace symdex {

namespace {

std::span<const SparseVec> active_terms(const SignSums& s) {
  return std::span<const SparseVec>(s.series.terms).first(std::min(s.horizon, s.series.terms.size()));
}

std::vector<Coord> window_of(const SetExpr& set) {
  auto coords = detail::mentioned_coords(set);
  std::vector<Coord> out(coords.begin(), coords.end());
  out.push_back(out.empty() ? 1 : out.back() + 1);
  return out;
}

BoundPair exact_with(const Scalar& value, std::vector<SparseVec> witnesses) {
  BoundPair out = BoundPair::exactly(value);
  out.lower_witness = witnesses;
  out.upper_witness = std::move(witnesses);
  return out;
}

Scalar clamp_zero(const Interval& r) {
  if (r.lo > 0) return r.lo;
  if (r.hi < 0) return r.hi;
  return 0;
}

// ---------------------------------------------------------------------------
// Diameters.

BoundPair finite_diameter(const std::vector<SparseVec>& points, NormKind kind, const EvalOptions& opts) {
  if (points.empty()) throw Error(ErrorKind::EmptySet, "diameter of the empty set");
  std::set<Coord> coords;
  for (const auto& p : points) {
    for (const auto& [i, v] : p.entries()) coords.insert(i);
  }
  if (kind == NormKind::Sup) {
    Scalar best = 0;
    std::size_t lo_at = 0, hi_at = 0;
    for (Coord i : coords) {
      std::size_t a = 0, b = 0;
      for (std::size_t k = 1; k < points.size(); ++k) {
        if (points[k][i] < points[a][i]) a = k;
        if (points[k][i] > points[b][i]) b = k;
      }
      const Scalar width = points[b][i] - points[a][i];
      if (best < width) {
        best = width;
        lo_at = a;
        hi_at = b;
      }
    }
    return exact_with(best, {points[lo_at], points[hi_at]});
  }
  if (kind == NormKind::Sum && coords.size() >= 1 && coords.size() <= opts.sign_lp_support &&
      (1ull << (coords.size() - 1)) < points.size() * points.size()) {
    const std::vector<Coord> cols(coords.begin(), coords.end());
    Scalar best = 0;
    std::size_t lo_at = 0, hi_at = 0;
    for (std::uint64_t mask = 0; mask < (1ull << (cols.size() - 1)); ++mask) {
      std::size_t a = 0, b = 0;
      std::vector<Scalar> values(points.size());
      for (std::size_t k = 0; k < points.size(); ++k) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
          const bool negative = c > 0 && ((mask >> (c - 1)) & 1);
          const Scalar x = points[k][cols[c]];
          values[k] += negative ? Scalar(-x) : x;
        }
        if (values[k] < values[a]) a = k;
        if (values[k] > values[b]) b = k;
      }
      const Scalar width = values[b] - values[a];
      if (best < width) {
        best = width;
        lo_at = a;
        hi_at = b;
      }
    }
    return exact_with(best, {points[lo_at], points[hi_at]});
  }
  Scalar best = 0;
  std::size_t lo_at = 0, hi_at = 0;
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      Scalar d = distance(points[a], points[b], kind);
      if (best < d) {
        best = std::move(d);
        lo_at = a;
        hi_at = b;
      }
    }
  }
  return exact_with(best, {points[lo_at], points[hi_at]});
}

BoundPair axis_box_diameter(const AxisBox& box, NormKind kind) {
  if (box.empty()) throw Error(ErrorKind::EmptySet, "diameter of an empty box");
  const Scalar fallback_width = box.fallback.hi - box.fallback.lo;
  SparseVec low, high;
  for (const auto& [i, r] : box.ranges) {
    low.set(i, r.lo);
    high.set(i, r.hi);
  }
  if (kind == NormKind::Sup) {
    Scalar best = fallback_width;
    for (const auto& [i, r] : box.ranges) best = max_of(best, r.hi - r.lo);
    const Coord fresh = box.max_listed() + 1;
    low.set(fresh, box.fallback.lo);
    high.set(fresh, box.fallback.hi);
    return exact_with(best, {low, high});
  }
  if (fallback_width > 0) {
    throw Error(ErrorKind::Unbounded, "box with positive default radius is unbounded in the " +
                                          std::string(to_string(kind)) + " norm");
  }
  return exact_with(distance(low, high, kind), {low, high});
}

}  // namespace

// Candidate members of a symmetrized set without a closed form: axis
// directions and vertices of its relaxation box, series terms and tails,
// and seeded random sub-vertices. Only members survive.
std::vector<SparseVec> symmetrized_candidates(const SetExpr& set, const EvalOptions& opts);

namespace {

std::vector<SparseVec> symmetric_pair(const SparseVec& d) { return {d, -d}; }

BoundPair symmetrized_diameter(const SetExpr& set, NormKind kind, const EvalOptions& opts) {
  BoundPair out;
  const Box relax = coordinate_relaxation(set, opts);
  try {
    out.upper = axis_box_diameter(to_axis_box(relax), kind).lower;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Unbounded) throw;
  }
  out.lower = 0;
  out.lower_witness = {SparseVec{}, SparseVec{}};
  for (const auto& d : symmetrized_candidates(set, opts)) {
    Scalar m = scale_measure(norm(d, kind), 2, kind);
    if (out.lower < m) {
      out.lower = std::move(m);
      out.lower_witness = symmetric_pair(d);
    }
  }
  if (out.exact()) out.upper_witness = out.lower_witness;
  return out;
}

BoundPair polyhedral_diameter(const SetExpr& set, NormKind kind, const EvalOptions& opts) {
  auto model = detail::PolyhedralModel::build(set);
  const auto& window = model->window();
  struct Extent {
    Scalar width;
    SparseVec low, high;
  };
  std::vector<Extent> extents;
  for (Coord u : window) {
    auto hi = model->maximize(coordinate_functional(u));
    if (!hi) throw Error(ErrorKind::EmptySet, "diameter of an empty set");
    auto lo = model->maximize(coordinate_functional(u, -1));
    extents.push_back({hi->value + lo->value, lo->point, hi->point});
  }
  if (kind == NormKind::Sup) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < extents.size(); ++k) {
      if (extents[best].width < extents[k].width) best = k;
    }
    return exact_with(extents[best].width, {extents[best].low, extents[best].high});
  }
  if (extents.back().width > 0) {
    throw Error(ErrorKind::Unbounded, "set is unbounded in the " + std::string(to_string(kind)) + " norm");
  }
  std::vector<Coord> moving;
  for (std::size_t k = 0; k + 1 < window.size(); ++k) {
    if (extents[k].width > 0) moving.push_back(window[k]);
  }
  if (moving.empty()) return exact_with(0, {extents.front().low, extents.front().low});

  if (kind == NormKind::Sum && moving.size() <= opts.sign_lp_support) {
    Scalar best = -1;
    std::vector<SparseVec> pair;
    for (std::uint64_t mask = 0; mask < (1ull << (moving.size() - 1)); ++mask) {
      Functional sigma;
      for (std::size_t c = 0; c < moving.size(); ++c) {
        const bool negative = c > 0 && ((mask >> (c - 1)) & 1);
        sigma.set(moving[c], negative ? -1 : 1);
      }
      auto hi = model->maximize(sigma);
      auto lo = model->maximize(-sigma);
      const Scalar width = hi->value + lo->value;
      if (best < width) {
        best = width;
        pair = {lo->point, hi->point};
      }
    }
    return exact_with(best, pair);
  }

  BoundPair out;
  Scalar upper = 0;
  for (const auto& e : extents) upper += kind == NormKind::Sum ? e.width : Scalar(e.width * e.width);
  out.upper = upper;
  std::vector<SparseVec> points;
  for (const auto& e : extents) {
    points.push_back(e.low);
    points.push_back(e.high);
  }
  BoundPair lower = finite_diameter(points, kind, opts);
  out.lower = lower.lower;
  out.lower_witness = lower.lower_witness;
  if (out.exact()) out.upper_witness = out.lower_witness;
  return out;
}

}  // namespace

BoundPair diameter(const SetExpr& set, NormKind kind, const EvalOptions& opts) {
  if (auto box = as_axis_box(set)) return axis_box_diameter(*box, kind);
  if (const auto* fp = set.as<FinitePoints>()) return finite_diameter(fp->points, kind, opts);
  if (const auto* ss = set.as<SignSums>()) {
    if (active_terms(*ss).empty()) {
      if (ss->mode == SignMode::Prefixes) throw Error(ErrorKind::EmptySet, "prefix sums over an empty horizon");
      return exact_with(0, {SparseVec{}, SparseVec{}});
    }
    return BoundPair::exactly(scale_measure(max_signed_sum(active_terms(*ss), kind, opts.sign_budget), 2, kind));
  }
  if (auto members = enumerate_members(set, opts)) return finite_diameter(*members, kind, opts);
  if (is_polyhedral(set)) return polyhedral_diameter(set, kind, opts);
  if (const auto* t = set.as<Translate>()) {
    BoundPair out = diameter(t->base, kind, opts);
    for (auto& w : out.lower_witness) w = w + t->by;
    for (auto& w : out.upper_witness) w = w + t->by;
    return out;
  }
  if (const auto* n = set.as<Negate>()) {
    BoundPair out = diameter(n->base, kind, opts);
    for (auto& w : out.lower_witness) w = -w;
    for (auto& w : out.upper_witness) w = -w;
    return out;
  }
  if (set.as<Symmetrized>()) return symmetrized_diameter(set, kind, opts);
  const auto& parts = std::get<Intersect>(set.node()).parts;
  BoundPair out;
  out.lower = 0;
  for (const auto& p : parts) {
    BoundPair b = diameter(p, kind, opts);
    if (b.upper && (!out.upper || *b.upper < *out.upper)) out.upper = b.upper;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Functional suprema.

namespace {

SparseVec axis_box_argmax(const Functional& f, const AxisBox& box) {
  SparseVec out;
  for (const auto& [i, r] : box.ranges) out.set(i, clamp_zero(r));
  for (const auto& [i, c] : f.entries()) {
    const Interval& r = box.range(i);
    out.set(i, c > 0 ? r.hi : r.lo);
  }
  return out;
}

std::optional<SparseVec> finite_argmax(const Functional& f, const std::vector<SparseVec>& members) {
  std::optional<SparseVec> best;
  Scalar best_value;
  for (const auto& p : members) {
    Scalar v = dual_pair(f, p);
    if (!best || best_value < v || (v == best_value && lex_less(p, *best))) {
      best = p;
      best_value = std::move(v);
    }
  }
  return best;
}

SparseVec sign_sums_argmax(const Functional& f, const SignSums& s) {
  SparseVec out;
  for (const auto& x : active_terms(s)) {
    const Scalar v = dual_pair(f, x);
    if (v > 0) {
      out = out + x;
    } else if (v < 0) {
      out = out - x;
    } else if (s.mode == SignMode::Prefixes) {
      out = out + x;
    }
  }
  return out;
}

BoundPair symmetrized_sup(const Functional& f, const SetExpr& set, const EvalOptions& opts) {
  const auto& sym = std::get<Symmetrized>(set.node());
  const Box relax = coordinate_relaxation(set, opts);
  Scalar upper = 0;
  for (const auto& [i, c] : f.entries()) upper += abs_value(c) * relax.radius(i);
  const BoundPair plus = sup_functional(f, sym.base, opts);
  const BoundPair minus = sup_functional(-f, sym.base, opts);
  for (const auto& x : sym.witnesses) {
    const Scalar fx = dual_pair(f, x);
    if (plus.upper) upper = min_of(upper, *plus.upper - fx);
    if (minus.upper) upper = min_of(upper, *minus.upper + fx);
  }
  BoundPair out;
  out.upper = upper;
  out.lower = 0;
  out.lower_witness = {SparseVec{}};
  for (const auto& d : symmetrized_candidates(set, opts)) {
    for (const SparseVec& c : {d, SparseVec(-d)}) {
      Scalar v = dual_pair(f, c);
      if (out.lower < v) {
        out.lower = std::move(v);
        out.lower_witness = {c};
      }
    }
  }
  if (out.exact()) out.upper_witness = out.lower_witness;
  return out;
}

}  // namespace

BoundPair sup_functional(const Functional& f, const SetExpr& set, const EvalOptions& opts) {
  if (auto box = as_axis_box(set)) {
    if (box->empty()) throw Error(ErrorKind::EmptySet, "functional supremum over an empty box");
    SparseVec p = axis_box_argmax(f, *box);
    return exact_with(dual_pair(f, p), {p});
  }
  if (const auto* fp = set.as<FinitePoints>()) {
    auto p = finite_argmax(f, fp->points);
    if (!p) throw Error(ErrorKind::EmptySet, "functional supremum over the empty set");
    return exact_with(dual_pair(f, *p), {*p});
  }
  if (const auto* ss = set.as<SignSums>()) {
    if (ss->mode == SignMode::Prefixes && active_terms(*ss).empty()) {
      throw Error(ErrorKind::EmptySet, "prefix sums over an empty horizon");
    }
    SparseVec p = sign_sums_argmax(f, *ss);
    return exact_with(dual_pair(f, p), {p});
  }
  if (const auto* hull = set.as<AbsConvHull>()) {
    SparseVec best;
    Scalar value = 0;
    for (const auto& p : hull->points) {
      const Scalar v = dual_pair(f, p);
      if (value < abs_value(v)) {
        value = abs_value(v);
        best = v < 0 ? SparseVec(-p) : p;
      }
    }
    return exact_with(value, {best});
  }
  if (const auto* t = set.as<Translate>()) {
    BoundPair out = sup_functional(f, t->base, opts);
    const Scalar shift = dual_pair(f, t->by);
    out.lower += shift;
    if (out.upper) *out.upper += shift;
    for (auto& w : out.lower_witness) w = w + t->by;
    for (auto& w : out.upper_witness) w = w + t->by;
    return out;
  }
  if (const auto* n = set.as<Negate>()) {
    BoundPair out = sup_functional(-f, n->base, opts);
    for (auto& w : out.lower_witness) w = -w;
    for (auto& w : out.upper_witness) w = -w;
    return out;
  }
  if (auto members = enumerate_members(set, opts)) {
    auto p = finite_argmax(f, *members);
    if (!p) throw Error(ErrorKind::EmptySet, "functional supremum over the empty set");
    return exact_with(dual_pair(f, *p), {*p});
  }
  if (is_polyhedral(set)) {
    std::vector<Coord> extra;
    for (const auto& [i, c] : f.entries()) extra.push_back(i);
    auto opt = detail::PolyhedralModel::build(set, extra)->maximize(f);
    if (!opt) throw Error(ErrorKind::EmptySet, "functional supremum over the empty set");
    return exact_with(opt->value, {opt->point});
  }
  if (set.as<Symmetrized>()) return symmetrized_sup(f, set, opts);
  throw Error(ErrorKind::Inconclusive, "no supremum bound for " + describe(set));
}

// ---------------------------------------------------------------------------

Box coordinate_relaxation(const SetExpr& set, const EvalOptions& opts) {
  if (auto box = as_axis_box(set); box && !box->empty() && box->symmetric()) return box->to_box();
  std::vector<Coord> window = window_of(set);
  std::map<Coord, Scalar> radii;
  const auto* sym = set.as<Symmetrized>();
  for (Coord u : window) {
    const SetExpr& host = sym ? sym->base : set;
    const BoundPair plus = sup_functional(coordinate_functional(u), host, opts);
    const BoundPair minus = sup_functional(coordinate_functional(u, -1), host, opts);
    if (!plus.upper || !minus.upper) throw Error(ErrorKind::Unbounded, "no coordinate bound for " + describe(set));
    Scalar r;
    if (sym) {
      bool first = true;
      for (const auto& x : sym->witnesses) {
        const Scalar xu = x[u];
        Scalar rho = min_of(*plus.upper - xu, *minus.upper + xu);
        if (first || rho < r) r = rho;
        first = false;
      }
    } else {
      r = max_of(*plus.upper, *minus.upper);
    }
    radii[u] = max_of(r, Scalar(0));
  }
  const Scalar fallback = radii[window.back()];
  Box out{fallback, {}};
  for (auto& [u, r] : radii) {
    if (r != fallback) out.overrides[u] = r;
  }
  return out;
}

std::vector<SparseVec> symmetrized_candidates(const SetExpr& set, const EvalOptions& opts) {
  const auto& sym = std::get<Symmetrized>(set.node());
  const Box relax = coordinate_relaxation(set, opts);
  const std::vector<Coord> window = window_of(set);
  std::vector<SparseVec> raw;
  SparseVec vertex;
  for (Coord u : window) {
    const Scalar& r = relax.radius(u);
    if (r == 0) continue;
    raw.push_back(unit_vector(u, r));
    raw.push_back(unit_vector(u, r / 2));
    vertex.set(u, r);
  }
  raw.push_back(vertex);
  if (const auto* ss = sym.base.as<SignSums>()) {
    const auto terms = active_terms(*ss);
    SparseVec tail;
    for (std::size_t k = terms.size(); k-- > 0;) {
      raw.push_back(terms[k]);
      tail = tail + terms[k];
      raw.push_back(tail);
    }
  }
  Rng rng(opts.seed);
  for (std::size_t s = 0; s < opts.samples; ++s) {
    SparseVec v;
    for (Coord u : window) {
      const auto pick = rng.below(3);
      if (pick == 1) v.set(u, relax.radius(u));
      if (pick == 2) v.set(u, -relax.radius(u));
    }
    raw.push_back(std::move(v));
  }
  std::set<SparseVec, LexLess> seen;
  std::vector<SparseVec> out;
  for (auto& c : raw) {
    if (c.is_zero() || seen.count(c)) continue;
    seen.insert(c);
    if (contains(set, c)) out.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Directions.

namespace {

std::vector<SparseVec> direction_candidates(const SetExpr& set, NormKind kind, const EvalOptions& opts) {
  std::vector<SparseVec> out;
  if (auto box = as_axis_box(set)) {
    if (box->empty()) return out;
    SparseVec base;
    for (const auto& [i, r] : box->ranges) base.set(i, clamp_zero(r));
    for (Coord i = 1; i <= box->max_listed() + 1; ++i) {
      const Interval& r = box->range(i);
      for (const Scalar& t : {r.hi, r.lo}) {
        SparseVec p = base;
        p.set(i, t);
        out.push_back(std::move(p));
      }
    }
    if (kind != NormKind::Sup) {
      SparseVec far = base;
      for (const auto& [i, r] : box->ranges) far.set(i, abs_value(r.lo) > abs_value(r.hi) ? r.lo : r.hi);
      out.push_back(std::move(far));
    }
    return out;
  }
  if (auto members = enumerate_members(set, opts)) return *members;
  if (is_polyhedral(set)) {
    auto model = detail::PolyhedralModel::build(set);
    for (Coord u : model->window()) {
      for (int sign : {1, -1}) {
        if (auto opt = model->maximize(coordinate_functional(u, sign))) out.push_back(opt->point);
      }
    }
    return out;
  }
  if (const auto* ss = set.as<SignSums>()) {
    SparseVec prefix;
    for (const auto& x : active_terms(*ss)) {
      prefix = prefix + x;
      out.push_back(x);
      out.push_back(prefix);
    }
    std::vector<SparseVec> members;
    for (auto& c : out) {
      if (contains(set, c)) members.push_back(std::move(c));
    }
    return members;
  }
  if (set.as<Symmetrized>()) return symmetrized_candidates(set, opts);
  return out;
}

}  // namespace

std::optional<SparseVec> best_member_direction(const SetExpr& set, NormKind kind, const EvalOptions& opts) {
  std::optional<SparseVec> best;
  for (auto& c : direction_candidates(set, kind, opts)) {
    if (c.is_zero()) continue;
    if (!best || better_direction(c, *best, kind)) best = std::move(c);
  }
  return best;
}

std::optional<SparseVec> free_direction(const SetExpr& set, const std::vector<SparseVec>& witnesses,
                                        const Scalar& shrink, NormKind kind, const EvalOptions& opts) {
  if (shrink < 0 || shrink >= 1) throw Error(ErrorKind::InvalidInput, "shrink must lie in [0, 1)");
  std::vector<SparseVec> list = witnesses;
  if (list.empty()) {
    if (!contains(set, SparseVec{})) throw Error(ErrorKind::PreconditionFailed, "no witnesses and 0 is not in the set");
    list.push_back(SparseVec{});
  }
  const SetExpr d_set = symmetrize(set, list);
  auto d = best_member_direction(d_set, kind, opts);
  if (!d) return std::nullopt;
  SparseVec out = (1 - shrink) * *d;
  if (out.is_zero()) return std::nullopt;
  return out;
}

std::optional<SparseVec> argmax_point(const Functional& f, const SetExpr& set, const EvalOptions& opts) {
  if (auto box = as_axis_box(set)) {
    if (box->empty()) return std::nullopt;
    return axis_box_argmax(f, *box);
  }
  if (const auto* ss = set.as<SignSums>()) return sign_sums_argmax(f, *ss);
  if (const auto* t = set.as<Translate>()) {
    auto p = argmax_point(f, t->base, opts);
    if (p) *p = *p + t->by;
    return p;
  }
  if (const auto* n = set.as<Negate>()) {
    auto p = argmax_point(-f, n->base, opts);
    if (p) *p = -*p;
    return p;
  }
  if (auto members = enumerate_members(set, opts)) return finite_argmax(f, *members);
  if (is_polyhedral(set)) {
    std::vector<Coord> extra;
    for (const auto& [i, c] : f.entries()) extra.push_back(i);
    auto opt = detail::PolyhedralModel::build(set, extra)->maximize(f);
    if (!opt) return std::nullopt;
    return opt->point;
  }
  if (set.as<Symmetrized>()) {
    std::vector<SparseVec> candidates = symmetrized_candidates(set, opts);
    std::vector<SparseVec> both{SparseVec{}};
    for (const auto& c : candidates) {
      both.push_back(c);
      both.push_back(-c);
    }
    return finite_argmax(f, both);
  }
  return std::nullopt;
}

}  // namespace symdex
