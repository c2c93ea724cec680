#include "symdex/extraction.hpp"

#include <algorithm>
#include <set>

#include "polyhedral.hpp"
#include "symdex/error.hpp"
#include "symdex/lp.hpp"

namespace symdex {

namespace {

std::set<Coord> support_of(const std::vector<SparseVec>& vs) {
  std::set<Coord> out;
  for (const auto& v : vs) {
    for (const auto& [i, x] : v.entries()) out.insert(i);
  }
  return out;
}

Scalar lower_length(const Scalar& measure, NormKind kind) { return measure_length(measure, kind).lower; }

std::optional<Functional> normalize_dual(const Functional& f, NormKind kind) {
  const Scalar n = dual_norm(f, kind);
  if (n == 0) return std::nullopt;
  Scalar scale = n;
  if (kind == NormKind::Euclid && !rational_sqrt(n, &scale)) return std::nullopt;
  Functional out;
  for (const auto& [i, c] : f.entries()) out.set(i, c / scale);
  return out;
}

// Maximizes <f, d> over f orthogonal to `span` inside a polyhedral dual ball
// on the joint support: the l1 ball for the sup norm, the l-infinity ball
// otherwise.
std::optional<Functional> lp_functional(const std::vector<SparseVec>& span, const SparseVec& d, NormKind kind) {
  std::set<Coord> joint = support_of(span);
  for (const auto& [i, x] : d.entries()) joint.insert(i);
  const std::vector<Coord> coords(joint.begin(), joint.end());
  lp::LinearProgram program;
  std::vector<std::size_t> pos, neg;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    pos.push_back(program.add_variable());
    neg.push_back(program.add_variable());
  }
  for (const auto& v : span) {
    lp::Constraint c{{}, lp::Relation::Equal, 0};
    for (std::size_t k = 0; k < coords.size(); ++k) {
      const Scalar a = v[coords[k]];
      if (a == 0) continue;
      c.coeffs[pos[k]] += a;
      c.coeffs[neg[k]] -= a;
    }
    if (!c.coeffs.empty()) program.add_constraint(std::move(c));
  }
  if (kind == NormKind::Sup) {
    lp::Constraint ball{{}, lp::Relation::LessEq, 1};
    for (std::size_t k = 0; k < coords.size(); ++k) {
      ball.coeffs[pos[k]] = 1;
      ball.coeffs[neg[k]] = 1;
    }
    program.add_constraint(std::move(ball));
  } else {
    for (std::size_t k = 0; k < coords.size(); ++k) {
      program.add_constraint({{{pos[k], 1}, {neg[k], 1}}, lp::Relation::LessEq, 1});
    }
  }
  std::map<std::size_t, Scalar> objective;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    const Scalar a = d[coords[k]];
    if (a == 0) continue;
    objective[pos[k]] = a;
    objective[neg[k]] = -a;
  }
  program.set_objective(std::move(objective));
  const lp::Solution sol = lp::solve(program);
  if (sol.status != lp::Status::Optimal || sol.objective <= 0) return std::nullopt;
  Functional f;
  for (std::size_t k = 0; k < coords.size(); ++k) f.set(coords[k], sol.values[pos[k]] - sol.values[neg[k]]);
  return normalize_dual(f, kind);
}

bool orthogonal(const Functional& f, const std::vector<SparseVec>& span) {
  return std::all_of(span.begin(), span.end(), [&](const SparseVec& v) { return dual_pair(f, v) == 0; });
}

}  // namespace

Functional orthogonal_functional(const std::vector<SparseVec>& orthogonal_to, const SetExpr& set,
                                 const Scalar& lambda, const std::optional<SparseVec>& certificate, NormKind kind,
                                 const EvalOptions& opts) {
  const std::set<Coord> used = support_of(orthogonal_to);
  auto accept = [&](const Functional& f) {
    return orthogonal(f, orthogonal_to) && dual_norm(f, kind) == 1 && sup_functional(f, set, opts).lower > lambda;
  };
  if (certificate) {
    std::optional<Coord> best;
    for (const auto& [i, x] : certificate->entries()) {
      if (used.count(i)) continue;
      if (!best || abs_value(x) > abs_value((*certificate)[*best])) best = i;
    }
    if (best) {
      Functional f = coordinate_functional(*best, (*certificate)[*best] > 0 ? 1 : -1);
      if (accept(f)) return f;
    }
    if (auto f = lp_functional(orthogonal_to, *certificate, kind); f && accept(*f)) return *f;
  }
  const Coord fresh = std::max(max_coord(set), used.empty() ? Coord(0) : *used.rbegin()) + 1;
  std::optional<Functional> best;
  Scalar best_value;
  for (Coord i = 1; i <= fresh; ++i) {
    if (used.count(i)) continue;
    for (int sign : {1, -1}) {
      Functional f = coordinate_functional(i, sign);
      Scalar v = sup_functional(f, set, opts).lower;
      if (!best || best_value < v) {
        best = f;
        best_value = v;
      }
    }
  }
  if (best && best_value > lambda) return *best;
  throw Error(ErrorKind::NoCertificate, "no norm-one functional orthogonal to the given vectors exceeds " +
                                            format_scalar(lambda) + " on " + describe(set));
}

// ---------------------------------------------------------------------------

namespace {

std::size_t saturating_pow2(std::size_t n) {
  return n >= 8 * sizeof(std::size_t) - 1 ? std::numeric_limits<std::size_t>::max() / 2 : (std::size_t(1) << n);
}

SparseVec default_start(const SetExpr& set, NormKind kind, const EvalOptions& opts) {
  if (contains(set, SparseVec{})) return {};
  auto pool = default_pool(set, kind, opts);
  if (pool.empty()) throw Error(ErrorKind::EmptySet, "no starting point found in " + describe(set));
  return pool.front();
}

}  // namespace

ExtractionTranscript extract_c0_sequence(const SetExpr& set, const Scalar& epsilon, std::size_t n, NormKind kind,
                                         const std::optional<SparseVec>& x0, const EvalOptions& opts) {
  if (epsilon <= 0) throw Error(ErrorKind::InvalidInput, "epsilon must be positive");
  ExtractionTranscript t{set, kind, epsilon, epsilon / 3, x0 ? *x0 : default_start(set, kind, opts), {}, {}, 0, 0,
                         0, {}, {}};
  t.delta0_upper_measure = *delta0(set, kind, opts).upper;
  t.delta0_upper = measure_length(t.delta0_upper_measure, kind).upper;
  SetExpr current = symmetrize(set, {t.x0});
  std::vector<SparseVec> span;
  for (std::size_t step = 1; step <= n; ++step) {
    const Scalar dl = lower_length(delta_lower(set, saturating_pow2(step), kind, {}, opts).bound.lower, kind);
    auto stall = [&](std::string reason) {
      t.stalled_at = step;
      t.stall_reason = std::move(reason);
    };
    auto x = best_member_direction(current, kind, opts);
    if (!x) {
      stall("no nonzero member left");
      break;
    }
    Functional f;
    try {
      f = orthogonal_functional(span, current, dl - t.eta, x, kind, opts);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoCertificate) throw;
      stall(e.what());
      break;
    }
    const BoundPair sup = sup_functional(f, current, opts);
    auto condition_c = [&](const SparseVec& p) {
      const Scalar v = dual_pair(f, p);
      return sup.upper && v > *sup.upper - t.eta && v > dl - 2 * t.eta;
    };
    bool used_argmax = false;
    if (!condition_c(*x)) {
      auto alt = argmax_point(f, current, opts);
      if (!alt || !contains(current, *alt) || !condition_c(*alt)) {
        stall("no point meets the slice condition");
        break;
      }
      x = alt;
      used_argmax = true;
    }
    t.steps.push_back({*x, f, current, dl, *sup.upper, used_argmax});
    t.delta_lower_at_2n = dl;
    span.push_back(*x);
    current = symmetrize(current, {*x});
  }
  t.next_set = current;
  return t;
}

// ---------------------------------------------------------------------------

namespace {

// x +- A_n inside A_{n-1}, exactly for boxes.
std::optional<bool> box_inclusion(const SetExpr& outer, const SparseVec& x, const SetExpr& inner) {
  auto a = as_axis_box(outer);
  auto b = as_axis_box(inner);
  if (!a || !b) return std::nullopt;
  if (b->empty()) return true;
  std::set<Coord> coords;
  for (const auto& [i, r] : a->ranges) coords.insert(i);
  for (const auto& [i, r] : b->ranges) coords.insert(i);
  for (const auto& [i, v] : x.entries()) coords.insert(i);
  coords.insert(std::max({a->max_listed(), b->max_listed(), x.max_coord()}) + 1);
  for (Coord i : coords) {
    const Interval& ra = a->range(i);
    const Interval& rb = b->range(i);
    const Scalar xi = x[i];
    const Scalar lo = min_of(xi + rb.lo, xi - rb.hi);
    const Scalar hi = max_of(xi + rb.hi, xi - rb.lo);
    if (lo < ra.lo || hi > ra.hi) return false;
  }
  return true;
}

std::vector<SparseVec> probe_members(const SetExpr& set, NormKind kind, const EvalOptions& opts, bool* exhaustive) {
  if (auto members = enumerate_members(set, opts)) {
    *exhaustive = true;
    return *members;
  }
  *exhaustive = false;
  std::vector<SparseVec> out{SparseVec{}};
  if (auto d = best_member_direction(set, kind, opts)) {
    out.push_back(*d);
    out.push_back(-*d);
  }
  Rng rng(opts.seed);
  for (std::size_t s = 0; s < opts.samples; ++s) {
    Functional f;
    for (Coord i = 1; i <= max_coord(set) + 1; ++i) f.set(i, rng.rational(4, 3));
    if (auto p = argmax_point(f, set, opts)) out.push_back(*p);
  }
  std::vector<SparseVec> members;
  for (auto& p : out) {
    if (contains(set, p)) members.push_back(std::move(p));
  }
  return members;
}

}  // namespace

TranscriptValidation validate_transcript(const ExtractionTranscript& t, const EvalOptions& opts) {
  TranscriptValidation out;
  auto record = [&](std::string name, std::size_t step, bool passed, std::string level) {
    out.checks.push_back({std::move(name), step, passed, std::move(level)});
    if (!passed) out.ok = false;
  };
  std::vector<SparseVec> previous_points;
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    const ExtractionStep& s = t.steps[k];
    const std::size_t step = k + 1;
    const SetExpr& parent = k == 0 ? t.base : t.steps[k - 1].set;
    const SparseVec& anchor = k == 0 ? t.x0 : t.steps[k - 1].x;

    if (auto exact = box_inclusion(parent, anchor, s.set)) {
      record("a", step, *exact, "exact");
    } else {
      bool exhaustive = false;
      bool ok = true;
      for (const auto& d : probe_members(s.set, t.kind, opts, &exhaustive)) {
        ok = ok && contains(parent, anchor + d) && contains(parent, anchor - d);
      }
      record("a", step, ok, exhaustive ? "exhaustive" : "sampled");
    }

    record("b", step, orthogonal(s.f, previous_points), "exact");

    const BoundPair sup = sup_functional(s.f, s.set, opts);
    const Scalar fx = dual_pair(s.f, s.x);
    const bool c_ok = sup.upper && fx > *sup.upper - t.eta && fx > s.delta_lower - 2 * t.eta;
    record("c", step, c_ok, sup.exact() ? "exact" : "bound");

    const SetExpr& next = k + 1 < t.steps.size() ? t.steps[k + 1].set : *t.next_set;
    const BoundPair plus = sup_functional(s.f, next, opts);
    const BoundPair minus = sup_functional(-s.f, next, opts);
    const bool d_ok = plus.upper && minus.upper && *plus.upper < t.eta && *minus.upper < t.eta;
    record("d", step, d_ok, plus.exact() && minus.exact() ? "exact" : "bound");

    record("dual_norm", step, dual_norm(s.f, t.kind) == 1, "exact");
    record("member", step, contains(s.set, s.x), "exact");
    previous_points.push_back(s.x);
  }
  return out;
}

namespace {

// Certified lower bound for sqrt(a) - sqrt(b), exact in sign: zero when a == b
// and positive whenever a > b.
Scalar sqrt_difference_lower(const Scalar& a, const Scalar& b) {
  if (a == b) return 0;
  for (unsigned bits = 64;; bits *= 2) {
    const Scalar lower = measure_length(a, NormKind::Euclid, bits).lower - measure_length(b, NormKind::Euclid, bits).upper;
    if (a < b || lower > 0 || bits >= 4096) return lower;
  }
}

}  // namespace

BasisMargins verify_basis_inequality(const ExtractionTranscript& t, const std::vector<Scalar>& coefficients) {
  if (coefficients.size() > t.steps.size()) {
    throw Error(ErrorKind::PreconditionFailed, "more coefficients than transcript steps");
  }
  SparseVec sum;
  Scalar max_coef = 0;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    sum = sum + coefficients[k] * t.steps[k].x;
    max_coef = max_of(max_coef, abs_value(coefficients[k]));
  }
  BasisMargins out;
  out.norm = norm(sum, t.kind);
  out.max_coefficient = max_coef;
  const Enclosure len = measure_length(out.norm, t.kind);
  const Scalar dl = coefficients.empty() ? t.delta_lower_at_2n : t.steps[coefficients.size() - 1].delta_lower;
  const Scalar reach = (dl - t.epsilon) * max_coef;
  if (t.kind != NormKind::Euclid) {
    out.lower_margin = out.norm - reach;
    out.upper_margin = t.delta0_upper_measure * max_coef - out.norm;
  } else {
    out.lower_margin = reach <= 0 ? len.lower - reach : sqrt_difference_lower(out.norm, reach * reach);
    out.upper_margin = sqrt_difference_lower(t.delta0_upper_measure * max_coef * max_coef, out.norm);
  }
  return out;
}

// ---------------------------------------------------------------------------

RefineResult refine_almost_isometric(const SetExpr& set, const Scalar& epsilon, const SearchStrategy& strategy,
                                     std::size_t n_max, NormKind kind, const EvalOptions& opts) {
  if (epsilon <= 0) throw Error(ErrorKind::InvalidInput, "epsilon must be positive");
  const DeltaInfinity inf = delta_infinity_bounds(set, n_max, strategy, kind, opts);
  if (inf.bound.lower <= 0) {
    throw Error(ErrorKind::PreconditionFailed, "no positive lower bound for delta_infinity of " + describe(set));
  }
  const Scalar reference = inf.bound.lower;
  const Scalar target = scale_measure(reference, 1 + epsilon, kind);
  RefineResult out{SearchStatus::NotFound, set, {}, 0, reference, 0, 0};
  bool have_best = false;
  for (std::size_t n = 0; n <= n_max; ++n) {
    DeltaResult up = delta_upper(set, n, strategy, kind, opts);
    if (!up.bound.upper) continue;
    const Scalar value = *up.bound.upper;
    if (!have_best || value < out.delta0) {
      have_best = true;
      out.set = symmetrize(set, up.upper_witnesses);
      out.witnesses = up.upper_witnesses;
      out.n = n;
      out.delta0 = value;
      out.ratio = value / reference;
    }
    if (value <= target) {
      out.status = SearchStatus::Found;
      return out;
    }
  }
  return out;
}

EpsTree build_eps_tree(const SetExpr& set, const Scalar& epsilon, std::size_t depth, NormKind kind,
                       const EvalOptions& opts) {
  if (depth == 0 || depth > 20) throw Error(ErrorKind::InvalidInput, "tree depth must lie in 1..20");
  if (epsilon <= 0) throw Error(ErrorKind::InvalidInput, "epsilon must be positive");
  EpsTree tree;
  tree.depth = depth;
  tree.epsilon = epsilon;
  tree.nodes.push_back(default_start(set, kind, opts));
  const std::size_t internal = (std::size_t(1) << (depth - 1)) - 1;
  const Scalar need = length_measure(epsilon, kind);
  std::optional<Scalar> sep;
  for (std::size_t k = 1; k <= internal; ++k) {
    const SparseVec x = tree.nodes[k - 1];
    auto u = free_direction(set, {x}, 0, kind, opts);
    if (!u || norm(*u, kind) < need) {
      tree.stalled_at = k;
      break;
    }
    tree.nodes.push_back(x - *u);
    tree.nodes.push_back(x + *u);
    const Scalar gap = distance(x - *u, x + *u, kind);
    if (!sep || gap < *sep) sep = gap;
  }
  tree.sep = sep.value_or(0);
  return tree;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<SparseVec> one_sided_candidates(const SetExpr& set, const std::vector<SparseVec>& sums, NormKind kind,
                                            const EvalOptions& opts) {
  std::vector<SparseVec> raw;
  if (auto box = as_axis_box(set)) {
    const Coord top = std::max(box->max_listed(), max_coord(std::span<const SparseVec>(sums))) + 1;
    for (Coord i = 1; i <= top; ++i) {
      const Interval& r = box->range(i);
      Scalar lo = r.lo - sums.front()[i];
      Scalar hi = r.hi - sums.front()[i];
      for (const auto& s : sums) {
        lo = max_of(lo, r.lo - s[i]);
        hi = min_of(hi, r.hi - s[i]);
      }
      if (lo > hi) continue;
      raw.push_back(unit_vector(i, abs_value(lo) > abs_value(hi) ? lo : hi));
    }
    return raw;
  }
  if (auto members = enumerate_members(set, opts)) {
    for (const auto& p : *members) raw.push_back(p - sums.front());
  } else if (const auto* ss = set.as<SignSums>()) {
    for (std::size_t n = 0; n < std::min(ss->horizon, ss->series.terms.size()); ++n) {
      raw.push_back(ss->series.terms[n]);
      raw.push_back(-ss->series.terms[n]);
    }
  } else if (auto d = best_member_direction(set, kind, opts)) {
    raw.push_back(*d);
    raw.push_back(-*d);
  }
  std::vector<SparseVec> out;
  for (auto& t : raw) {
    if (std::all_of(sums.begin(), sums.end(), [&](const SparseVec& s) { return contains(set, s + t); })) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace

OneSidedResult one_sided_sequence(const SetExpr& set, const Scalar& epsilon, std::size_t steps, NormKind kind,
                                  const EvalOptions& opts) {
  if (steps == 0 || steps > 24) throw Error(ErrorKind::InvalidInput, "steps must lie in 1..24");
  OneSidedResult out;
  out.x0 = default_start(set, kind, opts);
  const Scalar need = length_measure(epsilon, kind);
  std::vector<SparseVec> sums{out.x0};
  for (std::size_t n = 1; n <= steps; ++n) {
    std::optional<SparseVec> best;
    for (auto& c : one_sided_candidates(set, sums, kind, opts)) {
      if (c.is_zero() || norm(c, kind) < need) continue;
      if (!best || better_direction(c, *best, kind)) best = std::move(c);
    }
    if (!best) {
      out.stalled_at = n;
      break;
    }
    out.sequence.push_back(*best);
    const std::size_t size = sums.size();
    for (std::size_t k = 0; k < size; ++k) sums.push_back(sums[k] + *best);
  }

  const std::size_t m = out.sequence.size();
  out.sampled = m > 16;
  Rng rng(opts.seed);
  const std::uint64_t patterns = out.sampled ? 4096 : (std::uint64_t(1) << m);
  bool members_ok = true;
  out.max_sign_sum = 0;
  for (std::uint64_t p = 0; p < patterns; ++p) {
    const std::uint64_t mask = out.sampled ? rng.below(std::uint64_t(1) << m) : p;
    SparseVec subset = out.x0;
    SparseVec signed_sum;
    for (std::size_t k = 0; k < m; ++k) {
      const bool on = (mask >> k) & 1;
      if (on) subset = subset + out.sequence[k];
      signed_sum = on ? signed_sum + out.sequence[k] : signed_sum - out.sequence[k];
    }
    members_ok = members_ok && contains(set, subset);
    out.max_sign_sum = max_of(out.max_sign_sum, norm(signed_sum, kind));
  }
  out.patterns_checked = patterns;
  out.members_verified = members_ok;
  try {
    out.diameter_upper = diameter(set, kind, opts).upper;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Unbounded) throw;
  }
  return out;
}

// ---------------------------------------------------------------------------

bool eps_extreme(const SetExpr& set, const SparseVec& x, const Scalar& epsilon, NormKind kind,
                 const EvalOptions& opts) {
  const BoundPair d = diameter(symmetrize(set, {x}), kind, opts);
  const Scalar threshold = length_measure(2 * epsilon, kind);
  if (d.upper && *d.upper < threshold) return true;
  if (d.lower >= threshold) return false;
  throw Error(ErrorKind::Inconclusive, "diameter interval straddles 2 epsilon");
}

namespace {

// Breakpoints of t -> ||c - t b|| for the piecewise-linear norms.
std::vector<Scalar> breakpoints(const SparseVec& c, const SparseVec& b, NormKind kind) {
  std::vector<Scalar> out;
  std::vector<std::pair<Scalar, Scalar>> lines;  // c_i - t b_i
  std::set<Coord> coords;
  for (const auto& [i, v] : c.entries()) coords.insert(i);
  for (const auto& [i, v] : b.entries()) coords.insert(i);
  for (Coord i : coords) {
    lines.emplace_back(c[i], b[i]);
    if (b[i] != 0) out.push_back(c[i] / b[i]);
  }
  if (kind == NormKind::Sup) {
    for (std::size_t p = 0; p < lines.size(); ++p) {
      for (std::size_t q = p + 1; q < lines.size(); ++q) {
        for (int s : {1, -1}) {
          // c_p - t b_p = s (c_q - t b_q)
          const Scalar denom = lines[p].second - s * lines[q].second;
          if (denom != 0) out.push_back((lines[p].first - s * lines[q].first) / denom);
        }
      }
    }
  }
  return out;
}

// Squared distance from a2 + t0 b to x where t0 = epsilon / ||b||, as an
// exact zero test plus a positive rational lower bound otherwise.
Scalar endpoint_distance_sq(const SparseVec& c, const SparseVec& b, const Scalar& epsilon, const Scalar& b_sq) {
  const Scalar cb = dual_pair(as_functional(c), b);
  const Scalar c_sq = norm(c, NormKind::Euclid);
  // Zero iff c = s b with s^2 ||b||^2 = epsilon^2, s >= 0.
  const Scalar s = cb / b_sq;
  if (s >= 0 && c == s * b && s * s * b_sq == epsilon * epsilon) return 0;
  for (unsigned bits = 64; bits <= 4096; bits *= 2) {
    const Enclosure len = sqrt_enclosure(b_sq, bits);
    const Scalar inv = cb >= 0 ? Scalar(1 / len.lower) : Scalar(1 / len.upper);
    const Scalar lower = c_sq - 2 * epsilon * cb * inv + epsilon * epsilon;
    if (lower > 0) return lower;
  }
  throw Error(ErrorKind::Inconclusive, "could not separate a segment distance from zero");
}

}  // namespace

StrongExtremeResult eps_strong_extreme(const SetExpr& finite_set, const SparseVec& x, const Scalar& epsilon,
                                       NormKind kind) {
  const auto* fp = finite_set.as<FinitePoints>();
  if (!fp) throw Error(ErrorKind::InvalidInput, "strong extremality is decided for finite point sets only");
  if (epsilon <= 0) throw Error(ErrorKind::InvalidInput, "epsilon must be positive");
  if (!contains(finite_set, x)) throw Error(ErrorKind::WitnessNotMember, "point is not in the set");
  std::vector<SparseVec> pts = fp->points;
  std::sort(pts.begin(), pts.end(), LexLess{});
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::optional<Scalar> best;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    for (std::size_t q = p + 1; q < pts.size(); ++q) {
      const SparseVec& a1 = pts[p];
      const SparseVec& a2 = pts[q];
      const SparseVec b = a1 - a2;  // u(t) = a2 + t b
      const SparseVec c = x - a2;
      const Scalar L = norm(b, kind);
      Scalar dist;
      if (kind != NormKind::Euclid) {
        if (L < 2 * epsilon) continue;
        const Scalar t0 = epsilon / L;
        const Scalar t1 = 1 - t0;
        std::vector<Scalar> ts{t0, t1};
        for (auto& t : breakpoints(c, b, kind)) {
          if (t > t0 && t < t1) ts.push_back(t);
        }
        bool first = true;
        for (const auto& t : ts) {
          Scalar v = norm(c - t * b, kind);
          if (first || v < dist) dist = v;
          first = false;
        }
      } else {
        const Scalar e_sq = epsilon * epsilon;
        if (L < 4 * e_sq) continue;
        const Scalar cb = dual_pair(as_functional(c), b);
        const Scalar t_star = cb / L;
        const bool after_t0 = t_star >= 0 && t_star * t_star * L >= e_sq;
        const bool before_t1 = t_star <= 1 && (1 - t_star) * (1 - t_star) * L >= e_sq;
        if (after_t0 && before_t1) {
          dist = norm(c, NormKind::Euclid) - cb * cb / L;
        } else if (!after_t0) {
          dist = endpoint_distance_sq(c, b, epsilon, L);
        } else {
          dist = endpoint_distance_sq(x - a1, -b, epsilon, L);
        }
      }
      if (!best || dist < *best) best = dist;
    }
  }
  if (!best) return {true, 1};
  return {*best > 0, *best};
}

}  // namespace symdex
