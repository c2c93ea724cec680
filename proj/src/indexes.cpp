#include "symdex/indexes.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "symdex/error.hpp"

namespace symdex {

StrategyKind parse_strategy(std::string_view text) {
  if (text == "exhaustive") return StrategyKind::Exhaustive;
  if (text == "greedy") return StrategyKind::Greedy;
  if (text == "beam") return StrategyKind::Beam;
  throw Error(ErrorKind::InvalidInput, "unknown strategy '" + std::string(text) + "' (exhaustive|greedy|beam)");
}

const char* to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Exhaustive: return "exhaustive";
    case StrategyKind::Greedy: return "greedy";
    case StrategyKind::Beam: return "beam";
  }
  return "greedy";
}

const char* to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::None: return "none";
    case CertificateKind::Trivial: return "trivial";
    case CertificateKind::Exact: return "exact";
    case CertificateKind::FreshCoordinate: return "fresh_coordinate";
    case CertificateKind::SeriesTail: return "series_tail";
    case CertificateKind::FiniteFamily: return "finite_family";
    case CertificateKind::ExtendsToInfinite: return "extends_to_infinite";
  }
  return "none";
}

namespace {

using WitnessList = std::vector<SparseVec>;

struct ListLess {
  bool operator()(const WitnessList& a, const WitnessList& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), LexLess{});
  }
};

// An absent upper bound is +infinity.
bool value_less(const std::optional<Scalar>& a, const std::optional<Scalar>& b) {
  if (!a) return false;
  if (!b) return true;
  return *a < *b;
}

std::vector<SparseVec> sorted_unique(std::vector<SparseVec> v) {
  std::sort(v.begin(), v.end(), LexLess{});
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

class Evaluator {
 public:
  Evaluator(const SetExpr& set, NormKind kind, const EvalOptions& opts) : set_(set), kind_(kind), opts_(opts) {}

  const BoundPair& operator()(WitnessList w) {
    std::sort(w.begin(), w.end(), LexLess{});
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
    BoundPair b = delta0(symmetrize(set_, w), kind_, opts_);
    return cache_.emplace(std::move(w), std::move(b)).first->second;
  }

 private:
  const SetExpr& set_;
  NormKind kind_;
  const EvalOptions& opts_;
  std::map<WitnessList, BoundPair, ListLess> cache_;
};

// Ties on the bound prefer fewer witnesses, then the better directions in order.
struct Best {
  NormKind kind;
  std::optional<Scalar> value;
  BoundPair bound;
  WitnessList witnesses;
  bool found = false;

  explicit Best(NormKind k) : kind(k) {}

  bool preferred(const WitnessList& a, const WitnessList& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == b[i]) continue;
      return better_direction(a[i], b[i], kind);
    }
    return false;
  }

  void offer(const WitnessList& w, const BoundPair& b) {
    WitnessList sorted = w;
    std::sort(sorted.begin(), sorted.end(), [&](const SparseVec& x, const SparseVec& y) { return better_direction(x, y, kind); });
    if (!found || value_less(b.upper, value) || (b.upper == value && preferred(sorted, witnesses))) {
      found = true;
      value = b.upper;
      bound = b;
      witnesses = std::move(sorted);
    }
  }
};

std::uint64_t binomial_capped(std::size_t n, std::size_t k, std::uint64_t cap) {
  std::uint64_t c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > cap) return cap + 1;
  }
  return c;
}

void search_exhaustive(const WitnessList& pool, std::size_t n, Evaluator& eval, Best& best, const EvalOptions& opts) {
  const std::size_t top = std::min(n, pool.size());
  std::uint64_t total = 0;
  for (std::size_t k = 1; k <= top; ++k) total += binomial_capped(pool.size(), k, opts.enumeration_limit);
  if (total > opts.enumeration_limit) throw Error(ErrorKind::BudgetExceeded, "too many witness subsets for exhaustive search");
  for (std::size_t k = 1; k <= top; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      WitnessList w;
      for (auto i : idx) w.push_back(pool[i]);
      best.offer(w, eval(w));
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == pool.size() - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

void search_greedy(const WitnessList& pool, std::size_t n, std::size_t restarts, Evaluator& eval, Best& best) {
  for (std::size_t r = 0; r < std::max<std::size_t>(restarts, 1) && r <= pool.size(); ++r) {
    WitnessList w;
    if (r > 0) {
      w.push_back(pool[r - 1]);
      best.offer(w, eval(w));
    }
    while (w.size() < n) {
      std::optional<std::size_t> pick;
      std::optional<Scalar> pick_value;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (std::find(w.begin(), w.end(), pool[i]) != w.end()) continue;
        WitnessList trial = w;
        trial.push_back(pool[i]);
        const BoundPair& b = eval(trial);
        if (!pick || value_less(b.upper, pick_value)) {
          pick = i;
          pick_value = b.upper;
        }
      }
      if (!pick) break;
      w.push_back(pool[*pick]);
      best.offer(w, eval(w));
      if (pick_value && *pick_value == 0) break;
    }
  }
}

void search_beam(const WitnessList& pool, std::size_t n, std::size_t width, Evaluator& eval, Best& best) {
  std::vector<WitnessList> frontier{{}};
  for (std::size_t level = 0; level < n; ++level) {
    std::set<WitnessList, ListLess> next;
    for (const auto& list : frontier) {
      for (const auto& p : pool) {
        if (std::find(list.begin(), list.end(), p) != list.end()) continue;
        WitnessList trial = list;
        trial.push_back(p);
        std::sort(trial.begin(), trial.end(), LexLess{});
        next.insert(std::move(trial));
      }
    }
    if (next.empty()) break;
    std::vector<std::pair<std::optional<Scalar>, WitnessList>> scored;
    for (const auto& list : next) {
      const BoundPair& b = eval(list);
      best.offer(list, b);
      scored.emplace_back(b.upper, list);
    }
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) { return value_less(a.first, b.first); });
    frontier.clear();
    for (std::size_t k = 0; k < scored.size() && k < std::max<std::size_t>(width, 1); ++k) {
      frontier.push_back(scored[k].second);
    }
  }
}

const SignSums* as_subset_sums(const SetExpr& set) {
  const auto* ss = set.as<SignSums>();
  if (!ss || ss->mode != SignMode::Subsets) return nullptr;
  return ss;
}

std::size_t active_horizon(const SignSums& s) { return std::min(s.horizon, s.series.terms.size()); }

bool usable_within(const SignSums& s, std::size_t limit, const SparseVec& w) {
  SignSums truncated = s;
  truncated.horizon = std::min(limit, active_horizon(s));
  return contains(SetExpr(std::move(truncated)), w);
}

}  // namespace

BoundPair delta0(const SetExpr& set, NormKind kind, const EvalOptions& opts) {
  BoundPair d = diameter(set, kind, opts);
  const Scalar half(1, 2);
  d.lower = scale_measure(d.lower, half, kind);
  if (d.upper) d.upper = scale_measure(*d.upper, half, kind);
  return d;
}

std::vector<SparseVec> default_pool(const SetExpr& set, NormKind kind, const EvalOptions& opts) {
  if (const auto* ss = as_subset_sums(set)) {
    const std::size_t usable = active_horizon(*ss) == 0 ? 0 : active_horizon(*ss) - 1;
    std::vector<SparseVec> pool{SparseVec{}};
    SparseVec prefix;
    for (std::size_t n = 0; n < usable; ++n) {
      prefix = prefix + ss->series.terms[n];
      pool.push_back(prefix);
      pool.push_back(ss->series.terms[n]);
    }
    pool = sorted_unique(std::move(pool));
    if (pool.size() > 16) pool.resize(16);
    return pool;
  }
  if (auto members = enumerate_members(set, opts)) return *members;
  if (auto box = as_axis_box(set); box && !box->empty() && box->symmetric()) {
    std::vector<SparseVec> pool{SparseVec{}};
    for (const auto& [i, r] : box->ranges) {
      if (r.hi > 0) pool.push_back(unit_vector(i, r.hi));
    }
    return sorted_unique(std::move(pool));
  }
  if (contains(set, SparseVec{})) return {SparseVec{}};
  if (auto p = best_member_direction(set, kind, opts)) return {*p};
  return {};
}

DeltaResult delta_upper(const SetExpr& set, std::size_t n, const SearchStrategy& strategy, NormKind kind,
                        const EvalOptions& opts) {
  DeltaResult out;
  out.n = n;
  if (n == 0) {
    out.bound = delta0(set, kind, opts);
    return out;
  }
  WitnessList pool = strategy.pool ? *strategy.pool : default_pool(set, kind, opts);
  for (const auto& p : pool) {
    if (!contains(set, p)) throw Error(ErrorKind::WitnessNotMember, "pool point " + debug_string(p) + " is not in the set");
  }
  pool = sorted_unique(std::move(pool));
  Evaluator eval(set, kind, opts);
  Best best(kind);
  switch (strategy.kind) {
    case StrategyKind::Exhaustive: search_exhaustive(pool, n, eval, best, opts); break;
    case StrategyKind::Greedy: search_greedy(pool, n, strategy.restarts, eval, best); break;
    case StrategyKind::Beam: search_beam(pool, n, strategy.width, eval, best); break;
  }
  if (!best.found) {
    out.bound = delta0(set, kind, opts);
    out.bound.lower = 0;
    return out;
  }
  out.upper_witnesses = best.witnesses;
  out.bound.upper = best.bound.upper;
  out.bound.upper_witness = best.witnesses;
  out.bound.lower = 0;
  if (strategy.kind == StrategyKind::Exhaustive && best.bound.exact()) {
    if (auto members = enumerate_members(set, opts); members && *members == pool) {
      out.bound.lower = *best.bound.upper;
      out.lower_certificate.kind = CertificateKind::Exact;
      out.lower_certificate.challenge = best.witnesses;
    }
  }
  return out;
}

DeltaResult delta_lower(const SetExpr& set, std::size_t n, NormKind kind, const std::vector<SparseVec>& challenge,
                        const EvalOptions& opts) {
  DeltaResult out;
  out.n = n;
  out.lower_certificate.challenge = challenge;
  out.bound.lower = 0;
  if (n == 0) {
    BoundPair d = delta0(set, kind, opts);
    out.bound.lower = d.lower;
    out.bound.lower_witness = d.lower_witness;
    out.lower_certificate.kind = d.exact() ? CertificateKind::Exact : CertificateKind::None;
    return out;
  }
  auto replay = [&](const SparseVec& d) {
    for (const auto& x : challenge) {
      if (!contains(set, x + d) || !contains(set, x - d)) {
        throw Error(ErrorKind::InvariantViolation, "lower-bound direction " + debug_string(d) + " fails for witness " +
                                                       debug_string(x));
      }
    }
    out.lower_certificate.direction = d;
    out.bound.lower_witness = {d, -d};
  };

  if (const auto* ss = as_subset_sums(set)) {
    const std::size_t H = active_horizon(*ss);
    if (H == 0) {
      out.lower_certificate.kind = CertificateKind::Trivial;
      return out;
    }
    const std::size_t usable = H - 1;
    for (const auto& x : challenge) {
      if (!usable_within(*ss, usable, x)) return out;  // outside the certificate's scope
    }
    const SparseVec& tail = ss->series.terms[H - 1];
    out.bound.lower = norm(tail, kind);
    out.lower_certificate.kind = CertificateKind::SeriesTail;
    out.lower_certificate.usable_until = usable;
    if (!tail.is_zero()) replay(tail);
    return out;
  }
  if (auto box = as_axis_box(set); box && !box->empty()) {
    const Scalar r = min_of(box->fallback.hi, -box->fallback.lo);
    if (r > 0) {
      const Coord fresh = std::max(max_coord(set), max_coord(std::span<const SparseVec>(challenge))) + 1;
      out.bound.lower = length_measure(r, kind);
      out.lower_certificate.kind = CertificateKind::FreshCoordinate;
      replay(unit_vector(fresh, r));
      return out;
    }
  }
  if (enumerate_members(set, opts)) {
    out.lower_certificate.kind = CertificateKind::Trivial;
    return out;
  }
  return out;
}

std::vector<DeltaResult> delta_curve(const SetExpr& set, std::size_t n_max, const SearchStrategy& strategy,
                                     NormKind kind, const EvalOptions& opts) {
  std::vector<DeltaResult> curve;
  {
    DeltaResult zero = delta_lower(set, 0, kind, {}, opts);
    BoundPair d = delta0(set, kind, opts);
    zero.bound = d;
    curve.push_back(std::move(zero));
  }
  for (std::size_t n = 1; n <= n_max; ++n) {
    DeltaResult up = delta_upper(set, n, strategy, kind, opts);
    const DeltaResult& prev = curve.back();
    if (value_less(prev.bound.upper, up.bound.upper)) {
      up.bound.upper = prev.bound.upper;
      up.bound.upper_witness = prev.bound.upper_witness;
      up.upper_witnesses = prev.upper_witnesses;
      if (up.lower_certificate.kind == CertificateKind::Exact) {
        up.lower_certificate = {};
        up.bound.lower = 0;
      }
    }
    DeltaResult lo = delta_lower(set, n, kind, up.upper_witnesses, opts);
    DeltaResult row;
    row.n = n;
    row.upper_witnesses = up.upper_witnesses;
    row.bound.upper = up.bound.upper;
    row.bound.upper_witness = up.bound.upper_witness;
    if (up.lower_certificate.kind == CertificateKind::Exact && !(up.bound.lower < lo.bound.lower)) {
      row.bound.lower = up.bound.lower;
      row.lower_certificate = up.lower_certificate;
    } else {
      row.bound.lower = lo.bound.lower;
      row.bound.lower_witness = lo.bound.lower_witness;
      row.lower_certificate = lo.lower_certificate;
    }
    if (row.bound.upper && *row.bound.upper < row.bound.lower) {
      throw Error(ErrorKind::InvariantViolation, "delta lower bound " + format_scalar(row.bound.lower) +
                                                     " exceeds upper bound " + format_scalar(*row.bound.upper) +
                                                     " at N = " + std::to_string(n));
    }
    curve.push_back(std::move(row));
  }
  return curve;
}

DeltaInfinity delta_infinity_bounds(const SetExpr& set, std::size_t n_max, const SearchStrategy& strategy,
                                    NormKind kind, const EvalOptions& opts) {
  const auto curve = delta_curve(set, std::max<std::size_t>(n_max, 1), strategy, kind, opts);
  const DeltaResult& last = curve.back();
  DeltaInfinity out;
  out.bound.upper = last.bound.upper;
  out.bound.upper_witness = last.bound.upper_witness;
  out.upper_witnesses = last.upper_witnesses;
  out.bound.lower = 0;
  // Only witness-count-independent certificates bound the limit.
  switch (last.lower_certificate.kind) {
    case CertificateKind::FreshCoordinate:
    case CertificateKind::SeriesTail:
      out.bound.lower = last.bound.lower;
      out.bound.lower_witness = last.bound.lower_witness;
      out.lower_kind = last.lower_certificate.kind;
      break;
    case CertificateKind::Trivial:
      out.lower_kind = CertificateKind::Trivial;
      break;
    case CertificateKind::Exact:
      if (last.bound.lower == 0) out.lower_kind = CertificateKind::Trivial;
      break;
    default:
      break;
  }
  return out;
}

KCenterResult kcenter_radius(const std::vector<SparseVec>& points, std::size_t k, bool exact, NormKind kind,
                             const EvalOptions& opts) {
  if (points.empty()) throw Error(ErrorKind::InvalidInput, "k-center needs at least one point");
  if (k == 0) throw Error(ErrorKind::InvalidInput, "k-center needs k >= 1");
  const WitnessList pts = sorted_unique(points);
  KCenterResult out;
  if (k >= pts.size()) {
    out.bound = BoundPair::exactly(0);
    out.centers = pts;
    return out;
  }
  auto radius = [&](const std::vector<std::size_t>& centers) {
    Scalar worst = 0;
    for (const auto& p : pts) {
      std::optional<Scalar> near;
      for (auto c : centers) {
        Scalar d = distance(p, pts[c], kind);
        if (!near || d < *near) near = std::move(d);
      }
      if (worst < *near) worst = *near;
    }
    return worst;
  };
  if (exact) {
    if (binomial_capped(pts.size(), k, opts.enumeration_limit) > opts.enumeration_limit) {
      throw Error(ErrorKind::BudgetExceeded, "too many center subsets for exact k-center");
    }
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    std::optional<Scalar> best;
    std::vector<std::size_t> best_idx;
    for (;;) {
      Scalar r = radius(idx);
      if (!best || r < *best) {
        best = r;
        best_idx = idx;
      }
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == pts.size() - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    out.bound = BoundPair::exactly(*best);
    for (auto i : best_idx) out.centers.push_back(pts[i]);
    return out;
  }
  std::vector<std::size_t> centers{0};
  while (centers.size() < k) {
    std::size_t far = 0;
    Scalar far_d = -1;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::optional<Scalar> near;
      for (auto c : centers) {
        Scalar d = distance(pts[i], pts[c], kind);
        if (!near || d < *near) near = std::move(d);
      }
      if (far_d < *near) {
        far_d = *near;
        far = i;
      }
    }
    centers.push_back(far);
  }
  const Scalar r = radius(centers);
  out.bound.lower = scale_measure(r, Scalar(1, 2), kind);
  out.bound.upper = r;
  for (auto i : centers) out.centers.push_back(pts[i]);
  return out;
}

namespace {

Scalar min_pairwise(const std::vector<SparseVec>& pts, NormKind kind) {
  std::optional<Scalar> best;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      Scalar d = distance(pts[a], pts[b], kind);
      if (!best || d < *best) best = std::move(d);
    }
  }
  return best.value_or(0);
}

}  // namespace

SeparationResult separation_alpha_lower(const SetExpr& set, std::size_t count, NormKind kind,
                                        const EvalOptions& opts) {
  SeparationResult out;
  out.bound.lower = 0;
  out.separation = 0;
  if (count <= 1) {
    out.kind = CertificateKind::Trivial;
    return out;
  }
  if (auto box = as_axis_box(set); box && !box->empty()) {
    const Scalar r = min_of(box->fallback.hi, -box->fallback.lo);
    if (r > 0) {
      // v_k = r (e_{m_1} + ... + e_{m_{k-1}} - e_{m_k}) on fresh coordinates.
      const Coord base = max_coord(set);
      for (std::size_t k = 0; k < count; ++k) {
        SparseVec v;
        for (std::size_t i = 0; i < k; ++i) v.set(base + 1 + static_cast<Coord>(i), r);
        v.set(base + 1 + static_cast<Coord>(k), -r);
        out.points.push_back(std::move(v));
      }
      out.separation = min_pairwise(out.points, kind);
      out.bound.lower = scale_measure(out.separation, Scalar(1, 2), kind);
      out.bound.lower_witness = out.points;
      out.kind = CertificateKind::ExtendsToInfinite;
      return out;
    }
  }
  auto members = enumerate_members(set, opts);
  if (!members || members->size() < count) return out;
  const WitnessList& pts = *members;
  std::vector<std::size_t> best_idx;
  Scalar best = -1;
  if (binomial_capped(pts.size(), count, opts.enumeration_limit) <= opts.enumeration_limit) {
    std::vector<std::size_t> idx(count);
    for (std::size_t i = 0; i < count; ++i) idx[i] = i;
    for (;;) {
      WitnessList chosen;
      for (auto i : idx) chosen.push_back(pts[i]);
      Scalar s = min_pairwise(chosen, kind);
      if (best < s) {
        best = s;
        best_idx = idx;
      }
      std::size_t i = count;
      while (i > 0 && idx[i - 1] == pts.size() - count + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < count; ++j) idx[j] = idx[j - 1] + 1;
    }
  } else {
    best_idx = {0};
    while (best_idx.size() < count) {
      std::size_t far = 0;
      Scalar far_d = -1;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (std::find(best_idx.begin(), best_idx.end(), i) != best_idx.end()) continue;
        Scalar near = distance(pts[i], pts[best_idx.front()], kind);
        for (auto c : best_idx) near = min_of(near, distance(pts[i], pts[c], kind));
        if (far_d < near) {
          far_d = near;
          far = i;
        }
      }
      best_idx.push_back(far);
    }
  }
  for (auto i : best_idx) out.points.push_back(pts[i]);
  out.separation = min_pairwise(out.points, kind);
  out.bound.lower = scale_measure(out.separation, Scalar(1, 2), kind);
  out.bound.lower_witness = out.points;
  out.kind = CertificateKind::FiniteFamily;
  return out;
}

}  // namespace symdex
