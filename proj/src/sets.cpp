#include "symdex/sets.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "polyhedral.hpp"
#include "symdex/error.hpp"

namespace symdex {

namespace {

template <class T>
std::shared_ptr<const SetExpr::Node> make_node(T v) {
  return std::make_shared<const SetExpr::Node>(std::move(v));
}

std::span<const SparseVec> active_terms(const SignSums& s) {
  return std::span<const SparseVec>(s.series.terms).first(std::min(s.horizon, s.series.terms.size()));
}

std::vector<SparseVec> sorted_unique(std::vector<SparseVec> v) {
  std::sort(v.begin(), v.end(), LexLess{});
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

const char* to_string(SignMode mode) { return mode == SignMode::Prefixes ? "prefixes" : "subsets"; }

SignMode parse_sign_mode(std::string_view text) {
  if (text == "prefixes") return SignMode::Prefixes;
  if (text == "subsets") return SignMode::Subsets;
  throw Error(ErrorKind::InvalidInput, "unknown sign mode '" + std::string(text) + "' (prefixes|subsets)");
}

SetExpr::SetExpr(FinitePoints v) : node_(make_node(std::move(v))) {}
SetExpr::SetExpr(Box v) : node_(make_node(std::move(v))) {}
SetExpr::SetExpr(SignSums v) : node_(make_node(std::move(v))) {}
SetExpr::SetExpr(Translate v) : node_(make_node(std::move(v))) {}
SetExpr::SetExpr(Negate v) : node_(make_node(std::move(v))) {}
SetExpr::SetExpr(Intersect v) : node_(make_node(std::move(v))) {}
SetExpr::SetExpr(AbsConvHull v) : node_(make_node(std::move(v))) {}

// The empty witness list leaves the base unchanged.
SetExpr::SetExpr(Symmetrized v)
    : node_(v.witnesses.empty() ? v.base.node_ : make_node(std::move(v))) {}

SetExpr make_box(const Scalar& default_radius, std::map<Coord, Scalar> overrides) {
  if (default_radius < 0) throw Error(ErrorKind::InvalidInput, "negative box radius");
  Box box{default_radius, {}};
  for (auto& [i, r] : overrides) {
    if (i == 0) throw Error(ErrorKind::InvalidInput, "coordinates are 1-based");
    if (r < 0) throw Error(ErrorKind::InvalidInput, "negative box radius");
    if (r != default_radius) box.overrides.emplace(i, std::move(r));
  }
  return SetExpr(std::move(box));
}

SetExpr make_points(std::vector<SparseVec> points) { return SetExpr(FinitePoints{std::move(points)}); }

SetExpr make_sign_sums(SeriesSpec series, SignMode mode, std::size_t horizon, std::uint64_t node_budget) {
  if (horizon == 0) horizon = series.horizon();
  if (horizon > series.horizon()) throw Error(ErrorKind::InvalidInput, "sign-sum horizon exceeds the series length");
  return SetExpr(SignSums{std::move(series), mode, horizon, node_budget});
}

namespace detail {

std::set<Coord> mentioned_coords(const SetExpr& set) {
  std::set<Coord> out;
  auto add = [&](const SparseVec& v) {
    for (const auto& [i, x] : v.entries()) out.insert(i);
  };
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, FinitePoints> || std::is_same_v<T, AbsConvHull>) {
          for (const auto& p : node.points) add(p);
        } else if constexpr (std::is_same_v<T, Box>) {
          for (const auto& [i, r] : node.overrides) out.insert(i);
        } else if constexpr (std::is_same_v<T, SignSums>) {
          for (const auto& x : active_terms(node)) add(x);
        } else if constexpr (std::is_same_v<T, Translate>) {
          add(node.by);
          out.merge(mentioned_coords(node.base));
        } else if constexpr (std::is_same_v<T, Negate>) {
          out.merge(mentioned_coords(node.base));
        } else if constexpr (std::is_same_v<T, Intersect>) {
          for (const auto& p : node.parts) out.merge(mentioned_coords(p));
        } else if constexpr (std::is_same_v<T, Symmetrized>) {
          for (const auto& w : node.witnesses) add(w);
          out.merge(mentioned_coords(node.base));
        }
      },
      set.node());
  return out;
}

}  // namespace detail

Coord max_coord(const SetExpr& set) {
  auto coords = detail::mentioned_coords(set);
  return coords.empty() ? 0 : *coords.rbegin();
}

bool is_polyhedral(const SetExpr& set) {
  return std::visit(
      [](const auto& node) -> bool {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Box> || std::is_same_v<T, AbsConvHull>) {
          return true;
        } else if constexpr (std::is_same_v<T, Translate> || std::is_same_v<T, Negate> ||
                             std::is_same_v<T, Symmetrized>) {
          return is_polyhedral(node.base);
        } else if constexpr (std::is_same_v<T, Intersect>) {
          return !node.parts.empty() &&
                 std::all_of(node.parts.begin(), node.parts.end(), [](const SetExpr& p) { return is_polyhedral(p); });
        } else {
          return false;
        }
      },
      set.node());
}

// ---------------------------------------------------------------------------
// Membership.

namespace {

class SignSearch {
 public:
  SignSearch(const SignSums& s, const SparseVec& target) : mode_(s.mode), budget_(s.node_budget) {
    const auto terms = active_terms(s);
    std::set<Coord> coords;
    for (const auto& x : terms) {
      for (const auto& [i, v] : x.entries()) coords.insert(i);
    }
    for (const auto& [i, v] : target.entries()) {
      if (!coords.count(i)) feasible_ = false;
    }
    coord_list_.assign(coords.begin(), coords.end());
    const std::size_t dim = coord_list_.size();
    for (const auto& x : terms) {
      std::vector<Scalar> dense(dim);
      for (std::size_t k = 0; k < dim; ++k) dense[k] = x[coord_list_[k]];
      terms_.push_back(std::move(dense));
    }
    suffix_.assign(terms_.size() + 1, std::vector<Scalar>(dim));
    for (std::size_t n = terms_.size(); n-- > 0;) {
      for (std::size_t k = 0; k < dim; ++k) suffix_[n][k] = suffix_[n + 1][k] + abs_value(terms_[n][k]);
    }
    target_.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) target_[k] = target[coord_list_[k]];
  }

  bool run() {
    if (!feasible_ || !within(0, target_)) return false;
    return visit(0, target_);
  }

 private:
  bool within(std::size_t n, const std::vector<Scalar>& r) const {
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (abs_value(r[k]) > suffix_[n][k]) return false;
    }
    return true;
  }

  static bool all_zero(const std::vector<Scalar>& r) {
    return std::all_of(r.begin(), r.end(), [](const Scalar& x) { return x == 0; });
  }

  bool visit(std::size_t n, const std::vector<Scalar>& r) {
    if (++nodes_ > budget_) throw Error(ErrorKind::DepthExceeded, "sign-sum membership search exceeded its node budget");
    if (all_zero(r) && (mode_ == SignMode::Subsets || n > 0)) return true;
    if (n == terms_.size()) return false;
    if (!failed_.insert({n, r}).second) return false;
    const bool zero_term = all_zero(terms_[n]);
    if (mode_ == SignMode::Subsets && within(n + 1, r) && visit(n + 1, r)) return true;
    for (int sign : {1, -1}) {
      if (zero_term && sign < 0) break;
      std::vector<Scalar> next = r;
      for (std::size_t k = 0; k < r.size(); ++k) {
        if (terms_[n][k] != 0) next[k] -= sign * terms_[n][k];
      }
      if (within(n + 1, next) && visit(n + 1, next)) return true;
    }
    return false;
  }

  SignMode mode_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool feasible_ = true;
  std::vector<Coord> coord_list_;
  std::vector<std::vector<Scalar>> terms_;
  std::vector<std::vector<Scalar>> suffix_;
  std::vector<Scalar> target_;
  std::set<std::pair<std::size_t, std::vector<Scalar>>> failed_;
};

}  // namespace

bool contains(const SetExpr& set, const SparseVec& v) {
  return std::visit(
      [&](const auto& node) -> bool {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, FinitePoints>) {
          return std::find(node.points.begin(), node.points.end(), v) != node.points.end();
        } else if constexpr (std::is_same_v<T, Box>) {
          for (const auto& [i, x] : v.entries()) {
            if (abs_value(x) > node.radius(i)) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, SignSums>) {
          return SignSearch(node, v).run();
        } else if constexpr (std::is_same_v<T, Translate>) {
          return contains(node.base, v - node.by);
        } else if constexpr (std::is_same_v<T, Negate>) {
          return contains(node.base, -v);
        } else if constexpr (std::is_same_v<T, Intersect>) {
          return std::all_of(node.parts.begin(), node.parts.end(), [&](const SetExpr& p) { return contains(p, v); });
        } else if constexpr (std::is_same_v<T, Symmetrized>) {
          return std::all_of(node.witnesses.begin(), node.witnesses.end(), [&](const SparseVec& x) {
            return contains(node.base, x + v) && contains(node.base, x - v);
          });
        } else {
          return detail::polyhedral_contains(set, v);
        }
      },
      set.node());
}

// ---------------------------------------------------------------------------
// Enumeration.

namespace {

using PointSet = std::set<SparseVec, LexLess>;

// Upper estimate of the number of sign sums, saturating at limit + 1.
std::size_t sign_sum_estimate(const SignSums& s, std::size_t limit) {
  const std::size_t factor = s.mode == SignMode::Subsets ? 3 : 2;
  std::size_t count = 1;
  for (std::size_t n = 0; n < active_terms(s).size(); ++n) {
    count *= factor;
    if (count > limit) return limit + 1;
  }
  return s.mode == SignMode::Subsets ? count : std::min(count * 2, limit + 1);
}

std::optional<PointSet> enumerate_set(const SetExpr& set, const EvalOptions& opts);

std::optional<PointSet> enumerate_sign_sums(const SignSums& s, const EvalOptions& opts) {
  if (sign_sum_estimate(s, opts.enumeration_limit) > opts.enumeration_limit) return std::nullopt;
  PointSet out;
  if (s.mode == SignMode::Subsets) {
    out.insert(SparseVec{});
    for (const auto& x : active_terms(s)) {
      PointSet next = out;
      for (const auto& p : out) {
        next.insert(p + x);
        next.insert(p - x);
      }
      out = std::move(next);
    }
  } else {
    PointSet layer{SparseVec{}};
    for (const auto& x : active_terms(s)) {
      PointSet next;
      for (const auto& p : layer) {
        next.insert(p + x);
        next.insert(p - x);
      }
      layer = std::move(next);
      out.insert(layer.begin(), layer.end());
    }
  }
  return out;
}

std::optional<PointSet> enumerate_set(const SetExpr& set, const EvalOptions& opts) {
  return std::visit(
      [&](const auto& node) -> std::optional<PointSet> {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, FinitePoints>) {
          if (node.points.size() > opts.enumeration_limit) return std::nullopt;
          return PointSet(node.points.begin(), node.points.end());
        } else if constexpr (std::is_same_v<T, Box>) {
          const bool degenerate = node.default_radius == 0 &&
                                  std::all_of(node.overrides.begin(), node.overrides.end(),
                                              [](const auto& e) { return e.second == 0; });
          if (!degenerate) return std::nullopt;
          return PointSet{SparseVec{}};
        } else if constexpr (std::is_same_v<T, AbsConvHull>) {
          if (!std::all_of(node.points.begin(), node.points.end(), [](const SparseVec& p) { return p.is_zero(); })) {
            return std::nullopt;
          }
          return PointSet{SparseVec{}};
        } else if constexpr (std::is_same_v<T, SignSums>) {
          return enumerate_sign_sums(node, opts);
        } else if constexpr (std::is_same_v<T, Translate>) {
          auto base = enumerate_set(node.base, opts);
          if (!base) return std::nullopt;
          PointSet out;
          for (const auto& p : *base) out.insert(p + node.by);
          return out;
        } else if constexpr (std::is_same_v<T, Negate>) {
          auto base = enumerate_set(node.base, opts);
          if (!base) return std::nullopt;
          PointSet out;
          for (const auto& p : *base) out.insert(-p);
          return out;
        } else if constexpr (std::is_same_v<T, Intersect>) {
          for (std::size_t k = 0; k < node.parts.size(); ++k) {
            auto members = enumerate_set(node.parts[k], opts);
            if (!members) continue;
            PointSet out;
            for (const auto& p : *members) {
              bool all = true;
              for (std::size_t j = 0; j < node.parts.size() && all; ++j) {
                if (j != k) all = contains(node.parts[j], p);
              }
              if (all) out.insert(p);
            }
            return out;
          }
          return std::nullopt;
        } else {
          static_assert(std::is_same_v<T, Symmetrized>);
          auto base = enumerate_set(node.base, opts);
          if (!base) return std::nullopt;
          const SparseVec& anchor = node.witnesses.front();
          PointSet out;
          for (const auto& b : *base) {
            SparseVec d = b - anchor;
            const bool member = std::all_of(node.witnesses.begin(), node.witnesses.end(), [&](const SparseVec& x) {
              return base->count(x + d) && base->count(x - d);
            });
            if (member) out.insert(std::move(d));
          }
          return out;
        }
      },
      set.node());
}

}  // namespace

std::optional<std::vector<SparseVec>> enumerate_members(const SetExpr& set, const EvalOptions& opts) {
  auto members = enumerate_set(set, opts);
  if (!members || members->size() > opts.enumeration_limit) return std::nullopt;
  return std::vector<SparseVec>(members->begin(), members->end());
}

// ---------------------------------------------------------------------------
// Symmetrization and simplification.

namespace {

std::vector<SparseVec> flatten_witnesses(const std::vector<SparseVec>& inner, const std::vector<SparseVec>& outer) {
  std::vector<SparseVec> out;
  for (const auto& w : inner) {
    for (const auto& x : outer) {
      out.push_back(w + x);
      out.push_back(w - x);
    }
  }
  return sorted_unique(std::move(out));
}

SetExpr close_form(SetExpr set) {
  if (set.as<Box>()) return set;
  auto box = as_axis_box(set);
  if (box && !box->empty() && box->symmetric()) return SetExpr(box->to_box());
  return set;
}

SetExpr symmetrize_unchecked(const SetExpr& set, std::vector<SparseVec> witnesses) {
  if (witnesses.empty()) return set;
  witnesses = sorted_unique(std::move(witnesses));
  if (const auto* inner = set.as<Symmetrized>()) {
    return close_form(SetExpr(Symmetrized{inner->base, flatten_witnesses(inner->witnesses, witnesses)}));
  }
  return close_form(SetExpr(Symmetrized{set, std::move(witnesses)}));
}

}  // namespace

SetExpr symmetrize(const SetExpr& set, const std::vector<SparseVec>& witnesses) {
  for (const auto& w : witnesses) {
    if (!contains(set, w)) throw Error(ErrorKind::WitnessNotMember, "witness " + debug_string(w) + " is not in the set");
  }
  return symmetrize_unchecked(set, witnesses);
}

SetExpr simplify(const SetExpr& set) {
  return std::visit(
      [&](const auto& node) -> SetExpr {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Translate>) {
          return close_form(SetExpr(Translate{simplify(node.base), node.by}));
        } else if constexpr (std::is_same_v<T, Negate>) {
          return close_form(SetExpr(Negate{simplify(node.base)}));
        } else if constexpr (std::is_same_v<T, Intersect>) {
          std::vector<SetExpr> parts;
          for (const auto& p : node.parts) parts.push_back(simplify(p));
          return close_form(SetExpr(Intersect{std::move(parts)}));
        } else if constexpr (std::is_same_v<T, Symmetrized>) {
          return symmetrize_unchecked(simplify(node.base), node.witnesses);
        } else if constexpr (std::is_same_v<T, Box>) {
          return make_box(node.default_radius, node.overrides);
        } else {
          return set;
        }
      },
      set.node());
}

// ---------------------------------------------------------------------------

Scalar max_signed_sum(std::span<const SparseVec> terms, NormKind kind, std::uint64_t budget) {
  std::set<Coord> coords;
  for (const auto& x : terms) {
    for (const auto& [i, v] : x.entries()) coords.insert(i);
  }
  if (kind == NormKind::Sup) {
    Scalar best = 0;
    for (Coord i : coords) {
      Scalar column = 0;
      for (const auto& x : terms) column += abs_value(x[i]);
      if (best < column) best = column;
    }
    return best;
  }
  const std::vector<Coord> cols(coords.begin(), coords.end());
  std::vector<std::vector<Scalar>> dense;
  for (const auto& x : terms) {
    if (x.is_zero()) continue;
    std::vector<Scalar> row(cols.size());
    for (std::size_t k = 0; k < cols.size(); ++k) row[k] = x[cols[k]];
    dense.push_back(std::move(row));
  }
  if (dense.empty()) return 0;
  const std::size_t H = dense.size();
  const std::size_t S = cols.size();
  auto too_many = [&](std::size_t bits) { return bits >= 63 || (1ull << bits) > budget; };

  if (kind == NormKind::Sum && S < H) {
    // max over sign vectors sigma of sum_n |<sigma, x_n>|; sigma_1 = +1 by symmetry.
    if (too_many(S - 1)) throw Error(ErrorKind::BudgetExceeded, "sign-vector enumeration exceeds the budget");
    std::vector<Scalar> pair(H);
    for (std::size_t n = 0; n < H; ++n) {
      for (std::size_t k = 0; k < S; ++k) pair[n] += dense[n][k];
    }
    std::vector<int> sigma(S, 1);
    Scalar best = 0;
    const std::uint64_t count = 1ull << (S - 1);
    for (std::uint64_t g = 0; g < count; ++g) {
      if (g > 0) {
        const std::size_t k = static_cast<std::size_t>(__builtin_ctzll(g)) + 1;
        sigma[k] = -sigma[k];
        for (std::size_t n = 0; n < H; ++n) {
          if (dense[n][k] != 0) pair[n] += 2 * sigma[k] * dense[n][k];
        }
      }
      Scalar total = 0;
      for (const auto& p : pair) total += abs_value(p);
      if (best < total) best = total;
    }
    return best;
  }

  if (too_many(H - 1)) throw Error(ErrorKind::BudgetExceeded, "sign-pattern enumeration exceeds the budget");
  std::vector<Scalar> sum(S);
  for (std::size_t n = 0; n < H; ++n) {
    for (std::size_t k = 0; k < S; ++k) sum[k] += dense[n][k];
  }
  std::vector<int> theta(H, 1);
  Scalar best = 0;
  const std::uint64_t count = 1ull << (H - 1);
  for (std::uint64_t g = 0; g < count; ++g) {
    if (g > 0) {
      const std::size_t n = static_cast<std::size_t>(__builtin_ctzll(g)) + 1;
      theta[n] = -theta[n];
      for (std::size_t k = 0; k < S; ++k) {
        if (dense[n][k] != 0) sum[k] += 2 * theta[n] * dense[n][k];
      }
    }
    Scalar value = 0;
    for (const auto& s : sum) value += kind == NormKind::Sum ? abs_value(s) : Scalar(s * s);
    if (best < value) best = value;
  }
  return best;
}

// ---------------------------------------------------------------------------

namespace {

std::string describe_vec(const SparseVec& v) { return debug_string(v); }

std::string describe_list(const std::vector<SparseVec>& list) {
  std::string out = "[";
  for (std::size_t k = 0; k < list.size(); ++k) {
    if (k) out += ", ";
    out += describe_vec(list[k]);
  }
  return out + "]";
}

}  // namespace

std::string describe(const SetExpr& set) {
  return std::visit(
      [&](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, FinitePoints>) {
          return "points" + describe_list(node.points);
        } else if constexpr (std::is_same_v<T, Box>) {
          std::string out = "box(" + format_scalar(node.default_radius);
          for (const auto& [i, r] : node.overrides) out += ", " + std::to_string(i) + ":" + format_scalar(r);
          return out + ")";
        } else if constexpr (std::is_same_v<T, SignSums>) {
          std::string label = node.series.label.empty() ? "series" : node.series.label;
          return std::string("sign_sums(") + label + ", " + to_string(node.mode) + ", H=" +
                 std::to_string(node.horizon) + ")";
        } else if constexpr (std::is_same_v<T, Translate>) {
          return describe(node.base) + " + " + describe_vec(node.by);
        } else if constexpr (std::is_same_v<T, Negate>) {
          return "-(" + describe(node.base) + ")";
        } else if constexpr (std::is_same_v<T, Intersect>) {
          std::string out = "intersect(";
          for (std::size_t k = 0; k < node.parts.size(); ++k) out += (k ? ", " : "") + describe(node.parts[k]);
          return out + ")";
        } else if constexpr (std::is_same_v<T, Symmetrized>) {
          return "sym(" + describe(node.base) + ", " + describe_list(node.witnesses) + ")";
        } else {
          return "absconv" + describe_list(node.points);
        }
      },
      set.node());
}

}  // namespace symdex
