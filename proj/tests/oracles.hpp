#pragma once

// Brute-force reference computations for tests. They share only the vector
// type with the library: norms, membership and symmetrization are redone
// from the definitions by plain enumeration.

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "symdex/sets.hpp"

namespace oracle {

using symdex::Coord;
using symdex::NormKind;
using symdex::Scalar;
using symdex::SparseVec;

inline Scalar measure(const SparseVec& v, NormKind kind) {
  Scalar out = 0;
  for (const auto& [i, x] : v.entries()) {
    const Scalar a = x < 0 ? Scalar(-x) : x;
    if (kind == NormKind::Sup) {
      if (a > out) out = a;
    } else if (kind == NormKind::Sum) {
      out += a;
    } else {
      out += a * a;
    }
  }
  return out;
}

inline bool in_list(const std::vector<SparseVec>& pts, const SparseVec& v) {
  return std::find(pts.begin(), pts.end(), v) != pts.end();
}

inline std::vector<SparseVec> dedup(std::vector<SparseVec> pts) {
  std::vector<SparseVec> out;
  for (auto& p : pts) {
    if (!in_list(out, p)) out.push_back(std::move(p));
  }
  return out;
}

/// {d : w + d and w - d in A for every w in W} for a finite A.
inline std::vector<SparseVec> symmetrized(const std::vector<SparseVec>& a, const std::vector<SparseVec>& w) {
  if (w.empty()) return dedup(a);
  std::vector<SparseVec> out;
  for (const auto& p : a) {
    const SparseVec d = p - w.front();
    bool ok = true;
    for (const auto& x : w) ok = ok && in_list(a, x + d) && in_list(a, x - d);
    if (ok && !in_list(out, d)) out.push_back(d);
  }
  return out;
}

/// Diameter measure (squared for Euclid) of a finite set; 0 when empty.
inline Scalar diameter(const std::vector<SparseVec>& pts, NormKind kind) {
  Scalar best = 0;
  for (const auto& p : pts) {
    for (const auto& q : pts) best = std::max(best, measure(p - q, kind));
  }
  return best;
}

/// Half the diameter, as a measure.
inline Scalar half_diameter(const std::vector<SparseVec>& pts, NormKind kind) {
  const Scalar d = diameter(pts, kind);
  return kind == NormKind::Euclid ? Scalar(d / 4) : Scalar(d / 2);
}

/// Min over witness subsets of size 1..n of delta_0 of the symmetrized set.
inline Scalar delta_n(const std::vector<SparseVec>& a_raw, std::size_t n, NormKind kind) {
  const std::vector<SparseVec> a = dedup(a_raw);
  if (n == 0) return half_diameter(a, kind);
  std::optional<Scalar> best;
  const std::size_t m = a.size();
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) > n) continue;
    std::vector<SparseVec> w;
    for (std::size_t i = 0; i < m; ++i) {
      if ((mask >> i) & 1) w.push_back(a[i]);
    }
    const Scalar v = half_diameter(symmetrized(a, w), kind);
    if (!best || v < *best) best = v;
  }
  return *best;
}

/// All members of the SUBSETS sign-sum set over the first h terms.
inline std::vector<SparseVec> subset_sums(const std::vector<SparseVec>& terms, std::size_t h) {
  std::vector<SparseVec> out{SparseVec{}};
  for (std::size_t n = 0; n < h; ++n) {
    std::vector<SparseVec> next;
    for (const auto& s : out) {
      next.push_back(s);
      next.push_back(s + terms[n]);
      next.push_back(s - terms[n]);
    }
    out = dedup(std::move(next));
  }
  return out;
}

/// All members of the PREFIXES sign-sum set over the first h terms.
inline std::vector<SparseVec> prefix_sums(const std::vector<SparseVec>& terms, std::size_t h) {
  std::vector<SparseVec> out, level{SparseVec{}};
  for (std::size_t n = 0; n < h; ++n) {
    std::vector<SparseVec> next;
    for (const auto& s : level) {
      next.push_back(s + terms[n]);
      next.push_back(s - terms[n]);
    }
    level = dedup(std::move(next));
    for (const auto& s : level) {
      if (!in_list(out, s)) out.push_back(s);
    }
  }
  return out;
}

/// max over sign patterns of ||sum_{n=m}^{m_end} theta_n x_n||, 1-based.
inline Scalar tail_sup(const std::vector<SparseVec>& terms, std::size_t m, std::size_t m_end, NormKind kind) {
  Scalar best = 0;
  const std::size_t len = m_end - m + 1;
  for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
    SparseVec s;
    for (std::size_t k = 0; k < len; ++k) s = (mask >> k) & 1 ? s - terms[m - 1 + k] : s + terms[m - 1 + k];
    best = std::max(best, measure(s, kind));
  }
  return best;
}

/// sup of f over a finite set.
inline Scalar sup(const symdex::Functional& f, const std::vector<SparseVec>& pts) {
  std::optional<Scalar> best;
  for (const auto& p : pts) {
    Scalar v = 0;
    for (const auto& [i, c] : f.entries()) v += c * p[i];
    if (!best || v > *best) best = v;
  }
  return *best;
}

/// Random finite set: 1..max_points points in dimension 1..max_dim with
/// small rational coordinates.
inline std::vector<SparseVec> random_points(symdex::Rng& rng, std::size_t max_points, Coord max_dim) {
  const std::size_t count = 1 + rng.below(max_points);
  const Coord dim = static_cast<Coord>(1 + rng.below(max_dim));
  std::vector<SparseVec> out;
  for (std::size_t k = 0; k < count; ++k) {
    SparseVec p;
    for (Coord i = 1; i <= dim; ++i) p.set(i, rng.rational(3, 2));
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace oracle
