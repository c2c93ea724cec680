#pragma once

// Symmetrization indexes. For a witness list W of members of A,
// Sym(A, W) = {d : x + d, x - d in A for all x in W}; delta_0(A) = diam(A)/2
// and delta_N(A) is the infimum of delta_0(Sym(A, W)) over lists of N
// witnesses. Upper bounds come from explicit witness lists, lower bounds
// from free-direction certificates; both are replayable.
//
// All values are measures (squared for the Euclidean norm).

#include <optional>
#include <string>
#include <vector>

#include "symdex/sets.hpp"

namespace symdex {

enum class StrategyKind { Exhaustive, Greedy, Beam };

StrategyKind parse_strategy(std::string_view text);
const char* to_string(StrategyKind kind);

struct SearchStrategy {
  StrategyKind kind = StrategyKind::Greedy;
  /// Candidate witnesses; the set's default pool when absent.
  std::optional<std::vector<SparseVec>> pool;
  std::size_t restarts = 1;
  std::size_t width = 4;

  static SearchStrategy exhaustive(std::optional<std::vector<SparseVec>> pool = std::nullopt) {
    return {StrategyKind::Exhaustive, std::move(pool), 1, 4};
  }
  static SearchStrategy greedy(std::optional<std::vector<SparseVec>> pool = std::nullopt, std::size_t restarts = 1) {
    return {StrategyKind::Greedy, std::move(pool), restarts, 4};
  }
  static SearchStrategy beam(std::optional<std::vector<SparseVec>> pool = std::nullopt, std::size_t width = 4) {
    return {StrategyKind::Beam, std::move(pool), 1, width};
  }
};

enum class CertificateKind {
  None,               // nothing certified; a 0 lower bound means "unknown"
  Trivial,            // certified 0
  Exact,              // closed form or full enumeration
  FreshCoordinate,    // +-r e_m on a coordinate no witness touches
  SeriesTail,         // +-x_m for a series index beyond every witness
  FiniteFamily,       // finite separated family inside the set
  ExtendsToInfinite,  // separated family that continues on fresh coordinates
};

const char* to_string(CertificateKind kind);

struct LowerCertificate {
  CertificateKind kind = CertificateKind::None;
  /// Witness list the certificate was challenged with.
  std::vector<SparseVec> challenge;
  /// d with x +- d in A for every challenge witness x.
  std::optional<SparseVec> direction;
  /// SeriesTail: valid for witnesses that are sign sums over indices <= this.
  std::size_t usable_until = 0;
};

struct DeltaResult {
  std::size_t n = 0;
  BoundPair bound;
  std::vector<SparseVec> upper_witnesses;
  LowerCertificate lower_certificate;
};

/// diam(A)/2 with exactness preserved.
BoundPair delta0(const SetExpr& set, NormKind kind, const EvalOptions& opts = {});

/// Candidate witnesses used when a strategy carries no pool.
std::vector<SparseVec> default_pool(const SetExpr& set, NormKind kind, const EvalOptions& opts = {});

/// Best delta_0(Sym(A, W)) over witness sets W (|W| <= n) produced by the
/// strategy. Exact (lower = upper) for an exhaustive search over every
/// member of a finite set.
DeltaResult delta_upper(const SetExpr& set, std::size_t n, const SearchStrategy& strategy, NormKind kind,
                        const EvalOptions& opts = {});

/// A lower bound valid for every list of n witnesses (within the
/// certificate's scope). `challenge`, when given, is replayed: the
/// certificate's direction is computed for it and checked by membership.
DeltaResult delta_lower(const SetExpr& set, std::size_t n, NormKind kind,
                        const std::vector<SparseVec>& challenge = {}, const EvalOptions& opts = {});

/// delta_N bounds for N = 0..n_max; uppers are non-increasing.
std::vector<DeltaResult> delta_curve(const SetExpr& set, std::size_t n_max, const SearchStrategy& strategy,
                                     NormKind kind, const EvalOptions& opts = {});

struct DeltaInfinity {
  BoundPair bound;
  CertificateKind lower_kind = CertificateKind::None;
  std::vector<SparseVec> upper_witnesses;
};

DeltaInfinity delta_infinity_bounds(const SetExpr& set, std::size_t n_max, const SearchStrategy& strategy,
                                    NormKind kind, const EvalOptions& opts = {});

struct KCenterResult {
  BoundPair bound;
  std::vector<SparseVec> centers;
};

/// Smallest covering radius with k centers chosen among the points.
KCenterResult kcenter_radius(const std::vector<SparseVec>& points, std::size_t k, bool exact, NormKind kind,
                             const EvalOptions& opts = {});

struct SeparationResult {
  /// Lower bound on the Kuratowski measure; the upper side is open.
  BoundPair bound;
  CertificateKind kind = CertificateKind::None;
  std::vector<SparseVec> points;
  /// Minimum pairwise distance of `points`.
  Scalar separation;
};

SeparationResult separation_alpha_lower(const SetExpr& set, std::size_t count, NormKind kind,
                                        const EvalOptions& opts = {});

}  // namespace symdex
