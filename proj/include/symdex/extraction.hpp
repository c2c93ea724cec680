#pragma once

// Constructive procedures: almost-c0 sequence extraction with orthogonal
// functionals, almost-isometric refinement, epsilon-trees, the one-sided
// sequence, and epsilon-(strong-)extreme point tests. Stalls are results,
// not errors.

#include <optional>
#include <string>
#include <vector>

#include "symdex/indexes.hpp"

namespace symdex {

/// f with dual norm 1, <f, v> = 0 for v in `orthogonal_to` and
/// sup(f, set) > lambda (strictly, on the certified lower bound).
/// `certificate`, if given, should be a member of `set` far from the span.
/// Throws NoCertificate when no construction path succeeds.
Functional orthogonal_functional(const std::vector<SparseVec>& orthogonal_to, const SetExpr& set,
                                 const Scalar& lambda, const std::optional<SparseVec>& certificate, NormKind kind,
                                 const EvalOptions& opts = {});

struct ExtractionStep {
  SparseVec x;
  Functional f;
  SetExpr set;  // A_n
  /// Length lower bound for delta_{2^n}(A) used at this step.
  Scalar delta_lower;
  /// Certified upper bound of sup(f, A_n).
  Scalar sup_upper;
  bool used_argmax = false;
};

struct ExtractionTranscript {
  SetExpr base;
  NormKind kind = NormKind::Sup;
  Scalar epsilon;
  Scalar eta;
  SparseVec x0;
  std::vector<ExtractionStep> steps;
  /// A_{N+1}, the set left after the last step.
  std::optional<SetExpr> next_set;
  /// Length lower bound for delta_{2^N}(A), N = steps.size().
  Scalar delta_lower_at_2n;
  /// Length upper bound for delta_0(A).
  Scalar delta0_upper;
  /// Exact delta_0(A) in the measure of the norm kind.
  Scalar delta0_upper_measure;
  std::optional<std::size_t> stalled_at;
  std::string stall_reason;
};

ExtractionTranscript extract_c0_sequence(const SetExpr& set, const Scalar& epsilon, std::size_t n, NormKind kind,
                                         const std::optional<SparseVec>& x0 = std::nullopt,
                                         const EvalOptions& opts = {});

struct TranscriptCheck {
  std::string name;   // a, b, c, d, dual_norm, member
  std::size_t step = 0;
  bool passed = false;
  std::string level;  // exact, exhaustive, sampled, bound
};

struct TranscriptValidation {
  bool ok = true;
  std::vector<TranscriptCheck> checks;
};

/// Independent re-check of conditions (a)-(d), unit dual norms and
/// membership of each x_n in A_n.
TranscriptValidation validate_transcript(const ExtractionTranscript& t, const EvalOptions& opts = {});

struct BasisMargins {
  /// Measure of ||sum lambda_n x_n||.
  Scalar norm;
  Scalar max_coefficient;
  /// Lengths; negative values are violations. Euclidean margins are
  /// conservative (rational enclosures).
  Scalar lower_margin;
  Scalar upper_margin;
  bool ok() const { return lower_margin >= 0 && upper_margin >= 0; }
};

BasisMargins verify_basis_inequality(const ExtractionTranscript& t, const std::vector<Scalar>& coefficients);

enum class SearchStatus { Found, NotFound };

struct RefineResult {
  SearchStatus status = SearchStatus::NotFound;
  SetExpr set;
  std::vector<SparseVec> witnesses;
  std::size_t n = 0;
  /// delta_inf lower bound used as reference (measure).
  Scalar reference;
  /// delta_0 upper bound of `set` (measure).
  Scalar delta0;
  /// delta0 / reference for the returned (or best) set.
  Scalar ratio;
};

RefineResult refine_almost_isometric(const SetExpr& set, const Scalar& epsilon, const SearchStrategy& strategy,
                                     std::size_t n_max, NormKind kind, const EvalOptions& opts = {});

struct EpsTree {
  std::size_t depth = 0;
  Scalar epsilon;
  /// Heap order: node k (1-based) is nodes[k-1], children 2k and 2k+1.
  std::vector<SparseVec> nodes;
  /// Minimum sibling distance (measure) over completed internal nodes.
  Scalar sep;
  std::optional<std::size_t> stalled_at;
};

EpsTree build_eps_tree(const SetExpr& set, const Scalar& epsilon, std::size_t depth, NormKind kind,
                       const EvalOptions& opts = {});

struct OneSidedResult {
  SparseVec x0;
  std::vector<SparseVec> sequence;
  std::optional<std::size_t> stalled_at;
  /// Every x0 + sum over a subset of the sequence was checked in A.
  bool members_verified = false;
  /// Largest ||sum theta_n x_n|| over the checked patterns (measure).
  Scalar max_sign_sum;
  std::optional<Scalar> diameter_upper;
  std::size_t patterns_checked = 0;
  bool sampled = false;
};

OneSidedResult one_sided_sequence(const SetExpr& set, const Scalar& epsilon, std::size_t steps, NormKind kind,
                                  const EvalOptions& opts = {});

/// diam(Sym(A, [x])) < 2 epsilon. Throws Inconclusive when the diameter
/// interval straddles 2 epsilon.
bool eps_extreme(const SetExpr& set, const SparseVec& x, const Scalar& epsilon, NormKind kind,
                 const EvalOptions& opts = {});

struct StrongExtremeResult {
  bool strong = false;
  /// Measure of the optimal delta (a rational lower enclosure of its square
  /// when the Euclidean value is irrational).
  Scalar delta;
};

StrongExtremeResult eps_strong_extreme(const SetExpr& finite_set, const SparseVec& x, const Scalar& epsilon,
                                       NormKind kind);

}  // namespace symdex
