#include "symdex/series.hpp"

#include <algorithm>

#include "symdex/error.hpp"

namespace symdex {

Scalar wuc_bound(const SeriesSpec& s, const EvalOptions& opts) {
  return max_signed_sum(s.terms, s.norm, opts.sign_budget);
}

SetExpr sign_sum_set(const SeriesSpec& s, SignMode mode) { return make_sign_sums(s, mode); }

Scalar brute_tail_sup(const SeriesSpec& s, std::size_t m, std::size_t m_end) {
  if (m < 1 || m > m_end || m_end > s.horizon()) {
    throw Error(ErrorKind::InvalidInput, "tail window must satisfy 1 <= m <= m' <= horizon");
  }
  if (m_end - m > 20) throw Error(ErrorKind::BudgetExceeded, "tail window longer than 21 terms");
  const std::size_t len = m_end - m + 1;
  // theta_m = +1 without loss; walk the remaining signs in Gray-code order.
  SparseVec sum;
  for (std::size_t k = m; k <= m_end; ++k) sum = sum + s.terms[k - 1];
  Scalar best = norm(sum, s.norm);
  std::vector<bool> minus(len, false);
  const std::uint64_t patterns = std::uint64_t(1) << (len - 1);
  for (std::uint64_t g = 1; g < patterns; ++g) {
    const std::size_t flip = 1 + std::countr_zero(g);
    const SparseVec& x = s.terms[m - 1 + flip];
    sum = minus[flip] ? sum + 2 * x : sum - 2 * x;
    minus[flip] = !minus[flip];
    best = max_of(best, norm(sum, s.norm));
  }
  return best;
}

const char* to_string(TailStatus status) { return status == TailStatus::Found ? "found" : "not_achievable"; }

namespace {

// Full sign patterns over x_1..x_k, all-plus first, at most `cap` distinct.
std::vector<SparseVec> pattern_pool(const SeriesSpec& s, std::size_t k, std::size_t cap) {
  std::vector<SparseVec> out;
  const std::uint64_t patterns = k >= 63 ? ~std::uint64_t(0) : (std::uint64_t(1) << k);
  for (std::uint64_t mask = 0; mask < patterns && out.size() < cap; ++mask) {
    SparseVec v;
    for (std::size_t n = 0; n < k; ++n) v = (mask >> n) & 1 ? v - s.terms[n] : v + s.terms[n];
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

TailBoundResult unconditional_tail_bound(const SeriesSpec& s, const Scalar& epsilon, const SearchStrategy& search,
                                         SignMode mode, const EvalOptions& opts) {
  if (s.horizon() == 0) throw Error(ErrorKind::InvalidInput, "series has no terms");
  if (epsilon <= 0) throw Error(ErrorKind::InvalidInput, "epsilon must be positive");
  const SetExpr set = sign_sum_set(s, mode);
  const Scalar target = length_measure(epsilon, s.norm);
  TailBoundResult out;
  const std::size_t last = std::max<std::size_t>(1, s.horizon() - 1);
  for (std::size_t k = 1; k <= last; ++k) {
    SearchStrategy strategy = search;
    strategy.pool = pattern_pool(s, k, 16);
    const std::size_t n = std::min<std::size_t>(strategy.pool->size(), search.kind == StrategyKind::Exhaustive ? 3 : 4);
    DeltaResult up = delta_upper(set, n, strategy, s.norm, opts);
    out.m = k;
    out.witnesses = up.upper_witnesses;
    if (out.witnesses.empty()) out.witnesses.push_back(strategy.pool->front());
    out.delta0 = delta0(symmetrize(set, out.witnesses), s.norm, opts);
    if (out.delta0.upper && *out.delta0.upper <= target) {
      out.status = TailStatus::Found;
      break;
    }
    // A series-tail certificate covers every witness list over indices below
    // the horizon, so larger k cannot succeed either.
    DeltaResult low = delta_lower(set, out.witnesses.size(), s.norm, out.witnesses, opts);
    if (low.lower_certificate.kind == CertificateKind::SeriesTail && low.bound.lower > target) {
      out.lower = std::move(low);
      return out;
    }
  }
  if (out.status == TailStatus::Found) {
    out.window_end = std::min(out.m + 12, s.horizon());
    out.tail_sup = out.window_end > out.m ? brute_tail_sup(s, out.m + 1, out.window_end) : Scalar(0);
    out.sound = out.tail_sup <= target;
    if (!out.sound) {
      throw Error(ErrorKind::InvariantViolation, "tail enumeration exceeds epsilon after a certified bound");
    }
  } else {
    out.lower = delta_lower(set, out.witnesses.size(), s.norm, out.witnesses, opts);
  }
  return out;
}

}  // namespace symdex
