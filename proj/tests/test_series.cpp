#include <doctest.h>

#include "oracles.hpp"
#include "symdex/error.hpp"
#include "symdex/series.hpp"

using namespace symdex;

namespace {

SeriesSpec canonical(std::size_t h) {
  SeriesSpec s;
  s.label = "canonical";
  for (Coord n = 1; n <= h; ++n) s.terms.push_back(unit_vector(n));
  return s;
}

SeriesSpec geometric(std::size_t h) {
  SeriesSpec s;
  s.norm = NormKind::Sum;
  s.label = "geometric";
  for (Coord n = 1; n <= h; ++n) s.terms.push_back(unit_vector(n, Scalar(1, 1u << n)));
  return s;
}

}  // namespace

TEST_CASE("wuC constants") {
  CHECK(wuc_bound(canonical(8)) == 1);
  CHECK(wuc_bound(geometric(10)) == 1 - Scalar(1, 1024));
  SeriesSpec same;
  for (int n = 1; n <= 4; ++n) same.terms.push_back(unit_vector(1, Scalar(1, n)));
  CHECK(wuc_bound(same) == Scalar(25, 12));
}

TEST_CASE("wuC constant dominates partial sums") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    SeriesSpec s;
    for (int n = 0; n < 6; ++n) {
      SparseVec v;
      for (Coord i = 1; i <= 3; ++i) v.set(i, rng.rational(3, 4));
      s.terms.push_back(v);
    }
    const Scalar w = wuc_bound(s);
    for (int p = 0; p < 30; ++p) {
      SparseVec sum;
      const std::size_t m = 1 + rng.below(6);
      for (std::size_t n = 0; n < m; ++n) sum = rng.below(2) ? sum + s.terms[n] : sum - s.terms[n];
      CHECK(norm(sum, NormKind::Sup) <= w);
    }
    CHECK(w == oracle::tail_sup(s.terms, 1, 6, NormKind::Sup));
    s.norm = NormKind::Sum;
    CHECK(wuc_bound(s) == oracle::tail_sup(s.terms, 1, 6, NormKind::Sum));
    s.norm = NormKind::Euclid;
    CHECK(wuc_bound(s) == oracle::tail_sup(s.terms, 1, 6, NormKind::Euclid));
  }
}

TEST_CASE("sign sum sets") {
  auto prefixes = enumerate_members(sign_sum_set(canonical(2), SignMode::Prefixes));
  const SparseVec e1 = unit_vector(1), e2 = unit_vector(2);
  std::vector<SparseVec> want{e1, -e1, e1 + e2, e1 - e2, -e1 + e2, -e1 - e2};
  std::sort(want.begin(), want.end(), LexLess{});
  CHECK(*prefixes == want);
  auto subsets = enumerate_members(sign_sum_set(canonical(2), SignMode::Subsets));
  want.push_back(e2);
  want.push_back(-e2);
  want.push_back(SparseVec{});
  std::sort(want.begin(), want.end(), LexLess{});
  CHECK(*subsets == want);
}

TEST_CASE("brute tail suprema") {
  CHECK(brute_tail_sup(geometric(10), 4, 10) == Scalar(1, 8) - Scalar(1, 1024));
  CHECK(brute_tail_sup(canonical(10), 3, 9) == 1);
  CHECK(brute_tail_sup(geometric(10), 5, 5) == Scalar(1, 32));
  CHECK_THROWS_AS(brute_tail_sup(canonical(30), 1, 22), Error);
  CHECK_THROWS_AS(brute_tail_sup(canonical(5), 4, 3), Error);
  Rng rng(37);
  SeriesSpec s;
  for (int n = 0; n < 8; ++n) s.terms.push_back(SparseVec{{1, rng.rational(4, 3)}, {2, rng.rational(4, 3)}});
  for (NormKind k : {NormKind::Sup, NormKind::Sum, NormKind::Euclid}) {
    s.norm = k;
    CHECK(brute_tail_sup(s, 2, 7) == oracle::tail_sup(s.terms, 2, 7, k));
  }
}

TEST_CASE("tail bound harness") {
  const TailBoundResult geo = unconditional_tail_bound(geometric(10), Scalar(1, 8), SearchStrategy::greedy());
  CHECK(geo.status == TailStatus::Found);
  CHECK(geo.m == 3);
  CHECK(geo.sound);
  CHECK(geo.tail_sup == Scalar(1, 8) - Scalar(1, 1024));

  const TailBoundResult can = unconditional_tail_bound(canonical(10), Scalar(1, 2), SearchStrategy::greedy());
  CHECK(can.status == TailStatus::NotAchievable);
  REQUIRE(can.lower);
  CHECK(can.lower->bound.lower >= 1);
  REQUIRE(can.lower->lower_certificate.direction);
  const SetExpr a = sign_sum_set(canonical(10), SignMode::Subsets);
  for (const auto& w : can.lower->lower_certificate.challenge) {
    CHECK(contains(a, w + *can.lower->lower_certificate.direction));
    CHECK(contains(a, w - *can.lower->lower_certificate.direction));
  }

  SeriesSpec zero;
  zero.terms = {SparseVec{}, SparseVec{}, SparseVec{}};
  const TailBoundResult z = unconditional_tail_bound(zero, Scalar(1, 8), SearchStrategy::greedy());
  CHECK(z.status == TailStatus::Found);
  CHECK(z.m == 1);
}

TEST_CASE("harness soundness on random decaying series") {
  Rng rng(41);
  for (int trial = 0; trial < 8; ++trial) {
    SeriesSpec s;
    s.norm = static_cast<NormKind>(trial % 3);
    for (Coord n = 1; n <= 6; ++n) {
      s.terms.push_back(SparseVec{{n, Scalar(1 + rng.below(3), 1u << n)}, {1 + rng.below(2), Scalar(1, 1u << (n + 2))}});
    }
    const Scalar eps(1, 4);
    const TailBoundResult r = unconditional_tail_bound(s, eps, SearchStrategy::greedy());
    if (r.status != TailStatus::Found) continue;
    const std::size_t end = std::min<std::size_t>(r.m + 12, s.horizon());
    if (end > r.m) CHECK(oracle::tail_sup(s.terms, r.m + 1, end, s.norm) <= length_measure(eps, s.norm));
  }
}

TEST_CASE("canonical basis keeps a unit lower bound for every N within the horizon") {
  const SetExpr a = sign_sum_set(canonical(12), SignMode::Subsets);
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<SparseVec> w;
    for (Coord i = 1; i <= n; ++i) w.push_back(unit_vector(i) - unit_vector(i + 1));
    const DeltaResult r = delta_lower(a, n, NormKind::Sup, w);
    CHECK(r.bound.lower >= 1);
  }
}
