#include <doctest.h>

#include "oracles.hpp"
#include "symdex/extraction.hpp"

using namespace symdex;

TEST_CASE("strong extreme points are extreme points") {
  Rng rng(101);
  std::size_t strong_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto pts = oracle::random_points(rng, 7, 4);
    const SetExpr a = make_points(pts);
    const NormKind k = static_cast<NormKind>(trial % 3);
    for (const auto& x : oracle::dedup(pts)) {
      for (const Scalar eps : {Scalar(1, 8), Scalar(1, 2), Scalar(1)}) {
        if (!eps_strong_extreme(a, x, eps, k).strong) continue;
        ++strong_seen;
        CHECK(eps_extreme(a, x, eps, k));
      }
    }
  }
  CHECK(strong_seen > 0);
}

TEST_CASE("every finite set has a point that is extreme at every scale") {
  Rng rng(103);
  for (int trial = 0; trial < 60; ++trial) {
    const auto pts = oracle::random_points(rng, 8, 4);
    const SetExpr a = make_points(pts);
    const NormKind k = static_cast<NormKind>(trial % 3);
    bool found = false;
    for (const auto& x : oracle::dedup(pts)) {
      if (eps_extreme(a, x, Scalar(1, 1000000), k)) {
        found = true;
        CHECK(oracle::diameter(oracle::symmetrized(pts, {x}), k) == 0);
      }
    }
    CHECK(found);
    CHECK(oracle::delta_n(pts, 1, k) == 0);
  }
}

TEST_CASE("one-sided sign sums stay within the diameter") {
  Rng rng(107);
  for (int trial = 0; trial < 30; ++trial) {
    auto pts = oracle::random_points(rng, 8, 3);
    pts.push_back(SparseVec{});
    const NormKind k = static_cast<NormKind>(trial % 3);
    const OneSidedResult r = one_sided_sequence(make_points(pts), Scalar(1, 4), 3, k);
    CHECK(r.members_verified);
    REQUIRE(r.diameter_upper);
    CHECK(r.max_sign_sum <= *r.diameter_upper);
  }
  for (const Scalar radius : {Scalar(1), Scalar(3, 2)}) {
    const OneSidedResult box = one_sided_sequence(make_box(radius, {{2, 2}}), 1, 6, NormKind::Sup);
    CHECK(box.members_verified);
    CHECK(box.max_sign_sum <= *box.diameter_upper);
  }
}

TEST_CASE("separated families in symmetrized boxes dominate the fresh-coordinate bound") {
  Rng rng(109);
  const SetExpr a = make_box(1);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng.below(4);
    std::vector<SparseVec> w;
    for (std::size_t j = 0; j < n; ++j) {
      SparseVec x;
      for (Coord i = 1; i <= 4; ++i) x.set(i, Scalar(rng.between(-4, 4), 4));
      w.push_back(x);
    }
    const SetExpr d = symmetrize(a, w);
    const SeparationResult alpha = separation_alpha_lower(d, 6, NormKind::Sup);
    const DeltaResult low = delta_lower(a, 2 * n, NormKind::Sup, w);
    CHECK(alpha.bound.lower >= low.bound.lower);
    CHECK(alpha.bound.lower == 1);
    CHECK(low.bound.lower == 1);
  }
}

TEST_CASE("transcripts of symmetrized boxes validate") {
  Rng rng(113);
  for (int trial = 0; trial < 10; ++trial) {
    std::map<Coord, Scalar> over;
    for (Coord i = 1; i <= 3; ++i) over[i] = 1 + Scalar(rng.below(4), 2);
    const SetExpr a = make_box(1, over);
    const ExtractionTranscript t = extract_c0_sequence(a, Scalar(1, 5), 3, NormKind::Sup);
    CHECK(validate_transcript(t).ok);
    for (int p = 0; p < 20; ++p) {
      std::vector<Scalar> lambda;
      for (std::size_t i = 0; i < t.steps.size(); ++i) lambda.push_back(rng.rational(7, 3));
      CHECK(verify_basis_inequality(t, lambda).ok());
    }
  }
}
