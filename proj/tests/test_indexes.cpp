#include <doctest.h>

#include "oracles.hpp"
#include "symdex/error.hpp"
#include "symdex/indexes.hpp"

using namespace symdex;

namespace {

const SparseVec e1 = unit_vector(1);
const SparseVec e2 = unit_vector(2);
const SetExpr triangle = make_points({SparseVec{}, e1, e2});

}  // namespace

TEST_CASE("delta_0") {
  CHECK(delta0(make_box(1), NormKind::Sup).lower == 1);
  CHECK(delta0(make_box(1, {{1, 2}}), NormKind::Sup).lower == 2);
  const BoundPair pair = delta0(make_points({SparseVec{}, e1}), NormKind::Sup);
  CHECK(pair.exact());
  CHECK(pair.lower == Scalar(1, 2));
  CHECK(delta0(make_points({SparseVec{}, e1}), NormKind::Euclid).lower == Scalar(1, 4));
}

TEST_CASE("delta upper bounds") {
  const DeltaResult t = delta_upper(triangle, 1, SearchStrategy::exhaustive(), NormKind::Sup);
  CHECK(t.bound.exact());
  CHECK(t.bound.lower == 0);
  REQUIRE(t.upper_witnesses.size() == 1);
  CHECK(t.upper_witnesses.front() == e1);

  for (auto s : {SearchStrategy::exhaustive(), SearchStrategy::greedy(), SearchStrategy::beam()}) {
    const DeltaResult b = delta_upper(make_box(1), 3, s, NormKind::Sup);
    CHECK(*b.bound.upper == 1);
  }

  std::vector<SparseVec> gens;
  for (Coord i = 1; i <= 4; ++i) {
    gens.push_back(unit_vector(i));
    gens.push_back(-unit_vector(i));
  }
  const SetExpr ball(AbsConvHull{gens});
  const DeltaResult l1 = delta_upper(ball, 1, SearchStrategy::exhaustive(gens), NormKind::Sum);
  CHECK(*l1.bound.upper == 0);
  REQUIRE(l1.upper_witnesses.size() == 1);
  CHECK(l1.upper_witnesses.front() == e1);
}

TEST_CASE("delta lower bounds") {
  for (std::size_t n : {1u, 2u, 7u}) {
    const DeltaResult b = delta_lower(make_box(1), n, NormKind::Sup);
    CHECK(b.bound.lower == 1);
    CHECK(b.lower_certificate.kind == CertificateKind::FreshCoordinate);
    const DeltaResult o = delta_lower(make_box(1, {{1, 2}}), n, NormKind::Sup);
    CHECK(o.bound.lower == 1);
  }
  CHECK(delta_lower(triangle, 2, NormKind::Sup).bound.lower == 0);
  const std::vector<SparseVec> challenge{e1, SparseVec{{2, Scalar(1, 2)}, {3, -1}}};
  const DeltaResult c = delta_lower(make_box(1), 2, NormKind::Sup, challenge);
  REQUIRE(c.lower_certificate.direction);
  for (const auto& w : challenge) {
    CHECK(contains(make_box(1), w + *c.lower_certificate.direction));
    CHECK(contains(make_box(1), w - *c.lower_certificate.direction));
  }
  CHECK(norm(*c.lower_certificate.direction, NormKind::Sup) >= c.bound.lower);
}

TEST_CASE("delta curves") {
  const auto box = delta_curve(make_box(1, {{1, 2}}), 3, SearchStrategy::greedy(), NormKind::Sup);
  REQUIRE(box.size() == 4);
  CHECK(box[0].bound.lower == 2);
  CHECK(*box[0].bound.upper == 2);
  for (std::size_t n = 1; n <= 3; ++n) {
    CHECK(box[n].bound.lower == 1);
    CHECK(*box[n].bound.upper == 1);
    CHECK(box[n].upper_witnesses == std::vector<SparseVec>{2 * e1});
  }
  const auto tri = delta_curve(triangle, 2, SearchStrategy::exhaustive(), NormKind::Sup);
  CHECK(tri[0].bound.lower == Scalar(1, 2));
  CHECK(*tri[1].bound.upper == 0);
  CHECK(*tri[2].bound.upper == 0);
  const auto unit = delta_curve(make_box(1), 5, SearchStrategy::beam(), NormKind::Sup);
  for (const auto& r : unit) {
    CHECK(r.bound.lower == 1);
    CHECK(*r.bound.upper == 1);
  }
}

TEST_CASE("delta infinity") {
  const DeltaInfinity box = delta_infinity_bounds(make_box(1), 3, SearchStrategy::greedy(), NormKind::Sup);
  CHECK(box.bound.lower == 1);
  CHECK(*box.bound.upper == 1);
  const DeltaInfinity over = delta_infinity_bounds(make_box(1, {{1, 2}}), 3, SearchStrategy::greedy(), NormKind::Sup);
  CHECK(over.bound.lower == 1);
  CHECK(*over.bound.upper == 1);
  const DeltaInfinity fin = delta_infinity_bounds(triangle, 2, SearchStrategy::exhaustive(), NormKind::Sup);
  CHECK(fin.bound.lower == 0);
  CHECK(*fin.bound.upper == 0);
}

TEST_CASE("exhaustive delta_N equals the brute-force enumerator") {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const auto pts = oracle::random_points(rng, 8, 4);
    const NormKind k = static_cast<NormKind>(trial % 3);
    for (std::size_t n = 0; n <= 3; ++n) {
      const DeltaResult r = delta_upper(make_points(pts), n, SearchStrategy::exhaustive(), k);
      CHECK(r.bound.exact());
      CHECK(*r.bound.upper == oracle::delta_n(pts, n, k));
    }
  }
}

TEST_CASE("sandwich and monotone uppers") {
  Rng rng(23);
  std::vector<SetExpr> sets{make_box(1), make_box(1, {{2, 3}}), triangle};
  for (int trial = 0; trial < 10; ++trial) sets.push_back(make_points(oracle::random_points(rng, 6, 3)));
  for (const auto& s : sets) {
    for (NormKind k : {NormKind::Sup}) {
      const auto curve = delta_curve(s, 3, SearchStrategy::greedy(), k);
      for (std::size_t n = 0; n < curve.size(); ++n) {
        CHECK(curve[n].bound.lower <= *curve[n].bound.upper);
        if (n > 0) CHECK(*curve[n].bound.upper <= *curve[n - 1].bound.upper);
      }
    }
  }
}

TEST_CASE("k-center radii") {
  const KCenterResult one = kcenter_radius({SparseVec{}, e1, 2 * e1}, 1, true, NormKind::Sup);
  CHECK(one.bound.exact());
  CHECK(one.bound.lower == 1);
  CHECK(one.centers == std::vector<SparseVec>{e1});
  const KCenterResult all = kcenter_radius({e1, e2}, 3, true, NormKind::Sup);
  CHECK(all.bound.lower == 0);
  const KCenterResult cross = kcenter_radius({e1, -e1, e2, -e2}, 2, true, NormKind::Sup);
  CHECK(cross.bound.lower == 1);
  const KCenterResult approx = kcenter_radius({e1, -e1, e2, -e2}, 2, false, NormKind::Sup);
  CHECK(approx.bound.lower <= 1);
  CHECK(*approx.bound.upper >= 1);
}

TEST_CASE("separation lower bounds") {
  const SeparationResult box = separation_alpha_lower(make_box(1), 5, NormKind::Sup);
  CHECK(box.bound.lower == 1);
  CHECK(box.points.size() == 5);
  for (std::size_t i = 0; i < box.points.size(); ++i) {
    for (std::size_t j = i + 1; j < box.points.size(); ++j) {
      CHECK(distance(box.points[i], box.points[j], NormKind::Sup) == 2);
    }
  }
  CHECK(separation_alpha_lower(make_points({SparseVec{}, e1}), 2, NormKind::Sup).bound.lower == Scalar(1, 2));
  CHECK(separation_alpha_lower(make_box(1), 1, NormKind::Sup).bound.lower == 0);
}

TEST_CASE("strategies parse") {
  CHECK(parse_strategy("beam") == StrategyKind::Beam);
  CHECK_THROWS_AS(parse_strategy("random"), Error);
}
