// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "symdex/cli.hpp"
#include "symdex/extraction.hpp"
#include "symdex/replay.hpp"
#include "symdex/series.hpp"

using namespace symdex;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

Outcome fail(std::string detail) { return {false, std::move(detail)}; }

SeriesSpec unit_series(std::size_t h, bool geometric) {
  SeriesSpec s;
  s.norm = geometric ? NormKind::Sum : NormKind::Sup;
  s.label = geometric ? "geometric" : "canonical";
  for (Coord n = 1; n <= static_cast<Coord>(h); ++n) {
    s.terms.push_back(geometric ? unit_vector(n, Scalar(1, 1u << n)) : unit_vector(n));
  }
  return s;
}

std::vector<SparseVec> random_set(Rng& rng) { return oracle::random_points(rng, 8, 4); }

Outcome basis_margins() {
  const ExtractionTranscript t = extract_c0_sequence(make_box(1), Scalar(1, 10), 4, NormKind::Sup);
  if (t.steps.size() != 4) return fail("transcript has " + std::to_string(t.steps.size()) + " steps");
  if (!validate_transcript(t).ok) return fail("transcript does not validate");
  Rng rng(2024);
  std::optional<Scalar> min_lower, min_upper;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Scalar> lambda;
    for (int k = 0; k < 4; ++k) lambda.push_back(rng.rational(9, 7));
    const BasisMargins m = verify_basis_inequality(t, lambda);
    if (!min_lower || m.lower_margin < *min_lower) min_lower = m.lower_margin;
    if (!min_upper || m.upper_margin < *min_upper) min_upper = m.upper_margin;
  }
  const std::string detail = "min lower " + format_scalar(*min_lower) + ", min upper " + format_scalar(*min_upper);
  if (*min_lower < 0 || *min_upper != 0) return fail(detail);
  return {true, detail};
}

Outcome dichotomy() {
  const auto curve = delta_curve(make_box(1), 8, SearchStrategy::greedy(), NormKind::Sup);
  for (std::size_t n = 0; n < curve.size(); ++n) {
    if (curve[n].bound.lower != 1 || !curve[n].bound.upper || *curve[n].bound.upper != 1) {
      return fail("unit box delta_" + std::to_string(n) + " is not exactly 1");
    }
  }
  Rng rng(7001);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pts = random_set(rng);
    const NormKind k = static_cast<NormKind>(trial % 3);
    const DeltaResult r = delta_upper(make_points(pts), 1, SearchStrategy::exhaustive(), k);
    if (!r.bound.upper || *r.bound.upper != 0 || r.bound.lower != 0) {
      return fail("finite set " + std::to_string(trial) + " has nonzero delta_1");
    }
  }
  return {true, "unit box constant 1 for N <= 8; 200 finite sets vanish at N = 1"};
}

Outcome exhaustive_matches_brute_force() {
  Rng rng(7001);
  std::size_t compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto pts = random_set(rng);
    const NormKind k = static_cast<NormKind>(trial % 3);
    const SetExpr a = make_points(pts);
    for (std::size_t n = 0; n <= 2; ++n) {
      const DeltaResult r = delta_upper(a, n, SearchStrategy::exhaustive(), k);
      const Scalar want = oracle::delta_n(pts, n, k);
      if (!r.bound.upper || *r.bound.upper != want || r.bound.lower != want) {
        return fail("set " + std::to_string(trial) + " N = " + std::to_string(n) + " expected " + format_scalar(want));
      }
      ++compared;
    }
  }
  return {true, std::to_string(compared) + " values agree"};
}

Outcome refinement() {
  const SetExpr a = make_box(1, {{1, 2}});
  const RefineResult r = refine_almost_isometric(a, Scalar(1, 10), SearchStrategy::greedy(), 3, NormKind::Sup);
  if (r.status != SearchStatus::Found || r.delta0 != 1 || r.reference != 1 || r.ratio != 1) {
    return fail("delta0 " + format_scalar(r.delta0) + ", ratio " + format_scalar(r.ratio));
  }
  const ExtractionTranscript t = extract_c0_sequence(r.set, Scalar(1, 10), 3, NormKind::Sup);
  if (t.steps.size() != 3 || !validate_transcript(t).ok) return fail("extraction from the refined set failed");
  Rng rng(77);
  for (int p = 0; p < 100; ++p) {
    std::vector<Scalar> lambda;
    for (int k = 0; k < 3; ++k) lambda.push_back(rng.rational(5, 3));
    if (!verify_basis_inequality(t, lambda).ok()) return fail("basis inequality fails on the refined set");
  }
  return {true, "delta0 1 = reference, ratio 1, refined extraction within margins"};
}

Outcome tail_harness() {
  const SeriesSpec geo = unit_series(10, true);
  const TailBoundResult g = unconditional_tail_bound(geo, Scalar(1, 8), SearchStrategy::greedy());
  if (g.status != TailStatus::Found || g.m != 3 || !g.sound) return fail("geometric series did not give M = 3");
  const Scalar tail = brute_tail_sup(geo, 4, 10);
  if (tail != Scalar(1, 8) - Scalar(1, 1024) || tail > Scalar(1, 8)) return fail("tail " + format_scalar(tail));
  const SeriesSpec can = unit_series(10, false);
  const TailBoundResult c = unconditional_tail_bound(can, Scalar(1, 2), SearchStrategy::greedy());
  if (c.status != TailStatus::NotAchievable || !c.lower || c.lower->bound.lower < 1) {
    return fail("canonical series was not refuted");
  }
  const LowerCertificate& cert = c.lower->lower_certificate;
  if (!cert.direction) return fail("canonical refutation has no direction");
  const SetExpr a = sign_sum_set(can, SignMode::Subsets);
  for (const auto& w : cert.challenge) {
    if (!contains(a, w + *cert.direction) || !contains(a, w - *cert.direction)) {
      return fail("certificate direction does not replay");
    }
  }
  return {true, "geometric M = 3 with tail 127/1024; canonical refuted with lower bound " +
                    format_scalar(c.lower->bound.lower)};
}

Outcome eps_tree() {
  const EpsTree t = build_eps_tree(make_box(1), 1, 5, NormKind::Sup);
  if (t.nodes.size() != 31 || t.stalled_at) return fail("tree incomplete");
  std::size_t identities = 0;
  for (std::size_t k = 1; 2 * k < t.nodes.size(); ++k) {
    const SparseVec& l = t.nodes[2 * k - 1];
    const SparseVec& r = t.nodes[2 * k];
    if (2 * t.nodes[k - 1] != l + r) return fail("midpoint identity fails at node " + std::to_string(k));
    if (distance(l, r, NormKind::Sup) != 2) return fail("sibling distance differs from 2 at node " + std::to_string(k));
    ++identities;
  }
  if (identities != 15 || t.sep != 2) return fail("expected 15 identities with separation 2");
  return {true, "15 midpoint identities, sibling distance 2"};
}

Outcome extreme_points() {
  Rng rng(7001);
  std::size_t strong = 0, counterexamples = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto pts = random_set(rng);
    const SetExpr a = make_points(pts);
    const NormKind k = static_cast<NormKind>(trial % 3);
    bool tiny = false;
    for (const auto& x : oracle::dedup(pts)) {
      for (const Scalar eps : {Scalar(1, 8), Scalar(1, 2), Scalar(1)}) {
        if (!eps_strong_extreme(a, x, eps, k).strong) continue;
        ++strong;
        if (!eps_extreme(a, x, eps, k)) ++counterexamples;
      }
      tiny = tiny || eps_extreme(a, x, Scalar(1, 1000000), k);
    }
    if (!tiny) return fail("set " + std::to_string(trial) + " has no extreme point at scale 1/1000000");
  }
  const std::string detail = std::to_string(strong) + " strong points, " + std::to_string(counterexamples) +
                             " counterexamples";
  if (counterexamples != 0 || strong == 0) return fail(detail);
  return {true, detail};
}

Outcome separation() {
  Rng rng(4242);
  const SetExpr a = make_box(1);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng.below(4);
    std::vector<SparseVec> w;
    for (std::size_t j = 0; j < n; ++j) {
      SparseVec x;
      for (Coord i = 1; i <= 4; ++i) x.set(i, Scalar(rng.between(-4, 4), 4));
      w.push_back(x);
    }
    const SeparationResult alpha = separation_alpha_lower(symmetrize(a, w), 6, NormKind::Sup);
    const DeltaResult low = delta_lower(a, 2 * n, NormKind::Sup, w);
    if (alpha.bound.lower < low.bound.lower || alpha.bound.lower != 1 || low.bound.lower != 1) {
      return fail("witness list " + std::to_string(trial) + " breaks the comparison");
    }
  }
  return {true, "20 witness lists, both bounds exactly 1"};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  auto write = [](const std::string& name, const std::string& content) {
    std::ofstream(name) << content;
    return name;
  };
  const std::string box1 = write("acc_box1.json", R"({"type":"box","default_radius":"1"})");
  const std::string box12 = write("acc_box12.json", R"({"type":"box","default_radius":"1","overrides":{"1":"2"}})");
  Json geo;
  geo["norm"] = "sum";
  geo["terms"] = Json::array();
  for (int n = 1; n <= 10; ++n) geo["terms"].push_back({{std::to_string(n), "1/" + std::to_string(1 << n)}});
  const std::string series = write("acc_geo.json", geo.dump());
  const std::string ext =
      write("acc_ext.json", R"({"set":{"type":"finite","points":[{"1":"1"},{"2":"1"},{}]},"point":{"1":"1"}})");
  struct Case {
    std::string command, in;
  };
  const std::vector<Case> cases{{"delta", box12}, {"extract", box1}, {"refine", box12}, {"tree", box1},
                                {"series", series}, {"extreme", ext},  {"one_sided", box1}};
  for (const auto& c : cases) {
    Request r;
    r.command = c.command;
    r.in = c.in;
    r.seed = 11;
    if (c.command == "extreme") r.epsilon = "1/1000000";
    std::ostringstream out, err;
    r.out = "acc_" + c.command + "_1.json";
    if (run(r, out, err) != kExitOk) return fail(c.command + " failed: " + err.str());
    r.out = "acc_" + c.command + "_2.json";
    if (run(r, out, err) != kExitOk) return fail(c.command + " failed on rerun: " + err.str());
    const std::string first = slurp("acc_" + c.command + "_1.json");
    if (first.empty() || first != slurp(r.out)) return fail(c.command + " reports differ");
    const ReplayOutcome o = replay_report(Json::parse(first));
    if (o.failed != 0 || o.checked == 0) return fail(c.command + " report does not replay");
  }
  return {true, std::to_string(cases.size()) + " commands byte-identical and replayed"};
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Outcome()> check;
    long long limit_ms;  // 0: no limit
  };
  const std::vector<Criterion> criteria{
      {"basis inequality margins on extracted unit vectors", basis_margins, 5000},
      {"finite sets vanish while the unit box stays at 1", dichotomy, 60000},
      {"exhaustive delta_N matches brute force", exhaustive_matches_brute_force, 0},
      {"almost isometric refinement of the overridden box", refinement, 0},
      {"unconditional tail harness", tail_harness, 10000},
      {"epsilon tree of depth 5 in the unit box", eps_tree, 0},
      {"strong extreme points are extreme; extreme points exist", extreme_points, 0},
      {"separation measure dominates the delta lower bound", separation, 0},
      {"command reports are deterministic", determinism, 0},
  };
  int failures = 0;
  for (const auto& [name, check, limit_ms] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && limit_ms > 0 && ms > limit_ms) o = fail("over the " + std::to_string(limit_ms) + " ms limit");
    std::printf("%s  %s  (%s, %lld ms)\n", o.ok ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(),
                static_cast<long long>(ms));
    if (!o.ok) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
