#include "symdex/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "symdex/error.hpp"
#include "symdex/replay.hpp"

namespace symdex {

namespace {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvariantViolation: return kExitInvariant;
    case ErrorKind::BudgetExceeded:
    case ErrorKind::DepthExceeded:
    case ErrorKind::Inconclusive: return kExitBudget;
    default: return kExitInvalidInput;
  }
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, "'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
    out << content;
    if (!out.flush()) throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error(ErrorKind::InvalidInput, "cannot move report into '" + path + "'");
  }
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct Context {
  const Request& request;
  Json input;
  EvalOptions opts;
  ReplayLog log;
  Json result;
  int code = kExitOk;
  std::string summary;
  std::optional<std::string> csv;

  Scalar epsilon(const char* fallback) const { return parse_scalar(request.epsilon.value_or(fallback)); }
  SearchStrategy strategy() const {
    SearchStrategy s;
    s.kind = parse_strategy(request.strategy);
    return s;
  }
};

void replay_certificate(Context& ctx, const SetExpr& set, const LowerCertificate& cert, NormKind kind,
                        const Scalar& lower) {
  if (!cert.direction) return;
  for (const auto& w : cert.challenge) {
    ctx.log.member(set, w + *cert.direction);
    ctx.log.member(set, w - *cert.direction);
  }
  ctx.log.norm(*cert.direction, kind, "ge", lower);
}

void cmd_delta(Context& ctx) {
  const SetExpr set = set_from_json(ctx.input);
  const NormKind kind = norm_from_json(ctx.input);
  const auto rows = delta_curve(set, ctx.request.n.value_or(3), ctx.strategy(), kind, ctx.opts);
  ctx.result["norm"] = to_string(kind);
  ctx.result["rows"] = Json::array();
  for (const auto& r : rows) {
    ctx.result["rows"].push_back(to_json(r));
    for (const auto& w : r.upper_witnesses) ctx.log.member(set, w);
    const SetExpr sym = symmetrize(set, r.upper_witnesses);
    for (const auto& p : r.bound.lower_witness) ctx.log.member(sym, p);
    replay_certificate(ctx, set, r.lower_certificate, kind, r.bound.lower);
  }
  if (ctx.request.format == "csv") {
    std::ostringstream csv;
    csv << "N,lower,upper,witnesses";
    if (ctx.request.decimal) csv << ",lower_decimal,upper_decimal";
    csv << "\n";
    for (const auto& r : rows) {
      const std::string upper = r.bound.upper ? format_scalar(*r.bound.upper) : "";
      csv << r.n << "," << format_scalar(r.bound.lower) << "," << upper << ","
          << csv_quote(to_json(r.upper_witnesses).dump());
      if (ctx.request.decimal) {
        csv << "," << format_decimal(r.bound.lower, *ctx.request.decimal) << ","
            << (r.bound.upper ? format_decimal(*r.bound.upper, *ctx.request.decimal) : "");
      }
      csv << "\n";
    }
    ctx.csv = csv.str();
  }
  const auto& last = rows.back();
  ctx.summary = "delta_" + std::to_string(last.n) + " in [" + format_scalar(last.bound.lower) + ", " +
                (last.bound.upper ? format_scalar(*last.bound.upper) : "inf") + "]";
}

void cmd_extract(Context& ctx) {
  const SetExpr set = set_from_json(ctx.input);
  const NormKind kind = norm_from_json(ctx.input);
  const ExtractionTranscript t = extract_c0_sequence(set, ctx.epsilon("1/10"), ctx.request.n.value_or(4), kind,
                                                     std::nullopt, ctx.opts);
  const TranscriptValidation v = validate_transcript(t, ctx.opts);
  ctx.result["norm"] = to_string(kind);
  ctx.result["transcript"] = to_json(t);
  Json checks = Json::array();
  for (const auto& c : v.checks) {
    checks.push_back({{"name", c.name}, {"step", c.step}, {"passed", c.passed}, {"level", c.level}});
  }
  ctx.result["validation"] = {{"ok", v.ok}, {"checks", checks}};

  Rng rng(ctx.opts.seed);
  std::optional<Scalar> min_lower, min_upper;
  bool margins_ok = true;
  const std::size_t trials = t.steps.empty() ? 0 : 32;
  for (std::size_t k = 0; k < trials; ++k) {
    std::vector<Scalar> coefficients;
    for (std::size_t i = 0; i < t.steps.size(); ++i) coefficients.push_back(rng.rational(10, 10));
    const BasisMargins m = verify_basis_inequality(t, coefficients);
    margins_ok = margins_ok && m.ok();
    if (!min_lower || m.lower_margin < *min_lower) min_lower = m.lower_margin;
    if (!min_upper || m.upper_margin < *min_upper) min_upper = m.upper_margin;
  }
  ctx.result["margins"] = {{"trials", trials},
                           {"min_lower", min_lower ? Json(format_scalar(*min_lower)) : Json(nullptr)},
                           {"min_upper", min_upper ? Json(format_scalar(*min_upper)) : Json(nullptr)},
                           {"ok", margins_ok}};

  ctx.log.member(set, t.x0);
  for (std::size_t n = 0; n < t.steps.size(); ++n) {
    const ExtractionStep& s = t.steps[n];
    ctx.log.member(s.set, s.x);
    ctx.log.dual_norm(s.f, kind, 1);
    for (std::size_t m = 0; m < n; ++m) ctx.log.pair(s.f, t.steps[m].x, 0);
  }
  if (!v.ok || !margins_ok) ctx.code = kExitInvariant;
  ctx.summary = "extracted " + std::to_string(t.steps.size()) + " vectors" +
                (t.stalled_at ? " (stalled at step " + std::to_string(*t.stalled_at) + ")" : std::string()) +
                (ctx.code == kExitOk ? "" : "; invariant violation");
}

void cmd_refine(Context& ctx) {
  const SetExpr set = set_from_json(ctx.input);
  const NormKind kind = norm_from_json(ctx.input);
  const RefineResult r =
      refine_almost_isometric(set, ctx.epsilon("1/10"), ctx.strategy(), ctx.request.n.value_or(3), kind, ctx.opts);
  const bool found = r.status == SearchStatus::Found;
  ctx.result["norm"] = to_string(kind);
  ctx.result["status"] = found ? "found" : "not_found";
  ctx.result["set"] = to_json(r.set);
  ctx.result["witnesses"] = to_json(r.witnesses);
  ctx.result["N"] = r.n;
  ctx.result["reference"] = format_scalar(r.reference);
  ctx.result["delta0"] = format_scalar(r.delta0);
  ctx.result["ratio"] = format_scalar(r.ratio);
  for (const auto& w : r.witnesses) ctx.log.member(set, w);
  ctx.summary = std::string(found ? "found" : "not found") + ", ratio " + format_scalar(r.ratio);
}

void cmd_tree(Context& ctx) {
  const SetExpr set = set_from_json(ctx.input);
  const NormKind kind = norm_from_json(ctx.input);
  const Scalar eps = ctx.epsilon("1");
  const EpsTree tree = build_eps_tree(set, eps, ctx.request.depth.value_or(3), kind, ctx.opts);
  ctx.result["norm"] = to_string(kind);
  ctx.result["tree"] = to_json(tree);
  for (const auto& x : tree.nodes) ctx.log.member(set, x);
  for (std::size_t k = 1; 2 * k < tree.nodes.size(); ++k) {
    const SparseVec& left = tree.nodes[2 * k - 1];
    const SparseVec& right = tree.nodes[2 * k];
    ctx.log.midpoint(tree.nodes[k - 1], left, right);
    ctx.log.norm(right - left, kind, "ge", length_measure(eps, kind));
  }
  ctx.summary = std::to_string(tree.nodes.size()) + " nodes, separation " + format_scalar(tree.sep);
}

void cmd_series(Context& ctx) {
  const SeriesSpec s = series_from_json(ctx.input);
  const SignMode mode =
      ctx.input.contains("mode") ? parse_sign_mode(ctx.input.at("mode").get<std::string>()) : SignMode::Subsets;
  const Scalar eps = ctx.epsilon("1/8");
  const SetExpr set = sign_sum_set(s, mode);
  const TailBoundResult r = unconditional_tail_bound(s, eps, ctx.strategy(), mode, ctx.opts);
  ctx.result["scope"] = "all statements hold within the horizon";
  ctx.result["horizon"] = s.horizon();
  ctx.result["norm"] = to_string(s.norm);
  ctx.result["mode"] = to_string(mode);
  ctx.result["wuc_bound"] = format_scalar(wuc_bound(s, ctx.opts));
  ctx.result["status"] = to_string(r.status);
  ctx.result["M"] = r.status == TailStatus::Found ? Json(r.m) : Json(nullptr);
  ctx.result["witnesses"] = to_json(r.witnesses);
  ctx.result["delta0"] = to_json(r.delta0);
  ctx.result["window_end"] = r.window_end;
  ctx.result["tail_sup"] = format_scalar(r.tail_sup);
  ctx.result["sound"] = r.sound;
  ctx.result["lower"] = r.lower ? to_json(*r.lower) : Json(nullptr);

  for (const auto& w : r.witnesses) ctx.log.member(set, w);
  if (r.status == TailStatus::Found) {
    SparseVec tail;
    for (std::size_t n = r.m + 1; n <= s.horizon(); ++n) tail = tail + s.terms[n - 1];
    ctx.log.member(symmetrize(set, r.witnesses), tail);
    ctx.log.norm(tail, s.norm, "le", length_measure(eps, s.norm));
    ctx.summary = "M = " + std::to_string(r.m) + ", tail sup " + format_scalar(r.tail_sup);
  } else {
    replay_certificate(ctx, set, r.lower->lower_certificate, s.norm, r.lower->bound.lower);
    ctx.summary = "not achievable; delta lower bound " + format_scalar(r.lower->bound.lower);
  }
}

void cmd_extreme(Context& ctx) {
  const SetExpr set = set_from_json(ctx.input.contains("set") ? ctx.input.at("set") : Json());
  const NormKind kind = norm_from_json(ctx.input);
  const SparseVec x = vector_from_json(ctx.input.contains("point") ? ctx.input.at("point") : Json());
  const Scalar eps = ctx.epsilon("1/10");
  if (!contains(set, x)) throw Error(ErrorKind::WitnessNotMember, "point is not in the set");
  ctx.result["norm"] = to_string(kind);
  ctx.result["diameter"] = to_json(diameter(symmetrize(set, {x}), kind, ctx.opts));
  try {
    ctx.result["extreme"] = eps_extreme(set, x, eps, kind, ctx.opts);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Inconclusive) throw;
    ctx.result["extreme"] = "inconclusive";
  }
  if (set.as<FinitePoints>()) {
    const StrongExtremeResult s = eps_strong_extreme(set, x, eps, kind);
    ctx.result["strong"] = {{"strong", s.strong}, {"delta", format_scalar(s.delta)}};
  } else {
    ctx.result["strong"] = nullptr;
  }
  ctx.log.member(set, x);
  ctx.summary = "extreme: " + ctx.result["extreme"].dump();
}

void cmd_one_sided(Context& ctx) {
  const SetExpr set = set_from_json(ctx.input);
  const NormKind kind = norm_from_json(ctx.input);
  const OneSidedResult r = one_sided_sequence(set, ctx.epsilon("1"), ctx.request.n.value_or(4), kind, ctx.opts);
  ctx.result["norm"] = to_string(kind);
  ctx.result["x0"] = to_json(r.x0);
  ctx.result["sequence"] = to_json(r.sequence);
  ctx.result["stalled_at"] = r.stalled_at ? Json(*r.stalled_at) : Json(nullptr);
  ctx.result["members_verified"] = r.members_verified;
  ctx.result["max_sign_sum"] = format_scalar(r.max_sign_sum);
  ctx.result["diameter_upper"] = r.diameter_upper ? Json(format_scalar(*r.diameter_upper)) : Json(nullptr);
  ctx.result["patterns_checked"] = r.patterns_checked;
  ctx.result["sampled"] = r.sampled;
  const std::size_t m = r.sequence.size();
  const std::uint64_t patterns = m >= 6 ? 64 : (std::uint64_t(1) << m);
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    SparseVec p = r.x0;
    for (std::size_t k = 0; k < m; ++k) {
      if ((mask >> k) & 1) p = p + r.sequence[k];
    }
    ctx.log.member(set, p);
  }
  const bool bounded = !r.diameter_upper || r.max_sign_sum <= *r.diameter_upper;
  if (!r.members_verified || !bounded) ctx.code = kExitInvariant;
  ctx.summary = std::to_string(m) + " one-sided steps, max sign sum " + format_scalar(r.max_sign_sum);
}

void cmd_oracle(Context& ctx) {
  const ReplayOutcome o = replay_report(ctx.input);
  ctx.result["checked"] = o.checked;
  ctx.result["failed"] = o.failed;
  ctx.result["failures"] = o.failures;
  if (o.failed > 0) ctx.code = kExitInvariant;
  ctx.summary = std::to_string(o.checked) + " checks, " + std::to_string(o.failed) + " failed";
}

Json echo(const Request& r, const Json& input) {
  Json params;
  params["n"] = r.n ? Json(*r.n) : Json(nullptr);
  params["epsilon"] = r.epsilon ? Json(*r.epsilon) : Json(nullptr);
  params["depth"] = r.depth ? Json(*r.depth) : Json(nullptr);
  params["strategy"] = r.strategy;
  params["seed"] = r.seed;
  params["budget"] = r.budget ? Json(*r.budget) : Json(nullptr);
  params["format"] = r.format;
  params["decimal"] = r.decimal ? Json(*r.decimal) : Json(nullptr);
  Json out;
  out["command"] = r.command;
  out["input"] = input;
  out["parameters"] = params;
  return out;
}

}  // namespace

int run(const Request& request, std::ostream& summary, std::ostream& errors) {
  try {
    if (request.format != "json" && request.format != "csv") {
      throw Error(ErrorKind::InvalidInput, "format must be json or csv");
    }
    if (request.format == "csv" && request.command != "delta") {
      throw Error(ErrorKind::InvalidInput, "csv output is available for the delta command only");
    }
    Context ctx{request, read_json(request.in), {}, {}, Json::object(), kExitOk, {}, {}};
    ctx.opts.seed = request.seed;
    if (request.budget) {
      ctx.opts.sign_budget = *request.budget;
      ctx.opts.enumeration_limit = static_cast<std::size_t>(*request.budget);
    }
    if (request.command == "delta") cmd_delta(ctx);
    else if (request.command == "extract") cmd_extract(ctx);
    else if (request.command == "refine") cmd_refine(ctx);
    else if (request.command == "tree") cmd_tree(ctx);
    else if (request.command == "series") cmd_series(ctx);
    else if (request.command == "extreme") cmd_extreme(ctx);
    else if (request.command == "one_sided") cmd_one_sided(ctx);
    else if (request.command == "oracle") cmd_oracle(ctx);
    else throw Error(ErrorKind::InvalidInput, "unknown command '" + request.command + "'");

    if (ctx.csv) {
      write_atomic(request.out, *ctx.csv);
    } else {
      Json report;
      report["request"] = echo(request, ctx.input);
      report["version"] = kVersion;
      report["result"] = std::move(ctx.result);
      report["sets"] = ctx.log.sets();
      report["replay"] = ctx.log.checks();
      write_atomic(request.out, report.dump(2) + "\n");
    }
    summary << request.command << ": " << ctx.summary << "\n";
    return ctx.code;
  } catch (const Error& e) {
    errors << "symdex: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const Json::exception& e) {
    errors << "symdex: invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  }
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Symmetrization indexes of bounded sets in sequence spaces"};
  Request request;
  app.add_option("command", request.command, "delta|extract|refine|tree|series|extreme|one_sided|oracle")
      ->required()
      ->check(CLI::IsMember({"delta", "extract", "refine", "tree", "series", "extreme", "one_sided", "oracle"}));
  app.add_option("--in", request.in, "input JSON document")->required();
  app.add_option("--out", request.out, "report path")->required();
  app.add_option("--format", request.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--n", request.n, "N, steps or N_max");
  app.add_option("--epsilon", request.epsilon, "rational p/q");
  app.add_option("--depth", request.depth, "tree depth");
  app.add_option("--strategy", request.strategy, "exhaustive|greedy|beam")
      ->check(CLI::IsMember({"exhaustive", "greedy", "beam"}));
  app.add_option("--seed", request.seed, "seed for sampled computations");
  app.add_option("--budget", request.budget, "enumeration budget");
  app.add_option("--decimal", request.decimal, "add rounded display columns (csv)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }
  return run(request, std::cout, std::cerr);
}

}  // namespace symdex
