#include "symdex/json_io.hpp"

#include <charconv>

#include "symdex/error.hpp"

namespace symdex {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

Coord parse_coord(const std::string& key) {
  Coord c = 0;
  auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), c);
  if (ec != std::errc() || ptr != key.data() + key.size() || c == 0) bad("coordinate '" + key + "' is not a positive integer");
  return c;
}

template <class Sparse>
Json sparse_to_json(const Sparse& v) {
  Json out = Json::object();
  for (const auto& [i, x] : v.entries()) out[std::to_string(i)] = format_scalar(x);
  return out;
}

template <class Sparse>
Sparse sparse_from_json(const Json& j) {
  if (!j.is_object()) bad("vector must be a JSON object");
  Sparse out;
  for (const auto& [key, value] : j.items()) out.set(parse_coord(key), scalar_from_json(value));
  return out;
}

std::size_t size_from_json(const Json& j) {
  if (!j.is_number_unsigned()) bad("expected a non-negative integer");
  return j.get<std::size_t>();
}

}  // namespace

Json to_json(const Scalar& value) { return format_scalar(value); }
Json to_json(const SparseVec& v) { return sparse_to_json(v); }
Json to_json(const Functional& f) { return sparse_to_json(f); }

Json to_json(const std::vector<SparseVec>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

Json to_json(const SeriesSpec& s) {
  Json out;
  out["norm"] = to_string(s.norm);
  out["terms"] = to_json(s.terms);
  out["label"] = s.label;
  return out;
}

Json to_json(const SetExpr& set) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        Json out;
        if constexpr (std::is_same_v<T, FinitePoints>) {
          out["type"] = "finite";
          out["points"] = to_json(v.points);
        } else if constexpr (std::is_same_v<T, Box>) {
          out["type"] = "box";
          out["default_radius"] = format_scalar(v.default_radius);
          Json o = Json::object();
          for (const auto& [i, r] : v.overrides) o[std::to_string(i)] = format_scalar(r);
          out["overrides"] = o;
        } else if constexpr (std::is_same_v<T, SignSums>) {
          out["type"] = "sign_sums";
          out["mode"] = to_string(v.mode);
          out["horizon"] = v.horizon;
          out["series"] = to_json(v.series);
        } else if constexpr (std::is_same_v<T, Translate>) {
          out["type"] = "translate";
          out["base"] = to_json(v.base);
          out["by"] = to_json(v.by);
        } else if constexpr (std::is_same_v<T, Negate>) {
          out["type"] = "negate";
          out["base"] = to_json(v.base);
        } else if constexpr (std::is_same_v<T, Intersect>) {
          out["type"] = "intersect";
          out["parts"] = Json::array();
          for (const auto& p : v.parts) out["parts"].push_back(to_json(p));
        } else if constexpr (std::is_same_v<T, Symmetrized>) {
          out["type"] = "symmetrized";
          out["base"] = to_json(v.base);
          out["witnesses"] = to_json(v.witnesses);
        } else {
          out["type"] = "abs_conv_hull";
          out["points"] = to_json(v.points);
        }
        return out;
      },
      set.node());
}

Json to_json(const BoundPair& b) {
  Json out;
  out["lower"] = format_scalar(b.lower);
  out["upper"] = b.upper ? Json(format_scalar(*b.upper)) : Json(nullptr);
  out["exact"] = b.exact();
  out["lower_witness"] = to_json(b.lower_witness);
  out["upper_witness"] = to_json(b.upper_witness);
  return out;
}

Json to_json(const LowerCertificate& c) {
  Json out;
  out["kind"] = to_string(c.kind);
  out["challenge"] = to_json(c.challenge);
  out["direction"] = c.direction ? to_json(*c.direction) : Json(nullptr);
  out["usable_until"] = c.usable_until;
  return out;
}

Json to_json(const DeltaResult& r) {
  Json out;
  out["N"] = r.n;
  out["bound"] = to_json(r.bound);
  out["upper_witnesses"] = to_json(r.upper_witnesses);
  out["lower_certificate"] = to_json(r.lower_certificate);
  return out;
}

Json to_json(const ExtractionTranscript& t) {
  Json out;
  out["epsilon"] = format_scalar(t.epsilon);
  out["eta"] = format_scalar(t.eta);
  out["x0"] = to_json(t.x0);
  out["steps"] = Json::array();
  for (const auto& s : t.steps) {
    Json step;
    step["x"] = to_json(s.x);
    step["f"] = to_json(s.f);
    step["A"] = to_json(s.set);
    step["delta_lower"] = format_scalar(s.delta_lower);
    step["sup_upper"] = format_scalar(s.sup_upper);
    step["used_argmax"] = s.used_argmax;
    out["steps"].push_back(std::move(step));
  }
  out["delta_lower"] = format_scalar(t.delta_lower_at_2n);
  out["delta0_upper"] = format_scalar(t.delta0_upper);
  out["stalled_at"] = t.stalled_at ? Json(*t.stalled_at) : Json(nullptr);
  out["stall_reason"] = t.stall_reason;
  return out;
}

Json to_json(const EpsTree& tree) {
  Json out;
  out["depth"] = tree.depth;
  out["epsilon"] = format_scalar(tree.epsilon);
  out["nodes"] = to_json(tree.nodes);
  out["sep"] = format_scalar(tree.sep);
  out["stalled_at"] = tree.stalled_at ? Json(*tree.stalled_at) : Json(nullptr);
  return out;
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(std::to_string(j.get<std::int64_t>()));
  bad("scalar must be a \"p/q\" string or an integer");
}

SparseVec vector_from_json(const Json& j) { return sparse_from_json<SparseVec>(j); }
Functional functional_from_json(const Json& j) { return sparse_from_json<Functional>(j); }

std::vector<SparseVec> vectors_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an array of vectors");
  std::vector<SparseVec> out;
  for (const auto& v : j) out.push_back(vector_from_json(v));
  return out;
}

SeriesSpec series_from_json(const Json& j) {
  SeriesSpec s;
  s.norm = norm_from_json(j);
  s.terms = vectors_from_json(field(j, "terms"));
  if (j.contains("label")) s.label = j.at("label").get<std::string>();
  if (s.terms.empty()) bad("series needs at least one term");
  return s;
}

SetExpr set_from_json(const Json& j) {
  const Json& type_field = field(j, "type");
  if (!type_field.is_string()) bad("set type must be a string");
  const std::string type = type_field.get<std::string>();
  if (type == "box") {
    std::map<Coord, Scalar> overrides;
    if (j.contains("overrides")) {
      for (const auto& [key, value] : j.at("overrides").items()) overrides[parse_coord(key)] = scalar_from_json(value);
    }
    return make_box(scalar_from_json(field(j, "default_radius")), std::move(overrides));
  }
  if (type == "finite") return make_points(vectors_from_json(field(j, "points")));
  if (type == "sign_sums") {
    const SignMode mode = j.contains("mode") ? parse_sign_mode(j.at("mode").get<std::string>()) : SignMode::Subsets;
    const std::size_t horizon = j.contains("horizon") ? size_from_json(j.at("horizon")) : 0;
    return make_sign_sums(series_from_json(field(j, "series")), mode, horizon);
  }
  if (type == "translate") return SetExpr(Translate{set_from_json(field(j, "base")), vector_from_json(field(j, "by"))});
  if (type == "negate") return SetExpr(Negate{set_from_json(field(j, "base"))});
  if (type == "intersect") {
    Intersect in;
    const Json& parts = field(j, "parts");
    if (!parts.is_array() || parts.empty()) bad("intersect needs a non-empty parts array");
    for (const auto& p : parts) in.parts.push_back(set_from_json(p));
    return SetExpr(std::move(in));
  }
  if (type == "symmetrized") {
    return symmetrize(set_from_json(field(j, "base")), vectors_from_json(field(j, "witnesses")));
  }
  if (type == "abs_conv_hull") return SetExpr(AbsConvHull{vectors_from_json(field(j, "points"))});
  bad("unknown set type '" + type + "'");
}

NormKind norm_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("norm")) return NormKind::Sup;
  if (!j.at("norm").is_string()) bad("norm must be a string");
  return parse_norm_kind(j.at("norm").get<std::string>());
}

}  // namespace symdex
