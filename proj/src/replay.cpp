#include "symdex/replay.hpp"

#include <algorithm>

#include "symdex/error.hpp"

namespace symdex {

std::size_t ReplayLog::set_index(const SetExpr& set) {
  Json j = to_json(set);
  std::string key = j.dump();
  auto it = std::find(keys_.begin(), keys_.end(), key);
  if (it != keys_.end()) return static_cast<std::size_t>(it - keys_.begin());
  keys_.push_back(std::move(key));
  sets_.push_back(std::move(j));
  return keys_.size() - 1;
}

void ReplayLog::member(const SetExpr& set, const SparseVec& point, bool expect) {
  Json c;
  c["check"] = "member";
  c["set"] = set_index(set);
  c["point"] = to_json(point);
  c["expect"] = expect;
  checks_.push_back(std::move(c));
}

void ReplayLog::norm(const SparseVec& v, NormKind kind, const std::string& relation, const Scalar& value) {
  Json c;
  c["check"] = "norm";
  c["vector"] = to_json(v);
  c["norm"] = to_string(kind);
  c["relation"] = relation;
  c["value"] = format_scalar(value);
  checks_.push_back(std::move(c));
}

void ReplayLog::pair(const Functional& f, const SparseVec& v, const Scalar& value) {
  Json c;
  c["check"] = "pair";
  c["functional"] = to_json(f);
  c["vector"] = to_json(v);
  c["value"] = format_scalar(value);
  checks_.push_back(std::move(c));
}

void ReplayLog::dual_norm(const Functional& f, NormKind kind, const Scalar& value) {
  Json c;
  c["check"] = "dual_norm";
  c["functional"] = to_json(f);
  c["norm"] = to_string(kind);
  c["value"] = format_scalar(value);
  checks_.push_back(std::move(c));
}

void ReplayLog::midpoint(const SparseVec& parent, const SparseVec& left, const SparseVec& right) {
  Json c;
  c["check"] = "midpoint";
  c["parent"] = to_json(parent);
  c["left"] = to_json(left);
  c["right"] = to_json(right);
  checks_.push_back(std::move(c));
}

namespace {

bool compare(const Scalar& lhs, const std::string& relation, const Scalar& rhs) {
  if (relation == "ge") return lhs >= rhs;
  if (relation == "le") return lhs <= rhs;
  if (relation == "eq") return lhs == rhs;
  throw Error(ErrorKind::InvalidInput, "unknown relation '" + relation + "'");
}

}  // namespace

ReplayOutcome replay_report(const Json& report) {
  if (!report.is_object() || !report.contains("replay") || !report.contains("sets")) {
    throw Error(ErrorKind::InvalidInput, "document has no replay section");
  }
  std::vector<SetExpr> sets;
  for (const auto& s : report.at("sets")) sets.push_back(set_from_json(s));
  ReplayOutcome out;
  std::size_t index = 0;
  for (const auto& c : report.at("replay")) {
    const std::string kind = c.at("check").get<std::string>();
    bool ok = false;
    if (kind == "member") {
      const std::size_t k = c.at("set").get<std::size_t>();
      if (k >= sets.size()) throw Error(ErrorKind::InvalidInput, "replay set index out of range");
      ok = contains(sets[k], vector_from_json(c.at("point"))) == c.at("expect").get<bool>();
    } else if (kind == "norm") {
      const Scalar n = symdex::norm(vector_from_json(c.at("vector")), parse_norm_kind(c.at("norm").get<std::string>()));
      ok = compare(n, c.at("relation").get<std::string>(), scalar_from_json(c.at("value")));
    } else if (kind == "pair") {
      ok = dual_pair(functional_from_json(c.at("functional")), vector_from_json(c.at("vector"))) ==
           scalar_from_json(c.at("value"));
    } else if (kind == "dual_norm") {
      ok = symdex::dual_norm(functional_from_json(c.at("functional")), parse_norm_kind(c.at("norm").get<std::string>())) ==
           scalar_from_json(c.at("value"));
    } else if (kind == "midpoint") {
      const SparseVec sum = vector_from_json(c.at("left")) + vector_from_json(c.at("right"));
      ok = 2 * vector_from_json(c.at("parent")) == sum;
    } else {
      throw Error(ErrorKind::InvalidInput, "unknown replay check '" + kind + "'");
    }
    ++out.checked;
    if (!ok) {
      ++out.failed;
      out.failures.push_back("check " + std::to_string(index) + " (" + kind + ")");
    }
    ++index;
  }
  return out;
}

}  // namespace symdex
