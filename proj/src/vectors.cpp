#include "symdex/vectors.hpp"

#include <algorithm>

#include "symdex/error.hpp"

namespace symdex {

NormKind parse_norm_kind(std::string_view text) {
  if (text == "sup") return NormKind::Sup;
  if (text == "sum") return NormKind::Sum;
  if (text == "euclid") return NormKind::Euclid;
  throw Error(ErrorKind::InvalidInput, "unknown norm '" + std::string(text) + "' (sup|sum|euclid)");
}

const char* to_string(NormKind kind) {
  switch (kind) {
    case NormKind::Sup: return "sup";
    case NormKind::Sum: return "sum";
    case NormKind::Euclid: return "euclid";
  }
  return "sup";
}

SparseVec linear_combination(std::span<const std::pair<Scalar, SparseVec>> terms) {
  SparseVec out;
  for (const auto& [c, v] : terms) {
    if (c == 0) continue;
    for (const auto& [i, x] : v.entries()) out.add(i, c * x);
  }
  return out;
}

namespace {

template <class Map>
Scalar map_norm(const Map& entries, NormKind kind) {
  Scalar acc = 0;
  for (const auto& [i, v] : entries) {
    switch (kind) {
      case NormKind::Sup: {
        Scalar a = abs_value(v);
        if (acc < a) acc = a;
        break;
      }
      case NormKind::Sum: acc += abs_value(v); break;
      case NormKind::Euclid: acc += v * v; break;
    }
  }
  return acc;
}

}  // namespace

Scalar norm(const SparseVec& v, NormKind kind) { return map_norm(v.entries(), kind); }

Scalar distance(const SparseVec& a, const SparseVec& b, NormKind kind) { return norm(a - b, kind); }

Scalar dual_pair(const Functional& f, const SparseVec& v) {
  const auto& small = f.support_size() <= v.support_size() ? f.entries() : v.entries();
  const auto& large = f.support_size() <= v.support_size() ? v.entries() : f.entries();
  Scalar acc = 0;
  for (const auto& [i, x] : small) {
    auto it = large.find(i);
    if (it != large.end()) acc += x * it->second;
  }
  return acc;
}

Scalar dual_norm(const Functional& f, NormKind kind) {
  switch (kind) {
    case NormKind::Sup: return map_norm(f.entries(), NormKind::Sum);
    case NormKind::Sum: return map_norm(f.entries(), NormKind::Sup);
    case NormKind::Euclid: return map_norm(f.entries(), NormKind::Euclid);
  }
  return 0;
}

Functional as_functional(const SparseVec& v) {
  Functional f;
  for (const auto& [i, x] : v.entries()) f.set(i, x);
  return f;
}

SparseVec as_vector(const Functional& f) {
  SparseVec v;
  for (const auto& [i, x] : f.entries()) v.set(i, x);
  return v;
}

Scalar length_measure(const Scalar& length, NormKind kind) {
  return kind == NormKind::Euclid ? Scalar(length * length) : length;
}

Scalar scale_measure(const Scalar& measure, const Scalar& factor, NormKind kind) {
  return kind == NormKind::Euclid ? Scalar(measure * factor * factor) : Scalar(measure * factor);
}

Enclosure measure_length(const Scalar& measure, NormKind kind, unsigned bits) {
  if (kind != NormKind::Euclid) return {measure, measure};
  return sqrt_enclosure(measure, bits);
}

bool lex_less(const SparseVec& a, const SparseVec& b) {
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  auto ia = ea.begin();
  auto ib = eb.begin();
  for (; ia != ea.end() && ib != eb.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first;
  }
  if (ea.size() != eb.size()) return ea.size() < eb.size();
  for (ia = ea.begin(), ib = eb.begin(); ia != ea.end(); ++ia, ++ib) {
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return false;
}

bool leading_positive(const SparseVec& v) { return !v.is_zero() && v.entries().begin()->second > 0; }

bool better_direction(const SparseVec& a, const SparseVec& b, NormKind kind) {
  const Scalar na = norm(a, kind);
  const Scalar nb = norm(b, kind);
  if (na != nb) return na > nb;
  const bool pa = leading_positive(a);
  const bool pb = leading_positive(b);
  if (pa != pb) return pa;
  return lex_less(a, b);
}

Coord max_coord(std::span<const SparseVec> vectors) {
  Coord m = 0;
  for (const auto& v : vectors) m = std::max(m, v.max_coord());
  return m;
}

std::string debug_string(const SparseVec& v) {
  std::string out = "{";
  bool first = true;
  for (const auto& [i, x] : v.entries()) {
    if (!first) out += ", ";
    first = false;
    out += std::to_string(i) + ":" + format_scalar(x);
  }
  return out + "}";
}

}  // namespace symdex
