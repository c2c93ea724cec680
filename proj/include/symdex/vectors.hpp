#pragma once

// Finitely supported rational sequences (the space c00) with the sup, sum
// and Euclidean norms, plus finitely supported dual functionals.
//
// The ambient spaces c0 and l_p are complete; c00 is a dense subspace and
// every set handled by this library is described by finitely many rational
// parameters, so the indexes computed here agree with those of the closures.

#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "symdex/scalar.hpp"

namespace symdex {

/// 1-based coordinate index.
using Coord = std::uint32_t;

enum class NormKind { Sup, Sum, Euclid };

NormKind parse_norm_kind(std::string_view text);
const char* to_string(NormKind kind);

namespace detail {
struct VectorTag;
struct FunctionalTag;
}  // namespace detail

/// Coordinate -> nonzero rational map. Zero entries are never stored.
template <class Tag>
class BasicSparse {
 public:
  using Map = std::map<Coord, Scalar>;

  BasicSparse() = default;
  BasicSparse(std::initializer_list<std::pair<const Coord, Scalar>> entries) {
    for (const auto& [i, v] : entries) set(i, v);
  }

  static BasicSparse unit(Coord i, const Scalar& value = 1) {
    BasicSparse out;
    out.set(i, value);
    return out;
  }

  Scalar operator[](Coord i) const {
    auto it = entries_.find(i);
    return it == entries_.end() ? Scalar(0) : it->second;
  }

  void set(Coord i, const Scalar& value) {
    if (value == 0) {
      entries_.erase(i);
    } else {
      entries_[i] = value;
    }
  }

  void add(Coord i, const Scalar& value) {
    if (value == 0) return;
    auto [it, inserted] = entries_.try_emplace(i, value);
    if (!inserted) {
      it->second += value;
      if (it->second == 0) entries_.erase(it);
    }
  }

  const Map& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }
  /// Largest coordinate in the support, 0 for the zero vector.
  Coord max_coord() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }

  friend bool operator==(const BasicSparse& a, const BasicSparse& b) { return a.entries_ == b.entries_; }

  friend BasicSparse operator+(BasicSparse a, const BasicSparse& b) {
    for (const auto& [i, v] : b.entries_) a.add(i, v);
    return a;
  }
  friend BasicSparse operator-(BasicSparse a, const BasicSparse& b) {
    for (const auto& [i, v] : b.entries_) a.add(i, -v);
    return a;
  }
  friend BasicSparse operator-(BasicSparse a) {
    for (auto& entry : a.entries_) entry.second = -entry.second;
    return a;
  }
  friend BasicSparse operator*(const Scalar& c, BasicSparse a) {
    if (c == 0) return {};
    for (auto& entry : a.entries_) entry.second *= c;
    return a;
  }

 private:
  Map entries_;
};

using SparseVec = BasicSparse<detail::VectorTag>;
using Functional = BasicSparse<detail::FunctionalTag>;

inline SparseVec unit_vector(Coord i, const Scalar& value = 1) { return SparseVec::unit(i, value); }
inline Functional coordinate_functional(Coord i, const Scalar& value = 1) { return Functional::unit(i, value); }

SparseVec linear_combination(std::span<const std::pair<Scalar, SparseVec>> terms);

/// l1 / l-infinity value, or the squared l2 value for NormKind::Euclid.
Scalar norm(const SparseVec& v, NormKind kind);
Scalar distance(const SparseVec& a, const SparseVec& b, NormKind kind);

Scalar dual_pair(const Functional& f, const SparseVec& v);

/// Norm of f in the dual of (c00, kind): l1 for Sup, l-infinity for Sum,
/// squared l2 for Euclid.
Scalar dual_norm(const Functional& f, NormKind kind);

Functional as_functional(const SparseVec& v);
SparseVec as_vector(const Functional& f);

// "Measures" are the values returned by norm(): lengths for Sup/Sum and
// squared lengths for Euclid. Comparisons between measures are exact.

/// Measure of a non-negative length.
Scalar length_measure(const Scalar& length, NormKind kind);
/// Measure of factor * (a vector of measure `measure`), factor >= 0.
Scalar scale_measure(const Scalar& measure, const Scalar& factor, NormKind kind);
/// Rational bracket of the length behind a measure.
Enclosure measure_length(const Scalar& measure, NormKind kind, unsigned bits = 64);

/// Total order: supports compared as sorted coordinate lists, then values.
bool lex_less(const SparseVec& a, const SparseVec& b);

struct LexLess {
  bool operator()(const SparseVec& a, const SparseVec& b) const { return lex_less(a, b); }
};

/// First nonzero coordinate is positive.
bool leading_positive(const SparseVec& v);

/// Deterministic preference among candidate directions: larger norm, then
/// leading-positive, then lex order.
bool better_direction(const SparseVec& a, const SparseVec& b, NormKind kind);

Coord max_coord(std::span<const SparseVec> vectors);

std::string debug_string(const SparseVec& v);

}  // namespace symdex
