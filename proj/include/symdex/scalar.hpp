#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace symdex {

/// Exact rational. GMP keeps every value in lowest terms with a positive
/// denominator after each arithmetic operation.
using Scalar = mpq_class;

Scalar parse_scalar(std::string_view text);
std::string format_scalar(const Scalar& value);

/// Rounded display string with `digits` decimals. Non-authoritative.
std::string format_decimal(const Scalar& value, unsigned digits);

inline Scalar abs_value(const Scalar& value) { return value < 0 ? Scalar(-value) : value; }

inline const Scalar& max_of(const Scalar& a, const Scalar& b) { return a < b ? b : a; }
inline const Scalar& min_of(const Scalar& a, const Scalar& b) { return b < a ? b : a; }

struct Enclosure {
  Scalar lower;
  Scalar upper;
};

/// Rational bracket of sqrt(square) of width at most 2^-bits. Collapses to
/// the exact root when `square` is the square of a rational.
Enclosure sqrt_enclosure(const Scalar& square, unsigned bits = 64);

/// True when `value` is the square of a rational; stores the root.
bool rational_sqrt(const Scalar& value, Scalar* root);

/// Seeded generator whose output does not depend on the standard library's
/// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : engine_() % bound; }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  /// p/q with |p| <= num_bound and 1 <= q <= den_bound.
  Scalar rational(std::int64_t num_bound, std::int64_t den_bound) {
    Scalar q(between(-num_bound, num_bound), between(1, den_bound));
    q.canonicalize();
    return q;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace symdex
