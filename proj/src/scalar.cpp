#include "symdex/scalar.hpp"

#include <cctype>

#include "symdex/error.hpp"

namespace symdex {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::WitnessNotMember: return "WitnessNotMember";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::NoCertificate: return "NoCertificate";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw Error(ErrorKind::InvalidInput, "not a rational literal: '" + std::string(text) + "'");
  }
  std::string n(num);
  if (n[0] == '+') n.erase(0, 1);
  mpz_class numerator(n, 10);
  mpz_class denominator(std::string(den), 10);
  if (denominator == 0) {
    throw Error(ErrorKind::InvalidInput, "zero denominator in '" + std::string(text) + "'");
  }
  Scalar q(numerator, denominator);
  q.canonicalize();
  return q;
}

std::string format_scalar(const Scalar& value) { return value.get_str(10); }

std::string format_decimal(const Scalar& value, unsigned digits) {
  mpz_class scale = 1;
  for (unsigned i = 0; i < digits; ++i) scale *= 10;
  const bool negative = value < 0;
  const Scalar magnitude = abs_value(value);
  // Round half away from zero.
  mpz_class scaled = (magnitude.get_num() * scale * 2 + magnitude.get_den()) / (magnitude.get_den() * 2);
  std::string body = scaled.get_str(10);
  if (digits > 0) {
    if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
    body.insert(body.size() - digits, ".");
  }
  return (negative && scaled != 0 ? "-" : "") + body;
}

bool rational_sqrt(const Scalar& value, Scalar* root) {
  if (value < 0) return false;
  const mpz_class& num = value.get_num();
  const mpz_class& den = value.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return false;
  if (root != nullptr) {
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    *root = Scalar(rn, rd);
    root->canonicalize();
  }
  return true;
}

Enclosure sqrt_enclosure(const Scalar& square, unsigned bits) {
  if (square < 0) throw Error(ErrorKind::InvalidInput, "sqrt of a negative rational");
  Scalar exact;
  if (rational_sqrt(square, &exact)) return {exact, exact};
  // floor(sqrt(square) * 2^bits) = isqrt(floor(square * 4^bits)).
  mpz_class scale = 1;
  scale <<= bits;
  mpz_class scaled = (square.get_num() * scale * scale) / square.get_den();
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  Scalar lower(root, scale);
  Scalar upper(root + 1, scale);
  lower.canonicalize();
  upper.canonicalize();
  return {lower, upper};
}

}  // namespace symdex
