#pragma once

// Exact rational arithmetic on top of GMP's mpq_class. Values are kept in
// canonical (reduced, positive denominator) form at every public boundary.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace paradisc {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Serializes as "num/den", always with an explicit denominator ("1/1", "0/1").
inline std::string to_string(const Rational& r) {
  Rational c(r);
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

/// Parses "num/den" or a bare integer. Rejects anything else, including
/// zero denominators and embedded whitespace.
inline Rational parse_rational(std::string_view text) {
  auto valid_integer = [](std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t k = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) k = 1;
    if (k == s.size()) return false;
    for (; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num, true) || !valid_integer(den, false))
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  std::string num_str(num);
  if (num_str[0] == '+') num_str.erase(0, 1);
  mpz_class n(num_str, 10), d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("rational with zero denominator: '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// Exact square root when both numerator and denominator are perfect squares.
inline std::optional<Rational> exact_sqrt(const Rational& r) {
  if (sgn(r) < 0) return std::nullopt;
  const mpz_class& num = r.get_num();
  const mpz_class& den = r.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0)
    return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  Rational out(sn, sd);
  out.canonicalize();
  return out;
}

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace paradisc
