#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "divfan/errors.hpp"

namespace divfan {

/// Exact rational scalar. mpq_class keeps values canonical as long as every
/// construction path ends in canonicalize(); the helpers below do that.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

/// "p/q" with ASCII minus, or "p" when the denominator is 1.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw Error(ErrorKind::MalformedInput, "empty rational");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/'))
      throw Error(ErrorKind::MalformedInput, "bad rational '" + s + "'");
  }
  Rational q;
  if (q.set_str(s, 10) != 0) throw Error(ErrorKind::MalformedInput, "bad rational '" + s + "'");
  if (q.get_den() == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

inline Rational pow_int(const Rational& base, long e) {
  if (e == 0) return 1;
  if (e < 0) {
    if (base == 0) throw Error(ErrorKind::DivisionByZero, "0 to negative power");
    Rational inv = 1 / base;
    return pow_int(inv, -e);
  }
  Rational r = 1, b = base;
  unsigned long k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

inline long to_long(const Integer& z) {
  if (!z.fits_slong_p()) throw Error(ErrorKind::SizeBudgetExceeded, "integer does not fit in long");
  return z.get_si();
}

inline long to_long(const Rational& q) {
  if (!is_integer(q)) throw Error(ErrorKind::NonIntegralPairing, "expected integer, got " + to_string(q));
  return to_long(q.get_num());
}

inline Integer lcm_of_denominators(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& q : v) l = lcm(l, q.get_den());
  return l;
}

inline Integer gcd_of_numerators(const std::vector<Rational>& v) {
  Integer g = 0;
  for (const auto& q : v) g = gcd(g, q.get_num());
  return g;
}

}  // namespace divfan
