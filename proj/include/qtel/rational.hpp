#ifndef QTEL_RATIONAL_HPP
#define QTEL_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

#include "qtel/errors.hpp"

namespace qtel {

/// Arbitrary-precision rational. mpq_class keeps the fraction reduced with a
/// positive denominator, which is exactly the invariant we need.
using Rat = mpq_class;

inline Rat rat_of(long num, long den = 1) {
  if (den == 0) fail(ErrorKind::DivisionByZero, "rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat_from_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0)
    fail(ErrorKind::SyntaxError, "bad rational literal '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline Rat rat_pow(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  if (base == 0) {
    if (e < 0) fail(ErrorKind::DivisionByZero, "0 raised to negative power");
    return Rat(0);
  }
  Rat b = e < 0 ? Rat(1) / base : base;
  unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  Rat acc(1);
  while (n) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  return acc;
}

/// gcd of two rationals in the lattice sense: gcd(a/b, c/d) = gcd(ad, cb)/(bd).
inline Rat rat_gcd(const Rat& a, const Rat& b) {
  mpz_class num, den;
  mpz_gcd(num.get_mpz_t(), mpz_class(a.get_num() * b.get_den()).get_mpz_t(),
          mpz_class(b.get_num() * a.get_den()).get_mpz_t());
  den = a.get_den() * b.get_den();
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Exact n-th root of a rational if one exists.
inline std::optional<Rat> rat_root(const Rat& r, unsigned n) {
  if (n == 0) return std::nullopt;
  if (n == 1) return r;
  if (r < 0 && n % 2 == 0) return std::nullopt;
  mpz_class num = abs(mpz_class(r.get_num()));
  mpz_class den(r.get_den());
  mpz_class rn, rd;
  int exact_n = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n);
  int exact_d = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n);
  if (!exact_n || !exact_d) return std::nullopt;
  Rat out(rn, rd);
  out.canonicalize();
  if (r < 0) out = -out;
  return out;
}

inline double rat_to_double(const Rat& r) { return r.get_d(); }

}  // namespace qtel

#endif
