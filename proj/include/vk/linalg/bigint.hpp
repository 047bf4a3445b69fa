#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "vk/error.hpp"

namespace vk::linalg {

using BigInt = mpz_class;
using BigRat = mpq_class;  // canonicalized after every arithmetic op

inline BigInt big(std::int64_t v) {
  BigInt r;
  mpz_set_si(r.get_mpz_t(), static_cast<long>(v));
  return r;
}

/// Canonical rational num/den; mpq_class(num, den) alone does not reduce.
inline BigRat rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InputError("zero denominator");
  BigRat r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const BigInt& v) { return v.get_str(); }

/// "p/q" or "p"; denominators are normalized to be positive.
inline std::string to_string(const BigRat& v) { return v.get_str(); }

inline BigRat parse_rational(std::string_view text) {
  BigRat r;
  std::string s(text);
  if (s.empty() || r.set_str(s, 10) != 0) throw InputError("not a rational number: '" + s + "'");
  if (r.get_den() == 0) throw InputError("zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

inline bool fits_int64(const BigInt& v) {
  return v >= big(INT64_MIN) && v <= big(INT64_MAX);
}

inline std::int64_t to_int64(const BigInt& v) {
  if (!fits_int64(v)) throw InvariantViolation("integer does not fit in 64 bits: " + v.get_str());
  return static_cast<std::int64_t>(v.get_si());
}

/// Floor division and non-negative remainder for b != 0.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline bool divides(const BigInt& d, const BigInt& a) {
  if (d == 0) return a == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline BigInt mod_positive(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (r < 0) r += abs(m);
  return r;
}

}  // namespace vk::linalg
