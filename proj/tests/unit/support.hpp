#pragma once

#include <gmpxx.h>

#include <string>

#include "df/arb_real.hpp"

namespace testsupport {

// Exact rational value of an ArbReal.
inline mpq_class exact(const df::ArbReal& x) {
  mpq_class q(x.mantissa());
  if (x.exponent() >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(x.exponent()));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-x.exponent()));
  }
  return x.sign() < 0 ? mpq_class(-q) : q;
}

inline mpq_class ulp(const df::ArbReal& x) {
  mpq_class q(1);
  if (x.ulp_exponent() >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(x.ulp_exponent()));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-x.ulp_exponent()));
  }
  return q;
}

// "3.14159..." as an exact rational.
inline mpq_class decimal(const std::string& s) {
  const auto dot = s.find('.');
  std::string digits = s;
  std::size_t frac = 0;
  if (dot != std::string::npos) {
    digits.erase(dot, 1);
    frac = s.size() - dot - 1;
  }
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
  mpq_class q(mpz_class(digits, 10), den);
  q.canonicalize();
  return q;
}

inline mpq_class pow10q(long k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
  return k < 0 ? mpq_class(1, p) : mpq_class(p);
}

// |x - ref| < 10^-digits
inline bool agrees(const df::ArbReal& x, const std::string& ref, long digits) {
  return abs(exact(x) - decimal(ref)) < pow10q(-digits);
}

}  // namespace testsupport
