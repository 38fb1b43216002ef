#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace psfwb {

using BigInt = mpz_class;
/// GMP keeps every mpq_class result canonical: reduced, positive denominator.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Accepts "n", "n/d" and decimal "a.b"; rejects zero denominators.
Rational parse_rational(std::string_view text);

/// "n" when the denominator is 1, otherwise "n/d".
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

Rational rational_pow(const Rational& base, unsigned long exponent);

bool is_integer(const Rational& value);

BigInt factorial(unsigned long n);

/// Sign and prime exponents of a nonzero rational, r = sign * prod p^e.
struct PrimeFactorisation {
  int sign = 1;
  std::map<BigInt, long> exponents;
};

inline constexpr unsigned long kDefaultFactorCeiling = 1'000'000;

/// Trial division up to `ceiling`. A cofactor that cannot be certified prime
/// (>= ceiling^2) raises FactorisationCeiling instead of returning a guess.
PrimeFactorisation prime_support(const Rational& value,
                                 unsigned long ceiling = kDefaultFactorCeiling);

/// Same for a positive integer; returns prime -> exponent.
std::map<BigInt, long> factor_integer(const BigInt& value,
                                      unsigned long ceiling = kDefaultFactorCeiling);

}  // namespace psfwb
