#include "psfwb/rational.hpp"

#include <cctype>

#include "psfwb/error.hpp"

namespace psfwb {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnknownLetter: return "UnknownLetter";
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::SquareDetected: return "SquareDetected";
    case ErrorCode::NotCopyless: return "NotCopyless";
    case ErrorCode::CycleOfLengthAtLeastTwo: return "CycleOfLengthAtLeastTwo";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::IrrationalRoots: return "IrrationalRoots";
    case ErrorCode::FactorisationCeiling: return "FactorisationCeiling";
    case ErrorCode::ModulusMismatch: return "ModulusMismatch";
    case ErrorCode::SizeGuard: return "SizeGuard";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::CopyPoolExhausted: return "CopyPoolExhausted";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw Error(ErrorCode::InvalidArgument, "malformed rational '" + std::string(text) + "'");
    }
    BigInt d(std::string(den), 10);
    if (d == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
    result = Rational(BigInt(std::string(num), 10), d);
    result.canonicalize();
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) {
      throw Error(ErrorCode::InvalidArgument, "malformed rational '" + std::string(text) + "'");
    }
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    BigInt w = whole.empty() ? BigInt(0) : BigInt(std::string(whole), 10);
    result = Rational(w * scale + BigInt(std::string(frac), 10), scale);
    result.canonicalize();
  } else {
    if (!all_digits(body)) {
      throw Error(ErrorCode::InvalidArgument, "malformed rational '" + std::string(text) + "'");
    }
    result = Rational(BigInt(std::string(body), 10));
  }
  return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& value) { return value.get_str(); }

std::string to_string(const BigInt& value) { return value.get_str(); }

Rational rational_pow(const Rational& base, unsigned long exponent) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

std::map<BigInt, long> factor_integer(const BigInt& value, unsigned long ceiling) {
  if (value <= 0) throw Error(ErrorCode::InvalidArgument, "factor_integer expects a positive integer");
  std::map<BigInt, long> out;
  BigInt n = value;
  auto take = [&](unsigned long p) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++out[BigInt(p)];
    }
  };
  take(2);
  for (unsigned long p = 3; p <= ceiling && n > 1; p += 2) {
    if (BigInt(p) * p > n) break;
    take(p);
  }
  if (n > 1) {
    BigInt bound = BigInt(ceiling) * ceiling;
    // n has no factor <= min(ceiling, sqrt(n)); it is prime if sqrt(n) was reached.
    BigInt root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    if (root > ceiling && n >= bound) {
      throw Error(ErrorCode::FactorisationCeiling,
                  "cofactor " + n.get_str() + " exceeds the trial-division ceiling " +
                      std::to_string(ceiling));
    }
    ++out[n];
  }
  return out;
}

PrimeFactorisation prime_support(const Rational& value, unsigned long ceiling) {
  if (value == 0) throw Error(ErrorCode::InvalidArgument, "prime_support of zero");
  PrimeFactorisation f;
  f.sign = sgn(value) < 0 ? -1 : 1;
  BigInt num = abs(value.get_num());
  if (num > 1) {
    for (auto& [p, e] : factor_integer(num, ceiling)) f.exponents[p] += e;
  }
  if (value.get_den() > 1) {
    for (auto& [p, e] : factor_integer(value.get_den(), ceiling)) f.exponents[p] -= e;
  }
  return f;
}

}  // namespace psfwb
