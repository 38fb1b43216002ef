#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "psfwb/rational.hpp"

namespace psfwb {

/// Dense univariate polynomial over Q, lowest degree first. The zero
/// polynomial is the empty coefficient list; otherwise the leading
/// coefficient is nonzero.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coefficients);

  static UniPoly constant(const Rational& c);
  static UniPoly monomial(const Rational& c, std::size_t degree);
  /// x - root
  static UniPoly linear_factor(const Rational& root);

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  /// Coefficient of x^k, zero beyond the degree.
  Rational coefficient(std::size_t k) const;
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& x) const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const Rational& c, const UniPoly& p);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Variable name is cosmetic, e.g. "x^2 - 2*x + 1".
  std::string to_string(const std::string& variable = "x") const;

 private:
  void normalize();
  std::vector<Rational> coeffs_;
};

/// (quotient, remainder) with deg(remainder) < deg(divisor).
std::pair<UniPoly, UniPoly> divrem(const UniPoly& dividend, const UniPoly& divisor);

/// Rational roots with multiplicities, ascending by root. Candidates come
/// from divisor pairs of the cleared trailing/leading coefficients; each
/// multiplicity is certified by repeated exact deflation.
std::vector<std::pair<Rational, int>> rational_roots(const UniPoly& p);

/// Multiplicity of `root` in p, i.e. the largest m with (x - root)^m | p.
int root_multiplicity(const UniPoly& p, const Rational& root);

/// Element of the prime field F_p.
class FpScalar {
 public:
  FpScalar(std::uint64_t value, std::uint64_t modulus);

  std::uint64_t residue() const { return residue_; }
  std::uint64_t modulus() const { return modulus_; }

  FpScalar inverse() const;
  FpScalar pow(std::uint64_t exponent) const;

  friend FpScalar operator+(const FpScalar& a, const FpScalar& b);
  friend FpScalar operator-(const FpScalar& a, const FpScalar& b);
  friend FpScalar operator*(const FpScalar& a, const FpScalar& b);
  friend bool operator==(const FpScalar& a, const FpScalar& b) {
    return a.modulus_ == b.modulus_ && a.residue_ == b.residue_;
  }

  /// Image of a rational whose denominator is prime to p.
  static FpScalar from_rational(const Rational& value, std::uint64_t modulus);

 private:
  struct Trusted {};
  // Modulus already validated by an operand.
  FpScalar(Trusted, std::uint64_t residue, std::uint64_t modulus)
      : residue_(residue), modulus_(modulus) {}

  std::uint64_t residue_;
  std::uint64_t modulus_;
};

bool is_prime(std::uint64_t n);

/// Dense polynomial over F_p, lowest degree first, zero = empty list.
class FpPoly {
 public:
  explicit FpPoly(std::uint64_t modulus);
  FpPoly(std::uint64_t modulus, std::vector<std::uint64_t> coefficients);

  std::uint64_t modulus() const { return modulus_; }
  bool is_zero() const { return coeffs_.empty(); }
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<std::uint64_t>& coefficients() const { return coeffs_; }
  std::uint64_t coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0; }

  FpScalar operator()(const FpScalar& x) const;

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
  friend bool operator==(const FpPoly& a, const FpPoly& b) {
    return a.modulus_ == b.modulus_ && a.coeffs_ == b.coeffs_;
  }

  std::string to_string(const std::string& variable = "x") const;

 private:
  void normalize();
  std::uint64_t modulus_;
  std::vector<std::uint64_t> coeffs_;
};

std::pair<FpPoly, FpPoly> divrem(const FpPoly& dividend, const FpPoly& divisor);

}  // namespace psfwb
