#include "psfwb/poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "psfwb/error.hpp"

namespace psfwb {

UniPoly::UniPoly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  normalize();
}

UniPoly UniPoly::constant(const Rational& c) { return UniPoly({c}); }

UniPoly UniPoly::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return UniPoly(std::move(v));
}

UniPoly UniPoly::linear_factor(const Rational& root) { return UniPoly({-root, Rational(1)}); }

void UniPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational UniPoly::coefficient(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : Rational(0);
}

Rational UniPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
  return UniPoly(std::move(out));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + Rational(-1) * b; }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UniPoly(std::move(out));
}

UniPoly operator*(const Rational& c, const UniPoly& p) {
  std::vector<Rational> out = p.coeffs_;
  for (auto& x : out) x *= c;
  return UniPoly(std::move(out));
}

namespace {

// `split` maps a coefficient to (is_negative, magnitude).
template <typename Coeff>
std::string render_terms(const std::vector<Coeff>& coeffs, const std::string& var, auto fmt,
                         auto split) {
  if (coeffs.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const Coeff& c = coeffs[k];
    if (c == 0) continue;
    auto [negative, magnitude] = split(c);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool unit = magnitude == 1;
    if (k == 0) {
      os << fmt(magnitude);
      continue;
    }
    if (!unit) os << fmt(magnitude) << "*";
    os << var;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

}  // namespace

std::string UniPoly::to_string(const std::string& variable) const {
  return render_terms(
      coeffs_, variable, [](const Rational& r) { return r.get_str(); },
      [](const Rational& r) { return std::pair<bool, Rational>(sgn(r) < 0, abs(r)); });
}

std::pair<UniPoly, UniPoly> divrem(const UniPoly& dividend, const UniPoly& divisor) {
  if (divisor.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  std::vector<Rational> rem = dividend.coefficients();
  const auto& d = divisor.coefficients();
  if (rem.size() < d.size()) return {UniPoly(), dividend};
  std::vector<Rational> quot(rem.size() - d.size() + 1);
  for (std::size_t k = quot.size(); k-- > 0;) {
    Rational factor = rem[k + d.size() - 1] / d.back();
    quot[k] = factor;
    if (factor == 0) continue;
    for (std::size_t j = 0; j < d.size(); ++j) rem[k + j] -= factor * d[j];
  }
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

int root_multiplicity(const UniPoly& p, const Rational& root) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "root multiplicity of the zero polynomial");
  int m = 0;
  UniPoly current = p;
  const UniPoly factor = UniPoly::linear_factor(root);
  while (current.degree() >= 1) {
    auto [q, r] = divrem(current, factor);
    if (!r.is_zero()) break;
    current = std::move(q);
    ++m;
  }
  return m;
}

namespace {

std::vector<BigInt> divisors(const BigInt& n) {
  std::vector<BigInt> out{BigInt(1)};
  if (n == 1) return out;
  for (const auto& [p, e] : factor_integer(n)) {
    std::size_t current = out.size();
    BigInt power = 1;
    for (long k = 1; k <= e; ++k) {
      power *= p;
      for (std::size_t i = 0; i < current; ++i) out.push_back(out[i] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::pair<Rational, int>> rational_roots(const UniPoly& p) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "rational_roots of the zero polynomial");
  std::vector<std::pair<Rational, int>> roots;

  // Clear denominators so that the rational root theorem applies.
  BigInt lcm = 1;
  for (const auto& c : p.coefficients()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<BigInt> ints;
  for (const auto& c : p.coefficients()) ints.push_back(BigInt(c * lcm));

  std::size_t zeros = 0;
  while (ints[zeros] == 0) ++zeros;
  if (zeros > 0) roots.emplace_back(Rational(0), static_cast<int>(zeros));
  if (p.degree() == static_cast<long>(zeros)) return roots;

  UniPoly reduced(std::vector<Rational>(p.coefficients().begin() + zeros, p.coefficients().end()));
  BigInt trailing = abs(ints[zeros]);
  BigInt leading = abs(ints.back());

  std::set<Rational> candidates;
  const auto num_divs = divisors(trailing);
  const auto den_divs = divisors(leading);
  for (const auto& a : num_divs) {
    for (const auto& b : den_divs) {
      Rational r(a, b);
      r.canonicalize();
      candidates.insert(r);
      candidates.insert(-r);
    }
  }
  for (const auto& r : candidates) {
    if (reduced(r) != 0) continue;
    roots.emplace_back(r, root_multiplicity(reduced, r));
  }
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return roots;
}

// --- F_p ------------------------------------------------------------------

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

void require_same(std::uint64_t a, std::uint64_t b) {
  if (a != b) {
    throw Error(ErrorCode::ModulusMismatch,
                "F_p arithmetic between moduli " + std::to_string(a) + " and " + std::to_string(b));
  }
}

}  // namespace

FpScalar::FpScalar(std::uint64_t value, std::uint64_t modulus) : residue_(0), modulus_(modulus) {
  if (!is_prime(modulus)) {
    throw Error(ErrorCode::InvalidArgument, "modulus " + std::to_string(modulus) + " is not prime");
  }
  residue_ = value % modulus;
}

FpScalar FpScalar::pow(std::uint64_t exponent) const {
  std::uint64_t result = 1 % modulus_, base = residue_;
  while (exponent > 0) {
    if (exponent & 1) result = mulmod(result, base, modulus_);
    base = mulmod(base, base, modulus_);
    exponent >>= 1;
  }
  return FpScalar(Trusted{}, result, modulus_);
}

FpScalar FpScalar::inverse() const {
  if (residue_ == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero in F_p");
  return pow(modulus_ - 2);
}

FpScalar operator+(const FpScalar& a, const FpScalar& b) {
  require_same(a.modulus_, b.modulus_);
  return FpScalar(FpScalar::Trusted{}, (a.residue_ + b.residue_) % a.modulus_, a.modulus_);
}

FpScalar operator-(const FpScalar& a, const FpScalar& b) {
  require_same(a.modulus_, b.modulus_);
  return FpScalar(FpScalar::Trusted{}, (a.residue_ + a.modulus_ - b.residue_) % a.modulus_, a.modulus_);
}

FpScalar operator*(const FpScalar& a, const FpScalar& b) {
  require_same(a.modulus_, b.modulus_);
  return FpScalar(FpScalar::Trusted{}, mulmod(a.residue_, b.residue_, a.modulus_), a.modulus_);
}

FpScalar FpScalar::from_rational(const Rational& value, std::uint64_t modulus) {
  BigInt num = value.get_num() % BigInt(static_cast<unsigned long>(modulus));
  if (num < 0) num += static_cast<unsigned long>(modulus);
  BigInt den = value.get_den() % BigInt(static_cast<unsigned long>(modulus));
  if (den == 0) {
    throw Error(ErrorCode::DivisionByZero,
                "denominator of " + value.get_str() + " vanishes mod " + std::to_string(modulus));
  }
  FpScalar n(num.get_ui(), modulus), d(den.get_ui(), modulus);
  return n * d.inverse();
}

FpPoly::FpPoly(std::uint64_t modulus) : modulus_(modulus) {
  if (!is_prime(modulus)) {
    throw Error(ErrorCode::InvalidArgument, "modulus " + std::to_string(modulus) + " is not prime");
  }
}

FpPoly::FpPoly(std::uint64_t modulus, std::vector<std::uint64_t> coefficients)
    : FpPoly(modulus) {
  coeffs_ = std::move(coefficients);
  for (auto& c : coeffs_) c %= modulus_;
  normalize();
}

void FpPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

FpScalar FpPoly::operator()(const FpScalar& x) const {
  require_same(modulus_, x.modulus());
  FpScalar acc(0, modulus_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + FpScalar(*it, modulus_);
  return acc;
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  require_same(a.modulus_, b.modulus_);
  std::vector<std::uint64_t> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] = a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] = (out[i] + b.coeffs_[i]) % a.modulus_;
  return FpPoly(a.modulus_, std::move(out));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
  require_same(a.modulus_, b.modulus_);
  std::vector<std::uint64_t> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] = a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
    out[i] = (out[i] + a.modulus_ - b.coeffs_[i]) % a.modulus_;
  }
  return FpPoly(a.modulus_, std::move(out));
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  require_same(a.modulus_, b.modulus_);
  if (a.is_zero() || b.is_zero()) return FpPoly(a.modulus_);
  std::vector<std::uint64_t> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      out[i + j] = (out[i + j] + mulmod(a.coeffs_[i], b.coeffs_[j], a.modulus_)) % a.modulus_;
    }
  }
  return FpPoly(a.modulus_, std::move(out));
}

std::string FpPoly::to_string(const std::string& variable) const {
  return render_terms(
      coeffs_, variable, [](std::uint64_t r) { return std::to_string(r); },
      [](std::uint64_t r) { return std::pair<bool, std::uint64_t>(false, r); });
}

std::pair<FpPoly, FpPoly> divrem(const FpPoly& dividend, const FpPoly& divisor) {
  require_same(dividend.modulus(), divisor.modulus());
  if (divisor.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  const std::uint64_t p = dividend.modulus();
  std::vector<std::uint64_t> rem = dividend.coefficients();
  const auto& d = divisor.coefficients();
  if (rem.size() < d.size()) return {FpPoly(p), dividend};
  const std::uint64_t lead_inv = FpScalar(d.back(), p).inverse().residue();
  std::vector<std::uint64_t> quot(rem.size() - d.size() + 1, 0);
  for (std::size_t k = quot.size(); k-- > 0;) {
    std::uint64_t factor = mulmod(rem[k + d.size() - 1], lead_inv, p);
    quot[k] = factor;
    if (factor == 0) continue;
    for (std::size_t j = 0; j < d.size(); ++j) {
      rem[k + j] = (rem[k + j] + p - mulmod(factor, d[j], p)) % p;
    }
  }
  return {FpPoly(p, std::move(quot)), FpPoly(p, std::move(rem))};
}

}  // namespace psfwb
