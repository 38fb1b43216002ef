#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "psfwb/ccra.hpp"
#include "psfwb/lrs.hpp"
#include "psfwb/poly.hpp"
#include "psfwb/rational.hpp"

namespace psfwb {

/// n -> sum over bases of terms[base](n) * base^n, valid for n >= valid_from.
struct ExpPoly {
  std::map<Rational, UniPoly> terms;
  std::size_t valid_from = 0;

  /// Drops zero polynomials.
  void normalize();
  std::string to_string() const;
  friend bool operator==(const ExpPoly& a, const ExpPoly& b) { return a.terms == b.terms; }
};

/// Exponential polynomial over F_p with bases in F_p^x.
struct FpExpPoly {
  std::uint64_t modulus = 2;
  std::map<std::uint64_t, FpPoly> terms;
  bool minimal_degree = false;

  void normalize();
  std::string to_string() const;
};

/// The characteristic polynomial does not split over Q.
struct IrrationalRoots {
  UniPoly polynomial;
};

std::variant<ExpPoly, IrrationalRoots> from_lrs(const Lrs& l);
/// Throws IrrationalRoots instead of returning the variant.
ExpPoly require_exppoly(const Lrs& l);

Rational eval(const ExpPoly& q, std::size_t n);
ExpPoly add(const ExpPoly& a, const ExpPoly& b);
ExpPoly mul(const ExpPoly& a, const ExpPoly& b);

/// S_k: the sum over all bases of the coefficient of x^k.
Rational coeff_sum(const ExpPoly& q, std::size_t k);
std::size_t max_degree(const ExpPoly& q);

/// Tree of generable building blocks: constants, n, alpha^n, geometric sums, sums and products.
class GenerableRecipe {
 public:
  enum class Kind { Constant, Linear, Exponential, GeometricSum, Sum, Product };

  static GenerableRecipe constant(const Rational& alpha);
  static GenerableRecipe linear();
  static GenerableRecipe exponential(const Rational& alpha);
  static GenerableRecipe geometric_sum(const Rational& alpha);
  static GenerableRecipe sum(std::vector<GenerableRecipe> children);
  static GenerableRecipe product(std::vector<GenerableRecipe> children);

  Kind kind() const { return kind_; }
  const Rational& alpha() const { return alpha_; }
  const std::vector<GenerableRecipe>& children() const { return children_; }

  /// Every alpha used by the recipe.
  std::set<Rational> constants() const;

 private:
  Kind kind_ = Kind::Constant;
  Rational alpha_;
  std::vector<GenerableRecipe> children_;
};

/// Throws InvalidArgument for geometric_sum(1), zero bases, or (when given)
/// constants outside `generators`.
ExpPoly realize(const GenerableRecipe& r, const std::optional<std::set<Rational>>& generators = std::nullopt);

struct CoeffSumVerdict {
  std::size_t k = 0;
  Rational value;
  bool pass = true;
  /// Smallest denominator prime not dividing any generator denominator.
  std::optional<BigInt> witness_prime;
  /// Every denominator prime not dividing a generator denominator, ascending.
  std::vector<BigInt> offending_primes;
};

/// Necessary condition for S_k in the semiring generated by `gens`: every
/// prime of den(S_k) divides the denominator of some generator. Checks the
/// given ks, or every k up to the maximal degree when ks is empty. Zero sums
/// pass vacuously and are omitted.
std::vector<CoeffSumVerdict> coeff_sums_in_semiring(const ExpPoly& q, const RGenerators& gens,
                                                    const std::vector<std::size_t>& ks = {});

FpScalar eval(const FpExpPoly& q, std::uint64_t n);
/// Reduces every polynomial modulo x^p - x.
FpExpPoly minimal_degree_reduce(const FpExpPoly& q);
FpScalar coeff_sum(const FpExpPoly& q, std::size_t k);
/// S_0 agreement and, for r = 1..p-1, agreement of sum_k S_{k(p-1)+r}.
bool charp_sum_invariants(const FpExpPoly& a, const FpExpPoly& b);
/// The value at n depends only on n mod p across the prefix.
bool is_pointwise_representable_mod_p(const std::vector<FpScalar>& prefix);

/// Image of a rational exponential polynomial in F_p; denominators and
/// bases must be prime to p.
FpExpPoly to_fp(const ExpPoly& q, std::uint64_t p);

}  // namespace psfwb
