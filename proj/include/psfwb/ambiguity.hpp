#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "psfwb/matrix.hpp"
#include "psfwb/rational.hpp"
#include "psfwb/wa.hpp"

namespace psfwb {

/// Symbolic algebraic number lambda with lambda^index = base. Normalised so
/// that no exact rational root of base of an order dividing index remains.
class RootOfRational {
 public:
  RootOfRational(const Rational& base, const BigInt& index);

  const Rational& base() const { return base_; }
  const BigInt& index() const { return index_; }
  /// The rational value when index is 1.
  std::optional<Rational> rational_value() const;
  std::string to_string() const;

  friend bool operator==(const RootOfRational&, const RootOfRational&) = default;

 private:
  Rational base_;
  BigInt index_;
};

struct TriangularizationResult {
  Permutation permutation;
  BigInt exponent;
  /// P * M(w)^exponent * P^-1, upper triangular.
  RatMatrix matrix;
  RationalVector diagonal;
};

/// No state of trim(A) admits two distinct runs to itself on one word.
bool is_polynomially_ambiguous(const WeightedAutomaton& a);

/// The smallest exponent the triangularization needs: lcm of the lengths of
/// the cycles in the transition graph of M(w). Always divides dim!.
BigInt cycle_lcm_exponent(const WeightedAutomaton& a, const Word& w);

/// Orders the states topologically for the graph of M(w)^N, N = dim! unless
/// `exponent` is given. Throws CycleOfLengthAtLeastTwo when that graph has a
/// cycle through two distinct states.
TriangularizationResult triangularize_power(const WeightedAutomaton& a, const Word& w,
                                            std::optional<BigInt> exponent = std::nullopt);

/// Nonzero diagonal entries of the triangularization of trim(A) as roots of
/// index N.
std::vector<RootOfRational> psf_characteristic_roots(const WeightedAutomaton& a, const Word& w,
                                                     std::optional<BigInt> exponent = std::nullopt);

/// x lies in the subgroup of Q^x generated by `generators`.
bool group_membership(const Rational& x, const std::vector<Rational>& generators,
                      unsigned long ceiling = kDefaultFactorCeiling);

/// Union of the prime supports of the values.
std::set<BigInt> prime_support_report(const std::vector<Rational>& values,
                                      unsigned long ceiling = kDefaultFactorCeiling);

}  // namespace psfwb
