#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "psfwb/rational.hpp"

namespace psfwb {

/// Immutable arithmetic tree over register variables x_0, x_1, ...
/// Nodes are shared, so copying an Expr is cheap.
class Expr {
 public:
  enum class Kind { Constant, Variable, Sum, Product };

  Expr();  // the constant 0
  static Expr constant(const Rational& value);
  static Expr variable(std::size_t index);
  static Expr sum(std::vector<Expr> children);
  static Expr product(std::vector<Expr> children);

  Kind kind() const;
  const Rational& value() const;  // Constant only
  std::size_t index() const;      // Variable only
  const std::vector<Expr>& children() const;

  Rational eval(const RationalVector& registers) const;

  /// Occurrence count of each variable index.
  std::map<std::size_t, std::size_t> occurrences() const;
  /// Largest variable index + 1, or 0 for a closed tree.
  std::size_t min_arity() const;

  /// Replaces x_i by images[i].
  Expr substitute(const std::vector<Expr>& images) const;
  /// Folds constants, flattens nested sums/products, drops neutral elements.
  Expr simplified() const;

  void collect_constants(std::set<Rational>& out) const;
  std::size_t size() const;

  bool is_constant(const Rational& value) const;

  /// Infix rendering; negative constants are parenthesised so the output
  /// parses back through the CCRA reader.
  std::string to_string(const std::vector<std::string>& names) const;
  std::string to_string() const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);

/// Sorted multiset of variable indices.
using Monomial = std::vector<std::size_t>;
using Polynomial = std::map<Monomial, Rational>;

/// Full expansion into canonical monomials with nonzero coefficients.
Polynomial expand(const Expr& t);

/// Expansion for copyless trees: keys are sets of variable indices.
/// Throws SquareDetected if a monomial would repeat a variable.
std::map<std::vector<std::size_t>, Rational> expand_squarefree(const Expr& t, std::size_t arity);

/// Polynomial equality of the denoted functions.
bool semantically_equal(const Expr& a, const Expr& b);

/// One tree per register; component i is the new value of register i.
struct PolyMap {
  std::size_t arity = 0;
  std::vector<Expr> components;

  PolyMap() = default;
  PolyMap(std::size_t arity, std::vector<Expr> components);

  static PolyMap identity(std::size_t arity);

  RationalVector apply(const RationalVector& registers) const;
};

struct CopylessVerdict {
  bool copyless = true;
  /// Component i reads no variable twice on its own.
  std::vector<bool> component_ok;
  /// Variables read more than once across the whole map.
  std::vector<std::size_t> repeated;
};

/// Joint check: every variable occurs at most once across all components.
CopylessVerdict is_copyless(const PolyMap& map);

/// result(v) = outer(inner(v)).
PolyMap compose_maps(const PolyMap& outer, const PolyMap& inner);

bool semantically_equal(const PolyMap& a, const PolyMap& b);

}  // namespace psfwb
