#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psfwb/ccra.hpp"
#include "psfwb/expr.hpp"

namespace psfwb {

/// Boolean circuit over variables v_0, v_1, ... with node kinds var, not, and.
/// Other connectives are desugared on construction. Trees are not shared
/// across parents in the node count, so size() is the formula size.
class Circuit {
 public:
  enum class Kind { Var, Not, And };

  static Circuit var(std::size_t index);
  static Circuit negate(Circuit a);
  static Circuit conj(Circuit a, Circuit b);
  static Circuit disj(Circuit a, Circuit b);
  static Circuit implies(Circuit a, Circuit b);
  static Circuit iff(Circuit a, Circuit b);
  /// Left-nested conjunction of a nonempty list.
  static Circuit all_of(std::vector<Circuit> parts);

  Kind kind() const;
  std::size_t var_index() const;
  const std::vector<Circuit>& children() const;

  bool eval(const std::vector<bool>& assignment) const;
  std::size_t size() const;
  /// Largest variable index + 1.
  std::size_t var_bound() const;

  /// Prefix rendering with the given variable names, e.g. "and x1 not y1".
  std::string to_prefix(const std::vector<std::string>& names) const;

 private:
  struct Node;
  explicit Circuit(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

/// forall x_1 exists y_1 ... forall x_k exists y_k matrix. Variable x_i has
/// index i - 1 and y_i has index k + i - 1.
struct Qbf {
  std::size_t k = 0;
  Circuit matrix = Circuit::var(0);

  std::vector<std::string> variable_names() const;
};

/// Accepts the file form ("forall-exists k=<n>" then a prefix matrix over
/// and, or, not, implies, iff, x<i>, y<i>) or an infix prenex formula such as
/// "forall x exists y (x <-> y)" (Unicode quantifiers and connectives work
/// too). Pads with unused quantified variables to get strict alternation.
Qbf parse_and_normalize(std::string_view text);

/// The file form.
std::string render_qbf(const Qbf& q);

/// Polynomial of a circuit: not p -> 1 - p, and p q -> p * q. The leaf for
/// variable v uses the next free copy c and becomes x_{c * num_vars + v}.
struct PolynomialTranslation {
  Expr polynomial;
  /// copies_used[v]: how many copies of v the polynomial reads.
  std::vector<std::size_t> copies_used;
};

/// Throws CopyPoolExhausted when a variable needs more than `copies` copies.
PolynomialTranslation formula_to_polynomial(const Circuit& c, std::size_t num_vars, std::size_t copies);

/// start and end over (x, y); next over (x, y, x', y'). x_k is the least
/// significant counter bit.
struct CounterFormulas {
  Circuit start;
  Circuit next;
  Circuit end;
};

CounterFormulas counter_formulas(std::size_t k);

struct ReductionOutput {
  Ccra ccra;
  std::size_t ell = 0;
  /// Register blocks and their index ranges.
  std::string layout;
};

/// States p_0..p_2k, q_0..q_2k; registers z, z', z'', z_old (2 ell k each)
/// and s. Transitions missing from the construction go to p_0 and reset
/// every register to 0.
ReductionOutput qbf_to_ccra(const Qbf& q);

inline constexpr std::size_t kBruteForceVariableLimit = 20;

/// Recursive quantifier evaluation. Throws SizeGuard when 2k > 20.
bool brute_force_qbf(const Qbf& q);

struct QbfDecision {
  bool valid = false;
  /// A word on which the reduction automaton outputs a nonzero value.
  std::optional<Word> word;
  std::size_t candidates_evaluated = 0;
};

/// Evaluates the reduction automaton on the canonical words: 2^k blocks of
/// x-bits counting up, y-bits free, each block closed by #. Throws SizeGuard
/// when k > 2.
QbfDecision decide_via_ccra(const Qbf& q);
QbfDecision decide_via_ccra(const Qbf& q, const ReductionOutput& reduction);

}  // namespace psfwb
