#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "psfwb/expr.hpp"
#include "psfwb/rational.hpp"
#include "psfwb/wa.hpp"

namespace psfwb {

struct CcraTransition {
  std::size_t target = 0;
  PolyMap update;
};

/// Deterministic copyless cost register automaton (Q, q0, d, Sigma, delta, mu, nu).
/// Copylessness of every update and output is checked at construction.
class Ccra {
 public:
  Ccra(std::vector<std::string> states, std::size_t initial_state,
       std::vector<std::string> registers, Alphabet alphabet,
       std::vector<std::vector<CcraTransition>> delta, RationalVector mu, std::vector<Expr> nu);

  std::size_t state_count() const { return states_.size(); }
  std::size_t register_count() const { return registers_.size(); }
  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& registers() const { return registers_; }
  std::size_t initial_state() const { return initial_; }
  const Alphabet& alphabet() const { return alphabet_; }
  /// delta[state][letter]
  const std::vector<std::vector<CcraTransition>>& delta() const { return delta_; }
  const CcraTransition& transition(std::size_t state, std::size_t letter) const {
    return delta_.at(state).at(letter);
  }
  const RationalVector& mu() const { return mu_; }
  const std::vector<Expr>& nu() const { return nu_; }

 private:
  std::vector<std::string> states_;
  std::size_t initial_;
  std::vector<std::string> registers_;
  Alphabet alphabet_;
  std::vector<std::vector<CcraTransition>> delta_;
  RationalVector mu_;
  std::vector<Expr> nu_;
};

struct CcraTrace {
  /// states[i] and registers[i] hold the configuration after i letters.
  std::vector<std::size_t> states;
  std::vector<RationalVector> registers;
  Rational output;
};

Rational evaluate(const Ccra& c, const Word& w);
CcraTrace trace(const Ccra& c, const Word& w);

/// Constants of mu, of every update and of every output expression.
struct RGenerators {
  std::set<Rational> constants;
};

RGenerators extract_generators(const Ccra& c);

/// Effect of a word from every state: next_state[q] and maps[q].
struct WordEffect {
  std::vector<std::size_t> next_state;
  std::vector<PolyMap> maps;
};

WordEffect compose_word(const Ccra& c, const Word& w);

inline constexpr std::size_t kDefaultCcraBudget = 1024;

/// |Q| * 2^d, or nullopt when it overflows 64 bits.
std::optional<std::size_t> translation_dimension(const Ccra& c);

/// Square-free monomial construction: coordinate (q, S) at q * 2^d + mask(S)
/// carries prod_{i in S} x_i while the control is in q.
WeightedAutomaton to_weighted_automaton(const Ccra& c, std::size_t budget = kDefaultCcraBudget);

struct CcraZeronessResult {
  bool zero = true;
  std::optional<Word> witness;
  std::optional<Rational> witness_value;
  std::size_t dimension = 0;
};

CcraZeronessResult zeroness_ccra(const Ccra& c, std::size_t budget = kDefaultCcraBudget);

/// Product control, disjoint register blocks, output nu1 - nu2.
Ccra difference_ccra(const Ccra& a, const Ccra& b);

struct CcraEquivalenceResult {
  bool equivalent = true;
  std::optional<Word> counterexample;
};

CcraEquivalenceResult equivalence_ccra(const Ccra& a, const Ccra& b,
                                       std::size_t budget = kDefaultCcraBudget);

enum class RegisterKind { Constant, Updating, Neither };

const char* register_kind_name(RegisterKind k);

struct RegisterClassification {
  std::vector<RegisterKind> kinds;
  /// flow[u] lists the registers whose update reads u.
  std::vector<std::vector<std::size_t>> flow;
  bool simple = true;
};

/// Single state, single letter automata only.
RegisterClassification classify_registers(const Ccra& c);

struct PumpModulus {
  /// (4r + 2)! * s! with r registers and s states.
  BigInt factorial_bound;
  /// lcm of the control cycle lengths of each letter times lcm of the
  /// register-flow cycle lengths of each update.
  BigInt structural_value;
};

PumpModulus pump_modulus(const Ccra& c);

/// Exact modulus for one pumped word: control cycle length of w from the
/// state reached after u, times the flow-cycle lcm of the composed cycle map.
BigInt word_pump_modulus(const Ccra& c, const Word& u, const Word& w);

}  // namespace psfwb
