#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psfwb/matrix.hpp"
#include "psfwb/rational.hpp"

namespace psfwb {

/// A word is a sequence of letter indices into an Alphabet.
using Word = std::vector<std::size_t>;

/// Sorted, duplicate-free list of opaque symbols.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const { return symbols_.size(); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  const std::string& symbol(std::size_t letter) const { return symbols_.at(letter); }

  /// Throws UnknownLetter.
  std::size_t index(std::string_view symbol) const;
  bool contains(std::string_view symbol) const;

  /// "eps" and "" denote the empty word. With single-character symbols
  /// each character is a letter; otherwise symbols are separated by spaces
  /// or dots.
  Word parse_word(std::string_view text) const;
  /// Inverse of parse_word; the empty word renders as "eps".
  std::string render(const Word& w) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  bool single_char() const;
  std::vector<std::string> symbols_;
};

/// (d, Sigma, (M(a)), I, F) with value I^T M(w) F.
class WeightedAutomaton {
 public:
  WeightedAutomaton() = default;
  WeightedAutomaton(std::size_t dim, Alphabet alphabet, std::vector<RatMatrix> transitions,
                    RationalVector initial, RationalVector final_weights);

  std::size_t dim() const { return dim_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<RatMatrix>& transitions() const { return transitions_; }
  const RatMatrix& matrix(std::size_t letter) const { return transitions_.at(letter); }
  const RationalVector& initial() const { return initial_; }
  const RationalVector& final_weights() const { return final_; }

  /// M(w) = M(w_1) ... M(w_n).
  RatMatrix word_matrix(const Word& w) const;
  /// I^T M(w).
  RationalVector forward(const Word& w) const;

  friend bool operator==(const WeightedAutomaton&, const WeightedAutomaton&) = default;

 private:
  std::size_t dim_ = 0;
  Alphabet alphabet_;
  std::vector<RatMatrix> transitions_;
  RationalVector initial_;
  RationalVector final_;
};

/// Underlying automaton: weights erased, zero transitions dropped.
struct Nfa {
  std::size_t dim = 0;
  Alphabet alphabet;
  /// successors[letter][state] lists target states in increasing order.
  std::vector<std::vector<std::vector<std::size_t>>> successors;
  std::vector<bool> initial;
  std::vector<bool> final_states;

  std::size_t edge_count() const;
};

Rational evaluate(const WeightedAutomaton& a, const Word& w);
Nfa underlying_nfa(const WeightedAutomaton& a);
/// Accepting runs of the underlying automaton on w.
BigInt run_count(const WeightedAutomaton& a, const Word& w);
/// Runs from an initial state on w, whether or not they end in a final state.
BigInt initial_run_count(const WeightedAutomaton& a, const Word& w);

/// Restriction to states reachable from an initial state and co-reachable
/// to a final state. `kept` receives the surviving original indices.
WeightedAutomaton trim(const WeightedAutomaton& a, std::vector<std::size_t>* kept = nullptr);

/// Direct sum with a negated final block: value A(w) - B(w).
WeightedAutomaton difference(const WeightedAutomaton& a, const WeightedAutomaton& b);

struct ZeronessResult {
  bool zero = true;
  /// Shortest word with nonzero value when `zero` is false.
  std::optional<Word> witness;
  std::optional<Rational> witness_value;
  /// Dimension of the reachable forward space.
  std::size_t forward_rank = 0;
};

ZeronessResult zeroness(const WeightedAutomaton& a);

struct EquivalenceResult {
  bool equivalent = true;
  std::optional<Word> counterexample;
};

EquivalenceResult equivalence(const WeightedAutomaton& a, const WeightedAutomaton& b);

}  // namespace psfwb
