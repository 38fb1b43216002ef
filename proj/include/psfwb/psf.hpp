#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "psfwb/ccra.hpp"
#include "psfwb/eps.hpp"
#include "psfwb/lrs.hpp"
#include "psfwb/wa.hpp"

namespace psfwb {

struct WordTriple {
  Word u;
  Word w;
  Word v;
};

/// Parses "u,w,v" with "eps" for the empty word.
WordTriple parse_triple(const Alphabet& alphabet, std::string_view text);
std::string render_triple(const Alphabet& alphabet, const WordTriple& t);

/// Random triple with |u|, |v| <= max_len and 1 <= |w| <= max_len.
WordTriple random_triple(const Alphabet& alphabet, std::mt19937_64& rng, std::size_t max_len = 8);

enum class PsfSource { Automaton, Ccra };

/// The sequence n -> f(u w^n v).
struct PsfElement {
  WordTriple triple;
  PsfSource source = PsfSource::Automaton;
  /// For automaton sources wa_form is the one-letter automaton
  /// (I^T M(u), M(w), M(v) F); rec_form is always set.
  Lrs sequence;
  /// Terms computed by evaluating f directly.
  RationalVector direct_terms;
  std::shared_ptr<const Ccra> ccra;
  std::size_t horizon = 0;
};

PsfElement psf_element_wa(const WeightedAutomaton& a, const WordTriple& t);

/// 4 |Q| 2^d + 4, saturating.
std::size_t default_psf_horizon(const Ccra& c);

/// Evaluates f(u w^n v) for n < horizon, recovers the minimal recurrence
/// and, when the translation fits in `budget`, checks that the automaton
/// route recovers the same recurrence. Throws InsufficientData.
PsfElement psf_element_ccra(const Ccra& c, const WordTriple& t, std::optional<std::size_t> horizon = std::nullopt,
                            std::size_t budget = kDefaultCcraBudget);

/// The sequence n -> g(m (n + 1)).
Lrs subsample(const PsfElement& e, std::size_t m);

enum class Verdict { Obstructed, NotObstructed };
const char* verdict_name(Verdict v);

struct CoeffSumWitnessReport {
  WordTriple triple;
  ExpPoly eps;
  std::vector<CoeffSumVerdict> sums;
};

struct CcraObstructionReport {
  std::vector<CoeffSumWitnessReport> witnesses;
  std::set<BigInt> offending_primes;
  Verdict verdict = Verdict::NotObstructed;
};

/// For every witness: subsample by m, extract the exponential polynomial and
/// test S_k against the semiring generated by `gens`. Obstructed iff some
/// denominator prime is not allowed by the generators.
CcraObstructionReport ccra_obstruction_report(const WeightedAutomaton& f, const std::vector<WordTriple>& witnesses,
                                              std::size_t m, const RGenerators& gens,
                                              const std::vector<std::size_t>& ks = {});

struct RootWitnessReport {
  WordTriple triple;
  bool skipped = false;
  std::string notice;
  std::vector<Rational> roots;
  std::set<BigInt> cumulative_support;
};

struct PaObstructionReport {
  std::vector<RootWitnessReport> witnesses;
  std::set<BigInt> support;
  Verdict verdict = Verdict::NotObstructed;
};

/// Collects nonzero rational characteristic roots per witness. Obstructed
/// when a later witness adds a prime to the support accumulated so far.
PaObstructionReport pa_obstruction_report(const WeightedAutomaton& f, const std::vector<WordTriple>& witnesses);
PaObstructionReport pa_obstruction_report(const Ccra& f, const std::vector<WordTriple>& witnesses);

/// Sum of the 1-based positions holding letter 1, over words on {0,1}.
BigInt position_sum(const std::vector<int>& bits);

struct QuadraticForm {
  Rational a2;
  Rational a1;
  Rational a0;
};

/// Closed form of n -> position_sum(u w^n v).
QuadraticForm example24_closed_form(const std::vector<int>& u, const std::vector<int>& w, const std::vector<int>& v);

/// Compares direct evaluation with the closed form for n <= 10 and checks
/// that the coefficients lie in (1/2)Z.
bool example24_formula_check(const std::vector<int>& u, const std::vector<int>& w, const std::vector<int>& v);

}  // namespace psfwb
