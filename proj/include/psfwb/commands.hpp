#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "psfwb/ccra.hpp"
#include "psfwb/eps.hpp"
#include "psfwb/io.hpp"
#include "psfwb/psf.hpp"
#include "psfwb/qbf.hpp"
#include "psfwb/report.hpp"
#include "psfwb/wa.hpp"

namespace psfwb {

/// A weighted automaton or a CCRA, chosen by the document header.
using Model = std::variant<WeightedAutomaton, Ccra>;

Model parse_model(std::string_view text);
std::string render_model(const Model& m);
const Alphabet& model_alphabet(const Model& m);
Rational evaluate(const Model& m, const Word& w);
/// The automaton itself, or the square-free monomial translation of a CCRA.
WeightedAutomaton as_automaton(const Model& m, std::size_t budget = kDefaultCcraBudget);

/// Witnesses drawn with a fixed seed, rendered as "u,w,v".
std::vector<std::string> random_witnesses(const Alphabet& alphabet, std::size_t count, std::uint64_t seed,
                                          std::size_t max_len = 8);

Report zeroness_report(const Model& m, std::size_t budget = kDefaultCcraBudget);
Report equivalence_report(const Model& a, const Model& b, std::size_t budget = kDefaultCcraBudget);
Report ambiguity_report(const Model& m);
Report triangularize_report(const Model& m, std::string_view word, std::optional<BigInt> exponent);
Report psf_report(const Model& m, std::string_view triple, std::optional<std::size_t> horizon);
Report subsample_report(const Model& m, std::string_view triple, std::size_t step);

PsfElement psf_element(const Model& m, const WordTriple& t, std::optional<std::size_t> horizon = std::nullopt);
/// Exponential polynomial of the witness sequence subsampled by `step`.
ExpPoly exppoly_of_witness(const Model& m, std::string_view triple, std::size_t step);
/// Exponential polynomial of the sequence read from a sequence document.
ExpPoly exppoly_of_sequence(const SequenceDocument& s, std::size_t margin = 0);
/// The polynomials, the coefficient sums and, when a modulus is given, the
/// minimal-degree reduction over F_p with its coefficient sums.
Report exppoly_report(const ExpPoly& q, std::optional<std::uint64_t> modulus);

/// Parses "1,2,1/2" into a generator set.
RGenerators parse_generators(std::string_view text);
Report coeffsums_report(const ExpPoly& q, const RGenerators& gens, const std::vector<std::size_t>& ks);

Report obstruct_ccra_report(const Model& f, const std::vector<std::string>& witnesses, std::size_t step,
                            const RGenerators& gens, const std::vector<std::size_t>& ks);
Report obstruct_pa_report(const Model& f, const std::vector<std::string>& witnesses);

Report reduction_report(const ReductionOutput& r);
/// Runs the word enumeration and the brute-force oracle. Throws
/// InvalidArgument if they disagree.
Report qbf_solve_report(const Qbf& q);

/// Lists the bundled fixtures with their headline values as evaluated, and
/// writes them into `directory` when one is given.
Report examples_report(const std::optional<std::string>& directory);

}  // namespace psfwb
