#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "psfwb/wa.hpp"

namespace testing_support {

inline constexpr std::uint64_t kSeed = 20240601;

/// All words over `letters` letters of length exactly `n`, in lexicographic order.
inline std::vector<psfwb::Word> words_of_length(std::size_t letters, std::size_t n) {
  std::vector<psfwb::Word> out{psfwb::Word{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<psfwb::Word> next;
    for (const auto& w : out) {
      for (std::size_t a = 0; a < letters; ++a) {
        auto x = w;
        x.push_back(a);
        next.push_back(std::move(x));
      }
    }
    out = std::move(next);
  }
  return out;
}

inline std::vector<psfwb::Word> words_up_to(std::size_t letters, std::size_t max_len) {
  std::vector<psfwb::Word> out;
  for (std::size_t n = 0; n <= max_len; ++n) {
    for (auto& w : words_of_length(letters, n)) out.push_back(std::move(w));
  }
  return out;
}

inline psfwb::Word random_word(std::mt19937_64& rng, std::size_t letters, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> letter(0, letters - 1);
  psfwb::Word w(len(rng));
  for (auto& a : w) a = letter(rng);
  return w;
}

/// Dimension 1..max_dim, alphabet {a, b} or {a}, integer weights in [-2, 2].
inline psfwb::WeightedAutomaton random_automaton(std::mt19937_64& rng, std::size_t max_dim, std::size_t max_letters,
                                                 long lo = -2, long hi = 2, double density = 0.5) {
  std::uniform_int_distribution<std::size_t> dim_dist(1, max_dim);
  std::uniform_int_distribution<std::size_t> letters_dist(1, max_letters);
  std::uniform_int_distribution<long> weight(lo, hi);
  std::bernoulli_distribution keep(density);
  const std::size_t d = dim_dist(rng);
  const std::size_t k = letters_dist(rng);
  std::vector<std::string> symbols;
  for (std::size_t a = 0; a < k; ++a) symbols.push_back(std::string(1, static_cast<char>('a' + a)));
  auto entry = [&] { return keep(rng) ? psfwb::Rational(weight(rng)) : psfwb::Rational(0); };
  std::vector<psfwb::RatMatrix> ms;
  for (std::size_t a = 0; a < k; ++a) {
    psfwb::RatMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) m(i, j) = entry();
    }
    ms.push_back(m);
  }
  psfwb::RationalVector init(d), fin(d);
  for (auto& x : init) x = entry();
  for (auto& x : fin) x = entry();
  return psfwb::WeightedAutomaton(d, psfwb::Alphabet(symbols), ms, init, fin);
}

/// I^T M(w) F computed entry by entry, independent of the library product.
inline psfwb::Rational naive_value(const psfwb::WeightedAutomaton& a, const psfwb::Word& w) {
  psfwb::RationalVector row = a.initial();
  for (auto letter : w) {
    const auto& m = a.matrix(letter);
    psfwb::RationalVector next(a.dim());
    for (std::size_t j = 0; j < a.dim(); ++j) {
      for (std::size_t i = 0; i < a.dim(); ++i) next[j] += row[i] * m(i, j);
    }
    row = next;
  }
  psfwb::Rational out = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) out += row[i] * a.final_weights()[i];
  return out;
}

inline psfwb::Rational pow_q(const psfwb::Rational& b, std::size_t e) {
  psfwb::Rational r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace testing_support
