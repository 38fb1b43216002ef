#pragma once

#include <cstddef>
#include <optional>

#include "psfwb/poly.hpp"
#include "psfwb/rational.hpp"
#include "psfwb/wa.hpp"

namespace psfwb {

/// a_{n+k} = sum_{i<k} coefficients[i] * a_{n+i}, with a_0..a_{k-1} given.
struct Recurrence {
  RationalVector coefficients;
  RationalVector initial;

  std::size_t order() const { return coefficients.size(); }
  friend bool operator==(const Recurrence&, const Recurrence&) = default;
};

/// Linear recurrence sequence in automaton form, recurrence form, or both.
/// Term n is the value on the word a^n.
struct Lrs {
  std::optional<WeightedAutomaton> wa_form;
  std::optional<Recurrence> rec_form;

  static Lrs from_recurrence(Recurrence r);
  /// Automaton form only; requires a one-letter alphabet.
  static Lrs from_automaton(WeightedAutomaton a);
};

RationalVector terms(const Lrs& l, std::size_t count);
RationalVector recurrence_terms(const Recurrence& r, std::size_t count);

inline constexpr std::size_t kDefaultRecurrenceMargin = 2;

/// Exact Berlekamp-Massey. Returns nullopt (insufficient data) unless the
/// order has been unchanged over the last `margin` terms, the prefix holds
/// at least 2k + margin terms, and the Hankel rank of the prefix equals k.
std::optional<Recurrence> minimal_recurrence(const RationalVector& prefix,
                                             std::size_t margin = kDefaultRecurrenceMargin);

/// Same, throwing InsufficientData instead of returning nullopt.
Recurrence require_minimal_recurrence(const RationalVector& prefix,
                                      std::size_t margin = kDefaultRecurrenceMargin);

/// x^k - c_{k-1} x^{k-1} - ... - c_0 of the minimal recurrence.
UniPoly characteristic_polynomial(const Lrs& l);
UniPoly characteristic_polynomial(const Recurrence& r);

/// Sets both forms; the recurrence is recovered from 2 dim + 2 terms and
/// checked against 4 dim terms generated from the matrices.
Lrs from_1letter_wa(const WeightedAutomaton& a);

/// Minimal recurrence of an Lrs, recovered from its automaton form if needed.
Recurrence minimal_form(const Lrs& l);

}  // namespace psfwb
