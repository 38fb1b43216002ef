#include "psfwb/lrs.hpp"

#include <algorithm>

#include "psfwb/error.hpp"
#include "psfwb/matrix.hpp"

namespace psfwb {

Lrs Lrs::from_recurrence(Recurrence r) {
  if (r.initial.size() != r.coefficients.size()) {
    throw Error(ErrorCode::DimensionMismatch, "a recurrence of order k needs k initial values");
  }
  Lrs l;
  l.rec_form = std::move(r);
  return l;
}

Lrs Lrs::from_automaton(WeightedAutomaton a) {
  if (a.alphabet().size() != 1) {
    throw Error(ErrorCode::InvalidArgument, "a linear recurrence sequence needs a one-letter automaton");
  }
  Lrs l;
  l.wa_form = std::move(a);
  return l;
}

RationalVector recurrence_terms(const Recurrence& r, std::size_t count) {
  RationalVector out;
  out.reserve(count);
  const std::size_t k = r.order();
  for (std::size_t n = 0; n < count; ++n) {
    if (n < k) {
      out.push_back(r.initial[n]);
      continue;
    }
    Rational v = 0;
    for (std::size_t i = 0; i < k; ++i) v += r.coefficients[i] * out[n - k + i];
    out.push_back(v);
  }
  return out;
}

namespace {

RationalVector automaton_terms(const WeightedAutomaton& a, std::size_t count) {
  RationalVector out;
  out.reserve(count);
  RationalVector v = a.initial();
  for (std::size_t n = 0; n < count; ++n) {
    out.push_back(dot(v, a.final_weights()));
    if (n + 1 < count) v = v * a.matrix(0);
  }
  return out;
}

}  // namespace

RationalVector terms(const Lrs& l, std::size_t count) {
  if (l.rec_form) return recurrence_terms(*l.rec_form, count);
  if (l.wa_form) return automaton_terms(*l.wa_form, count);
  return RationalVector(count, Rational(0));
}

std::optional<Recurrence> minimal_recurrence(const RationalVector& prefix, std::size_t margin) {
  const std::size_t n_terms = prefix.size();
  std::vector<Rational> c{1}, b{1};
  std::size_t order = 0, shift = 1;
  Rational last_discrepancy = 1;
  std::size_t terms_since_change = n_terms;  // counts terms after the last order change
  for (std::size_t n = 0; n < n_terms; ++n) {
    Rational d = prefix[n];
    for (std::size_t i = 1; i <= order && i < c.size(); ++i) d += c[i] * prefix[n - i];
    if (d == 0) {
      ++shift;
      continue;
    }
    const Rational factor = d / last_discrepancy;
    std::vector<Rational> next = c;
    if (next.size() < b.size() + shift) next.resize(b.size() + shift);
    for (std::size_t i = 0; i < b.size(); ++i) next[i + shift] -= factor * b[i];
    if (2 * order <= n) {
      b = c;
      order = n + 1 - order;
      last_discrepancy = d;
      shift = 1;
      terms_since_change = n_terms - (n + 1);
    } else {
      ++shift;
    }
    c = std::move(next);
  }
  if (order > 0 && terms_since_change < margin) return std::nullopt;
  if (n_terms < 2 * order + margin) return std::nullopt;
  c.resize(order + 1);

  Recurrence r;
  r.coefficients.resize(order);
  for (std::size_t i = 1; i <= order; ++i) r.coefficients[order - i] = -c[i];
  r.initial.assign(prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(order));

  // The order must match the rank of the square Hankel matrix of the prefix.
  if (n_terms > 0) {
    const std::size_t h = (n_terms - 1) / 2 + 1;
    RatMatrix hankel(h, h);
    for (std::size_t i = 0; i < h; ++i) {
      for (std::size_t j = 0; j < h; ++j) hankel(i, j) = prefix[i + j];
    }
    if (hankel.rank() != order) return std::nullopt;
  }
  if (recurrence_terms(r, n_terms) != prefix) return std::nullopt;
  return r;
}

Recurrence require_minimal_recurrence(const RationalVector& prefix, std::size_t margin) {
  auto r = minimal_recurrence(prefix, margin);
  if (!r) {
    throw Error(ErrorCode::InsufficientData,
                "no stable minimal recurrence within " + std::to_string(prefix.size()) + " terms");
  }
  return *r;
}

UniPoly characteristic_polynomial(const Recurrence& r) {
  std::vector<Rational> coeffs(r.order() + 1);
  for (std::size_t i = 0; i < r.order(); ++i) coeffs[i] = -r.coefficients[i];
  coeffs[r.order()] = 1;
  return UniPoly(std::move(coeffs));
}

Lrs from_1letter_wa(const WeightedAutomaton& a) {
  Lrs l = Lrs::from_automaton(a);
  const std::size_t d = a.dim();
  const RationalVector prefix = automaton_terms(a, 2 * d + 2);
  Recurrence r = require_minimal_recurrence(prefix);
  const std::size_t horizon = std::max<std::size_t>(4 * d, 2 * d + 2);
  if (recurrence_terms(r, horizon) != automaton_terms(a, horizon)) {
    throw Error(ErrorCode::InsufficientData, "recovered recurrence disagrees with the automaton");
  }
  l.rec_form = std::move(r);
  return l;
}

Recurrence minimal_form(const Lrs& l) {
  if (l.rec_form) {
    const std::size_t k = l.rec_form->order();
    return require_minimal_recurrence(recurrence_terms(*l.rec_form, 2 * k + 2));
  }
  if (l.wa_form) return *from_1letter_wa(*l.wa_form).rec_form;
  return Recurrence{};
}

UniPoly characteristic_polynomial(const Lrs& l) { return characteristic_polynomial(minimal_form(l)); }

}  // namespace psfwb
