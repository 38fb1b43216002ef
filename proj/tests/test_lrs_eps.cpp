#include <random>

#include "doctest.h"
#include "psfwb/ccra.hpp"
#include "psfwb/eps.hpp"
#include "psfwb/error.hpp"
#include "psfwb/fixtures.hpp"
#include "psfwb/lrs.hpp"
#include "support.hpp"

using namespace psfwb;
using testing_support::pow_q;

namespace {

Lrs fibonacci() { return Lrs::from_recurrence(Recurrence{{1, 1}, {0, 1}}); }

RationalVector sequence(std::size_t n, const std::function<Rational(std::size_t)>& f) {
  RationalVector out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(f(i));
  return out;
}

ExpPoly single(const Rational& base, std::vector<Rational> coeffs) {
  ExpPoly q;
  q.terms[base] = UniPoly(std::move(coeffs));
  q.normalize();
  return q;
}

FpExpPoly fp_single(std::uint64_t p, std::uint64_t base, std::vector<std::uint64_t> coeffs) {
  FpExpPoly q;
  q.modulus = p;
  q.terms.emplace(base, FpPoly(p, std::move(coeffs)));
  return q;
}

ExpPoly random_exppoly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 3), degree(0, 3), coeff(-5, 5), base(-4, 5), den(1, 3);
  ExpPoly q;
  const int terms = count(rng);
  for (int i = 0; i < terms; ++i) {
    std::vector<Rational> cs;
    const int d = degree(rng);
    for (int j = 0; j <= d; ++j) cs.push_back(Rational(coeff(rng), den(rng)));
    for (auto& c : cs) c.canonicalize();
    Rational b(base(rng), den(rng));
    b.canonicalize();
    if (b == 0) b = 1;
    q = add(q, single(b, cs));
  }
  return q;
}

}  // namespace

TEST_CASE("terms of linear recurrences") {
  CHECK(terms(Lrs::from_recurrence(Recurrence{{-1, 2}, {0, 1}}), 5) == RationalVector{0, 1, 2, 3, 4});
  CHECK(terms(fibonacci(), 7) == RationalVector{0, 1, 1, 2, 3, 5, 8});
  CHECK(terms(Lrs::from_recurrence(Recurrence{{}, {}}), 3) == RationalVector{0, 0, 0});
  CHECK(terms(Lrs::from_automaton(fixture_wa("linear.wa")), 5) == RationalVector{0, 1, 2, 3, 4});
}

TEST_CASE("minimal recurrences") {
  const auto lin = minimal_recurrence({0, 1, 2, 3, 4, 5, 6, 7});
  REQUIRE(lin);
  CHECK(lin->coefficients == RationalVector{-1, 2});
  const auto fib = minimal_recurrence({0, 1, 1, 2, 3, 5, 8, 13});
  REQUIRE(fib);
  CHECK(fib->coefficients == RationalVector{1, 1});
  const auto zero = minimal_recurrence({0, 0, 0, 0});
  REQUIRE(zero);
  CHECK(zero->order() == 0);
}

TEST_CASE("minimal recurrence needs enough terms") {
  CHECK_FALSE(minimal_recurrence({0, 1, 2}).has_value());
  try {
    require_minimal_recurrence({1, 2});
    FAIL("expected InsufficientData");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientData);
  }
}

TEST_CASE("minimal recurrence recovers random recurrences") {
  std::mt19937_64 rng(testing_support::kSeed);
  std::uniform_int_distribution<int> order(1, 4), c(-3, 3);
  for (int i = 0; i < 50; ++i) {
    Recurrence r;
    const int k = order(rng);
    for (int j = 0; j < k; ++j) {
      r.coefficients.push_back(c(rng));
      r.initial.push_back(c(rng));
    }
    const auto seq = recurrence_terms(r, 2 * k + 6);
    const auto found = minimal_recurrence(seq);
    REQUIRE(found);
    CHECK(found->order() <= static_cast<std::size_t>(k));
    CHECK(recurrence_terms(*found, 30) == recurrence_terms(r, 30));
  }
}

TEST_CASE("characteristic polynomials") {
  const auto lin = Lrs::from_recurrence(Recurrence{{-1, 2}, {0, 1}});
  CHECK(characteristic_polynomial(lin) == UniPoly({Rational(1), Rational(-2), Rational(1)}));
  CHECK(characteristic_polynomial(fibonacci()) == UniPoly({Rational(-1), Rational(-1), Rational(1)}));
  CHECK(characteristic_polynomial(Lrs::from_recurrence(Recurrence{{1}, {1}})) ==
        UniPoly({Rational(-1), Rational(1)}));
}

TEST_CASE("one-letter automata as sequences") {
  const auto b = from_1letter_wa(fixture_wa("fig1b.wa"));
  CHECK(terms(b, 4) == RationalVector{0, 1, 2, 3});
  CHECK(minimal_form(b).order() == 2);
  const auto a = from_1letter_wa(fixture_wa("fig1a.wa"));
  CHECK(terms(a, 6) == RationalVector{1, 2, 9, 8, 81, 32});
  CHECK(minimal_form(a).order() == 4);
  const WeightedAutomaton z(2, Alphabet({"a"}), {RatMatrix(2, 2)}, {0, 0}, {0, 0});
  CHECK(minimal_form(from_1letter_wa(z)).order() == 0);
}

TEST_CASE("exponential polynomials of figure sequences") {
  const auto f2 = fixture_ccra("fig2_left.ccra");
  const auto seq = sequence(12, [&](std::size_t n) { return evaluate(f2, Word(n + 1, 0)); });
  const auto q = require_exppoly(Lrs::from_recurrence(require_minimal_recurrence(seq)));
  CHECK(q == add(single(3, {Rational(3, 2)}), single(1, {Rational(-1, 2)})));
  CHECK(coeff_sum(q, 0) == 1);

  const auto lin = require_exppoly(Lrs::from_recurrence(Recurrence{{-1, 2}, {0, 1}}));
  CHECK(lin == single(1, {0, 1}));

  const auto fib = from_lrs(fibonacci());
  REQUIRE(std::holds_alternative<IrrationalRoots>(fib));
  CHECK(std::get<IrrationalRoots>(fib).polynomial ==
        UniPoly({Rational(-1), Rational(-1), Rational(1)}));
}

TEST_CASE("Fig 2 right coefficient sums") {
  const auto f = fixture_ccra("fig2_right.ccra");
  const auto seq = sequence(16, [&](std::size_t n) { return evaluate(f, Word(n + 1, 0)); });
  const auto q = require_exppoly(Lrs::from_recurrence(require_minimal_recurrence(seq)));
  CHECK(coeff_sum(q, 1) == 6);
  CHECK(coeff_sum(q, 0) == 45);
  // (5^{n+2} - 1)/4 times (n + 7), plus 3^{n+1}.
  const ExpPoly left = add(single(5, {Rational(25, 4)}), single(1, {Rational(-1, 4)}));
  const ExpPoly right = single(1, {7, 1});
  const ExpPoly whole = add(mul(left, right), single(3, {3}));
  for (std::size_t n = 0; n <= 8; ++n) CHECK(eval(whole, n) == seq[n]);
  CHECK(whole == q);
}

TEST_CASE("exponential polynomial arithmetic") {
  CHECK(mul(single(2, {1}), single(3, {1})) == single(6, {1}));
  const auto q = single(2, {1, 3});
  CHECK(add(q, ExpPoly{}) == q);
  CHECK(coeff_sum(ExpPoly{}, 2) == 0);
  CHECK(eval(single(2, {1, 3}), 3) == 8 * 10);
}

TEST_CASE("product rule for coefficient sums on random pairs") {
  std::mt19937_64 rng(testing_support::kSeed + 3);
  for (int i = 0; i < 40; ++i) {
    const auto a = random_exppoly(rng);
    const auto b = random_exppoly(rng);
    const auto ab = mul(a, b);
    for (std::size_t n = 0; n < 5; ++n) CHECK(eval(ab, n) == eval(a, n) * eval(b, n));
    for (std::size_t k = 0; k <= 6; ++k) {
      Rational expected = 0;
      for (std::size_t j = 0; j <= k; ++j) expected += coeff_sum(a, j) * coeff_sum(b, k - j);
      CHECK(coeff_sum(ab, k) == expected);
    }
  }
}

TEST_CASE("generable recipes") {
  const auto g = realize(GenerableRecipe::geometric_sum(3));
  CHECK(sequence(4, [&](std::size_t n) { return eval(g, n); }) == RationalVector{0, 1, 4, 13});
  const auto l = realize(GenerableRecipe::linear());
  CHECK(sequence(4, [&](std::size_t n) { return eval(l, n); }) == RationalVector{0, 1, 2, 3});
  const auto p = realize(GenerableRecipe::product({GenerableRecipe::exponential(2), GenerableRecipe::linear()}));
  CHECK(p == single(2, {0, 1}));
  const auto mixed = GenerableRecipe::sum({GenerableRecipe::constant(Rational(1, 2)), GenerableRecipe::linear()});
  CHECK(mixed.constants().count(Rational(1, 2)) == 1);
}

TEST_CASE("coefficient sums against a semiring") {
  const auto q = add(single(3, {Rational(3, 2)}), single(1, {Rational(-1, 2)}));
  const auto pass = coeff_sums_in_semiring(q, RGenerators{{0, 1, 3}}, {0});
  REQUIRE(pass.size() == 1);
  CHECK(pass[0].pass);
  const auto fail = coeff_sums_in_semiring(single(4, {0, Rational(32, 3)}), RGenerators{{1, 2}}, {1});
  REQUIRE(fail.size() == 1);
  CHECK_FALSE(fail[0].pass);
  CHECK(fail[0].witness_prime == BigInt(3));
  for (const auto& v : coeff_sums_in_semiring(ExpPoly{}, RGenerators{{1}}, {})) CHECK(v.pass);
}

TEST_CASE("minimal-degree reduction over prime fields") {
  const auto r3 = minimal_degree_reduce(fp_single(3, 1, {1, 0, 1, 1}));
  CHECK(r3.terms.at(1) == FpPoly(3, {1, 1, 1}));
  const auto again = minimal_degree_reduce(r3);
  CHECK(again.terms.at(1) == r3.terms.at(1));
  const auto r2 = minimal_degree_reduce(fp_single(2, 1, {0, 0, 1}));
  CHECK(r2.terms.at(1) == FpPoly(2, {0, 1}));
}

TEST_CASE("characteristic-p sum invariants") {
  const auto q = fp_single(3, 1, {1, 0, 1, 1});
  CHECK(charp_sum_invariants(q, fp_single(3, 1, {1, 1, 1})));
  CHECK(charp_sum_invariants(q, q));
  for (std::uint64_t p : {2, 3, 5}) {
    std::vector<std::uint64_t> high(p + 1, 0);
    high[0] = 1;
    high[1] = 1;
    high[p] = 1;
    const auto a = fp_single(p, 1, high);
    const auto b = fp_single(p, 1, {1, 2 % p});
    for (std::uint64_t n = 0; n < 2 * p; ++n) CHECK(eval(a, n) == eval(b, n));
    CHECK(charp_sum_invariants(a, b));
  }
}

TEST_CASE("pointwise representability modulo p") {
  std::vector<FpScalar> tri, constant, mod3;
  for (std::uint64_t n = 0; n < 8; ++n) {
    tri.emplace_back((n * (n + 1) / 2) % 2, 2);
    constant.emplace_back(1, 2);
    mod3.emplace_back(n % 3, 3);
  }
  CHECK_FALSE(is_pointwise_representable_mod_p(tri));
  CHECK(is_pointwise_representable_mod_p(constant));
  CHECK(is_pointwise_representable_mod_p(mod3));
}

TEST_CASE("reduction of Fig 8 modulo 3") {
  const auto f8 = fixture_ccra("fig8.ccra");
  const auto seq = sequence(12, [&](std::size_t n) { return evaluate(f8, Word(n, 0)); });
  for (std::size_t n = 0; n < seq.size(); ++n) {
    const Rational m(static_cast<long>(n));
    CHECK(seq[n] == m * m * m + m * m + 1);
  }
  const auto q = require_exppoly(Lrs::from_recurrence(require_minimal_recurrence(seq)));
  const auto r = minimal_degree_reduce(to_fp(q, 3));
  CHECK(r.terms.at(1) == FpPoly(3, {1, 1, 1}));
  for (std::size_t k = 0; k < 3; ++k) CHECK(coeff_sum(r, k).residue() == 1);
}
