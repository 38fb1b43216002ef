#include <random>

#include "doctest.h"
#include "psfwb/ambiguity.hpp"
#include "psfwb/ccra.hpp"
#include "psfwb/error.hpp"
#include "psfwb/fixtures.hpp"
#include "psfwb/io.hpp"
#include "psfwb/psf.hpp"
#include "support.hpp"

using namespace psfwb;
using testing_support::pow_q;

namespace {

WordTriple triple(const Alphabet& a, const std::string& text) { return parse_triple(a, text); }

Word repeat(const Word& w, std::size_t n) {
  Word out;
  for (std::size_t i = 0; i < n; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

Word concat(const Word& a, const Word& b, const Word& c) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

// Elements of the semiring generated by `gens` only have denominator primes
// taken from the generators, and are nonnegative when every generator is.
bool plausibly_generated(const Rational& x, const RGenerators& gens) {
  bool negative_generator = false;
  for (const auto& g : gens.constants) negative_generator = negative_generator || g < 0;
  if (x < 0 && !negative_generator) return false;
  for (const auto& [p, e] : factor_integer(x.get_den())) {
    bool found = false;
    for (const auto& g : gens.constants) found = found || (g != 0 && g.get_den() % p == 0);
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("triples parse with eps for empty words") {
  const Alphabet ab({"a", "b"});
  const auto t = triple(ab, "eps,ab,b");
  CHECK(t.u.empty());
  CHECK(t.w == Word{0, 1});
  CHECK(t.v == Word{1});
  CHECK(render_triple(ab, t) == "eps,ab,b");
  CHECK_THROWS_AS(triple(ab, "a,b"), Error);
  const WeightedAutomaton one(1, ab, {RatMatrix::from_rows({{1}}), RatMatrix::from_rows({{1}})}, {1}, {1});
  CHECK_THROWS_AS(psf_element_wa(one, triple(ab, "a,eps,b")), Error);
}

TEST_CASE("PSF element of an automaton follows direct evaluation") {
  const auto a = fixture_wa("fig1a.wa");
  const auto e = psf_element_wa(a, triple(a.alphabet(), "eps,a,eps"));
  CHECK(terms(e.sequence, 5) == RationalVector{1, 2, 9, 8, 81});
  const auto f5 = fixture_wa("fig5.wa");
  std::mt19937_64 rng(testing_support::kSeed);
  for (int i = 0; i < 20; ++i) {
    const auto t = random_triple(f5.alphabet(), rng, 4);
    const auto el = psf_element_wa(f5, t);
    const auto ts = terms(el.sequence, 8);
    for (std::size_t n = 0; n < ts.size(); ++n) CHECK(ts[n] == evaluate(f5, concat(t.u, repeat(t.w, n), t.v)));
  }
}

TEST_CASE("nilpotent pumped word gives an eventually zero sequence") {
  const WeightedAutomaton nil(2, Alphabet({"a"}), {RatMatrix::from_rows({{0, 1}, {0, 0}})}, {1, 0}, {0, 1});
  const auto e = psf_element_wa(nil, triple(nil.alphabet(), "eps,aa,eps"));
  const auto ts = terms(e.sequence, 6);
  for (std::size_t n = 1; n < ts.size(); ++n) CHECK(ts[n] == 0);
}

TEST_CASE("binary value automaton has constant polynomials") {
  const auto bin = fixture_wa("binary.wa");
  std::mt19937_64 rng(testing_support::kSeed + 4);
  for (int i = 0; i < 20; ++i) {
    const auto t = random_triple(bin.alphabet(), rng, 6);
    const auto q = require_exppoly(psf_element_wa(bin, t).sequence);
    for (const auto& [base, poly] : q.terms) {
      CHECK(poly.degree() <= 0);
      CHECK((base == 1 || base == pow_q(2, t.w.size())));
    }
  }
}

TEST_CASE("PSF elements of CCRAs") {
  const auto f7 = fixture_ccra("fig7.ccra");
  const auto e7 = psf_element_ccra(f7, triple(f7.alphabet(), "eps,aab,eps"));
  CHECK(RationalVector(e7.direct_terms.begin(), e7.direct_terms.begin() + 4) == RationalVector{1, 2, 4, 8});
  CHECK(rational_roots(characteristic_polynomial(e7.sequence)) ==
        std::vector<std::pair<Rational, int>>{{Rational(2), 1}});

  const auto f6 = fixture_ccra("fig6.ccra");
  const auto e6 = psf_element_ccra(f6, triple(f6.alphabet(), "eps,1,eps"));
  CHECK(terms(e6.sequence, 5) == RationalVector{0, 2, 6, 14, 30});
  CHECK(minimal_form(e6.sequence).order() <= 3);

  const auto zero = parse_ccra(R"(psfwb-format ccra v1
states p
initial p
registers x
alphabet a
init x := 0
on p a -> p
  x := x
output p := 0
)");
  CHECK(minimal_form(psf_element_ccra(zero, triple(zero.alphabet(), "eps,a,eps")).sequence).order() == 0);
}

TEST_CASE("subsampling") {
  const auto a = fixture_wa("fig1a.wa");
  const auto e = psf_element_wa(a, triple(a.alphabet(), "eps,a,eps"));
  CHECK(terms(subsample(e, 2), 3) == RationalVector{9, 81, 729});
  CHECK(terms(subsample(e, 1), 5) == RationalVector{2, 9, 8, 81, 32});
  CHECK_THROWS_AS(subsample(e, 0), Error);
  const WeightedAutomaton z(1, Alphabet({"a"}), {RatMatrix(1, 1)}, {0}, {0});
  CHECK(terms(subsample(psf_element_wa(z, triple(z.alphabet(), "eps,a,eps")), 3), 4) ==
        RationalVector{0, 0, 0, 0});
  const auto f2 = fixture_ccra("fig2_left.ccra");
  const auto c = psf_element_ccra(f2, triple(f2.alphabet(), "eps,a,eps"));
  CHECK(terms(subsample(c, 2), 3) == RationalVector{4, 40, 364});
}

TEST_CASE("coefficient-sum obstruction for Fig 5") {
  const auto f5 = fixture_wa("fig5.wa");
  std::vector<WordTriple> ws;
  for (std::size_t k : {2, 4, 6}) {
    Word w(k, 0);
    w.push_back(1);
    ws.push_back(WordTriple{{}, w, {}});
  }
  const auto r = ccra_obstruction_report(f5, ws, 1, RGenerators{{1, 2}}, {1});
  CHECK(r.verdict == Verdict::Obstructed);
  CHECK(r.offending_primes == std::set<BigInt>{3, 5, 7});
  const std::vector<Rational> expected{Rational(32, 3), Rational(1024, 15), Rational(8192, 21)};
  for (std::size_t i = 0; i < 3; ++i) {
    REQUIRE(r.witnesses[i].sums.size() == 1);
    CHECK(r.witnesses[i].sums[0].value == expected[i]);
  }
}

TEST_CASE("coefficient-sum obstruction passes on Fig 2 left") {
  const auto a = to_weighted_automaton(fixture_ccra("fig2_left.ccra"));
  const auto r = ccra_obstruction_report(a, {WordTriple{{}, {0}, {}}}, 1, RGenerators{{0, 1, 3}}, {0});
  CHECK(r.verdict == Verdict::NotObstructed);
  REQUIRE(r.witnesses[0].sums.size() == 1);
  CHECK(r.witnesses[0].sums[0].value == 1);
  const WeightedAutomaton z(1, Alphabet({"a"}), {RatMatrix(1, 1)}, {0}, {0});
  CHECK(ccra_obstruction_report(z, {WordTriple{{}, {0}, {}}}, 1, RGenerators{{1}}, {}).verdict ==
        Verdict::NotObstructed);
}

TEST_CASE("characteristic-root obstruction") {
  const auto f7 = fixture_ccra("fig7.ccra");
  std::vector<WordTriple> ws;
  for (std::size_t k = 2; k <= 7; ++k) {
    Word w(k, 0);
    w.push_back(1);
    ws.push_back(WordTriple{{}, w, {}});
  }
  const auto r = pa_obstruction_report(f7, ws);
  CHECK(r.verdict == Verdict::Obstructed);
  for (std::size_t i = 0; i < ws.size(); ++i) {
    CHECK(r.witnesses[i].roots == std::vector<Rational>{Rational(static_cast<long>(i + 2))});
  }
  CHECK(r.support == std::set<BigInt>{2, 3, 5, 7});

  const auto a = fixture_wa("fig1a.wa");
  const auto ra = pa_obstruction_report(
      a, {triple(a.alphabet(), "eps,a,eps"), triple(a.alphabet(), "a,a,eps"), triple(a.alphabet(), "aa,aa,a")});
  CHECK(ra.verdict == Verdict::NotObstructed);
  CHECK(ra.support == std::set<BigInt>{2, 3});
  for (const auto& w : ra.witnesses) {
    for (const auto& root : w.roots) CHECK((root == 2 || root == -2 || root == 3 || root == -3 || root == 4 || root == 9));
  }
  const WeightedAutomaton z(1, Alphabet({"a"}), {RatMatrix(1, 1)}, {0}, {0});
  const auto rz = pa_obstruction_report(z, {WordTriple{{}, {0}, {}}});
  CHECK(rz.verdict == Verdict::NotObstructed);
  CHECK(rz.support.empty());
}

TEST_CASE("irrational roots skip a witness with a notice") {
  // Fibonacci as a one-letter automaton.
  const WeightedAutomaton fib(2, Alphabet({"a"}), {RatMatrix::from_rows({{1, 1}, {1, 0}})}, {1, 0}, {0, 1});
  const auto r = pa_obstruction_report(fib, {WordTriple{{}, {0}, {}}});
  REQUIRE(r.witnesses.size() == 1);
  CHECK(r.witnesses[0].skipped);
  CHECK_FALSE(r.witnesses[0].notice.empty());
  CHECK(r.verdict == Verdict::NotObstructed);
}

TEST_CASE("position sums and their closed form") {
  CHECK(position_sum({0, 1, 1, 0}) == 5);
  const auto q = example24_closed_form({}, {0, 1}, {});
  CHECK(q.a2 == 1);
  CHECK(example24_formula_check({}, {0, 1}, {}));
  const auto lin = example24_closed_form({1}, {0}, {});
  CHECK(lin.a2 == 0);
  CHECK(example24_formula_check({1}, {0}, {}));
  const auto z = example24_closed_form({0, 0}, {0}, {0});
  CHECK(z.a2 == 0);
  CHECK(z.a1 == 0);
  CHECK(z.a0 == 0);
}

TEST_CASE("closed form agrees with the position-sum automaton") {
  const auto a = fixture_wa("position_sum.wa");
  std::mt19937_64 rng(testing_support::kSeed + 5);
  for (int i = 0; i < 20; ++i) {
    const auto t = random_triple(a.alphabet(), rng, 5);
    auto bits = [](const Word& w) { return std::vector<int>(w.begin(), w.end()); };
    const auto closed = example24_closed_form(bits(t.u), bits(t.w), bits(t.v));
    const auto q = require_exppoly(psf_element_wa(a, t).sequence);
    REQUIRE(q.terms.size() <= 1);
    const UniPoly p = q.terms.empty() ? UniPoly() : q.terms.begin()->second;
    CHECK(p.coefficient(2) == closed.a2);
    CHECK(p.coefficient(1) == closed.a1);
    CHECK(p.coefficient(0) == closed.a0);
  }
}

TEST_CASE("subsampling by the structural modulus gives generable sequences") {
  std::mt19937_64 rng(testing_support::kSeed + 6);
  for (const auto& f : bundled_fixtures()) {
    if (f.kind != DocumentKind::Ccra) continue;
    CAPTURE(f.file);
    const auto c = fixture_ccra(f.file);
    const auto gens = extract_generators(c);
    const BigInt m = pump_modulus(c).structural_value;
    REQUIRE(m.fits_ulong_p());
    for (int i = 0; i < 20; ++i) {
      const auto t = random_triple(c.alphabet(), rng, 3);
      CAPTURE(render_triple(c.alphabet(), t));
      const auto e = psf_element_ccra(c, t);
      const auto sub = subsample(e, m.get_ui());
      const auto as_eps = from_lrs(sub);
      REQUIRE(std::holds_alternative<ExpPoly>(as_eps));
      const auto& q = std::get<ExpPoly>(as_eps);
      for (const auto& [base, poly] : q.terms) CHECK(plausibly_generated(base, gens));
      for (const auto& v : coeff_sums_in_semiring(q, gens, {})) CHECK(v.pass);
    }
  }
}
