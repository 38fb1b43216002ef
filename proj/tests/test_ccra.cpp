#include <random>

#include "doctest.h"
#include "psfwb/ccra.hpp"
#include "psfwb/error.hpp"
#include "psfwb/fixtures.hpp"
#include "psfwb/io.hpp"
#include "support.hpp"

using namespace psfwb;
using testing_support::pow_q;

namespace {

const char* kZeroCcra = R"(psfwb-format ccra v1
states p
initial p
registers x
alphabet a b
init x := 0
on p a -> p
  x := x
on p b -> p
  x := x
output p := 0
)";

// (3^{n+1} - 1)/2 on a^{n+1} with the increment held in a second register.
const char* kFig2LeftVariant = R"(psfwb-format ccra v1
states p
initial p
registers s t
alphabet a
init s := 0
init t := 1
on p a -> p
  s := 3*s + t
  t := 1
output p := s
)";

std::size_t register_index(const Ccra& c, const std::string& name) {
  const auto& r = c.registers();
  return static_cast<std::size_t>(std::find(r.begin(), r.end(), name) - r.begin());
}

// Applies the single-letter updates one after the other.
RationalVector step_by_step(const Ccra& c, std::size_t state, const Word& w, RationalVector regs) {
  for (auto letter : w) {
    const auto& t = c.transition(state, letter);
    regs = t.update.apply(regs);
    state = t.target;
  }
  return regs;
}

}  // namespace

TEST_CASE("CCRA evaluation on the figure examples") {
  const auto f2 = fixture_ccra("fig2_left.ccra");
  CHECK(evaluate(f2, Word{0, 0, 0}) == 13);
  for (std::size_t n = 0; n <= 10; ++n) {
    CHECK(evaluate(f2, Word(n + 1, 0)) == (pow_q(3, n + 1) - 1) / 2);
  }
  const auto f6 = fixture_ccra("fig6.ccra");
  CHECK(evaluate(f6, f6.alphabet().parse_word("11")) == 6);
  const auto f7 = fixture_ccra("fig7.ccra");
  CHECK(evaluate(f7, f7.alphabet().parse_word("aabaabaab")) == 8);
  for (std::size_t k = 1; k <= 5; ++k) {
    Word block(k, 0);
    block.push_back(1);
    for (std::size_t n = 0; n <= 4; ++n) {
      Word w;
      for (std::size_t i = 0; i < n; ++i) w.insert(w.end(), block.begin(), block.end());
      CHECK(evaluate(f7, w) == pow_q(k, n));
    }
  }
}

TEST_CASE("Fig 6 sums 2^k over the positions of ones") {
  const auto f6 = fixture_ccra("fig6.ccra");
  for (const auto& w : testing_support::words_up_to(2, 8)) {
    Rational expected = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] == 1) expected += pow_q(2, i + 1);
    }
    CHECK(evaluate(f6, w) == expected);
  }
}

TEST_CASE("trace records every configuration") {
  const auto f2 = fixture_ccra("fig2_left.ccra");
  const auto t = trace(f2, Word{0, 0});
  REQUIRE(t.registers.size() == 3);
  CHECK(t.registers[0][0] == 0);
  CHECK(t.registers[1][0] == 1);
  CHECK(t.registers[2][0] == 4);
  CHECK(t.output == 4);
}

TEST_CASE("generators are the constants of the automaton") {
  CHECK(extract_generators(fixture_ccra("fig2_left.ccra")).constants == std::set<Rational>{0, 1, 3});
  CHECK(extract_generators(fixture_ccra("fig6.ccra")).constants ==
        std::set<Rational>{0, 1, 2, Rational(1, 2)});
  CHECK(extract_generators(parse_ccra(kZeroCcra)).constants == std::set<Rational>{0});
}

TEST_CASE("word composition") {
  const auto f2 = fixture_ccra("fig2_left.ccra");
  const auto e = compose_word(f2, Word{0, 0});
  REQUIRE(e.maps.size() == 1);
  CHECK(semantically_equal(e.maps[0], PolyMap(1, {parse_expr("9*x + 4", {"x"})})));
  const auto single = compose_word(f2, Word{0});
  CHECK(semantically_equal(single.maps[0], f2.transition(0, 0).update));
  CHECK(single.next_state[0] == f2.transition(0, 0).target);

  const auto f7 = fixture_ccra("fig7.ccra");
  const Word w = f7.alphabet().parse_word("aab");
  const auto e7 = compose_word(f7, w);
  std::mt19937_64 rng(testing_support::kSeed);
  std::uniform_int_distribution<long> d(-9, 9);
  for (int i = 0; i < 100; ++i) {
    const RationalVector regs{Rational(d(rng)), Rational(d(rng))};
    CHECK(e7.maps[0].apply(regs) == step_by_step(f7, 0, w, regs));
  }
}

TEST_CASE("translation sizes and agreement") {
  const auto f2 = fixture_ccra("fig2_left.ccra");
  const auto a2 = to_weighted_automaton(f2);
  CHECK(a2.dim() == 2);
  for (std::size_t n = 0; n <= 10; ++n) CHECK(evaluate(a2, Word(n, 0)) == evaluate(f2, Word(n, 0)));
  const auto f6 = fixture_ccra("fig6.ccra");
  CHECK(translation_dimension(f6) == std::optional<std::size_t>(4));
  const auto a6 = to_weighted_automaton(f6);
  CHECK(a6.dim() == 4);
  for (const auto& w : testing_support::words_up_to(2, 8)) CHECK(evaluate(a6, w) == evaluate(f6, w));
  CHECK(zeroness(to_weighted_automaton(parse_ccra(kZeroCcra))).zero);
}

TEST_CASE("translation respects the budget") {
  try {
    to_weighted_automaton(fixture_ccra("fig6.ccra"), 3);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
}

TEST_CASE("CCRA zeroness") {
  CHECK(zeroness_ccra(parse_ccra(kZeroCcra)).zero);
  const auto z = zeroness_ccra(fixture_ccra("fig2_left.ccra"));
  CHECK_FALSE(z.zero);
  REQUIRE(z.witness);
  CHECK(*z.witness == Word{0});
  CHECK(*z.witness_value == 1);
  const auto f7 = fixture_ccra("fig7.ccra");
  CHECK(zeroness_ccra(difference_ccra(f7, f7)).zero);
}

TEST_CASE("CCRA equivalence") {
  const auto f2 = fixture_ccra("fig2_left.ccra");
  CHECK(equivalence_ccra(f2, f2).equivalent);
  const auto variant = parse_ccra(kFig2LeftVariant);
  for (std::size_t n = 0; n <= 8; ++n) CHECK(evaluate(variant, Word(n, 0)) == evaluate(f2, Word(n, 0)));
  CHECK(equivalence_ccra(f2, variant).equivalent);

  const auto f6 = fixture_ccra("fig6.ccra");
  std::string text = fixture("fig6.ccra").text;
  text.replace(text.find("y*x/2"), 5, "y*x");
  const auto doubled = parse_ccra(text);
  const auto r = equivalence_ccra(f6, doubled);
  CHECK_FALSE(r.equivalent);
  REQUIRE(r.counterexample);
  CHECK(r.counterexample->size() <= 1);
  CHECK(evaluate(f6, *r.counterexample) != evaluate(doubled, *r.counterexample));
}

TEST_CASE("register classification") {
  const auto f4 = fixture_ccra("fig4.ccra");
  const auto c4 = classify_registers(f4);
  CHECK(c4.kinds[register_index(f4, "y")] == RegisterKind::Constant);
  CHECK(c4.kinds[register_index(f4, "x")] == RegisterKind::Updating);
  CHECK(c4.kinds[register_index(f4, "z")] == RegisterKind::Updating);
  CHECK(c4.simple);
  const auto f2 = fixture_ccra("fig2_left.ccra");
  CHECK(classify_registers(f2).kinds[0] == RegisterKind::Updating);
}

TEST_CASE("classification of a chain after one composition") {
  const auto chain = parse_ccra(R"(psfwb-format ccra v1
states p
initial p
registers x y
alphabet a
init x := 0
init y := 0
on p a -> p
  x := y + 1
  y := 5
output p := x
)");
  const auto c = classify_registers(chain);
  // y is reset to a constant and x reads nothing but y.
  CHECK(c.kinds[1] == RegisterKind::Constant);
  CHECK(c.kinds[0] == RegisterKind::Updating);
  REQUIRE(c.flow.size() == 2);
  CHECK(c.flow[1] == std::vector<std::size_t>{0});
}

TEST_CASE("pump modulus") {
  const auto p2 = pump_modulus(fixture_ccra("fig2_left.ccra"));
  CHECK(p2.factorial_bound == 720);
  CHECK(p2.structural_value == 1);
  const auto p6 = pump_modulus(fixture_ccra("fig6.ccra"));
  CHECK(p6.factorial_bound == factorial(10));
  CHECK(p6.structural_value == 1);
  CHECK(pump_modulus(fixture_ccra("fig7.ccra")).factorial_bound == factorial(10));
}

TEST_CASE("linear fixture matrix powers count") {
  const auto m = fixture_wa("linear.wa").matrix(0);
  // M^n = [[1 - n, -n], [n, n + 1]].
  CHECK(m.pow(BigInt(5))(1, 0) == 5);
}
