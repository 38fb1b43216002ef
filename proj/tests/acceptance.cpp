// Acceptance checks. Prints one [PASS] or [FAIL] line per criterion and
// exits nonzero when any criterion fails.

#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "circuits.hpp"
#include "psfwb/ambiguity.hpp"
#include "psfwb/ccra.hpp"
#include "psfwb/eps.hpp"
#include "psfwb/error.hpp"
#include "psfwb/fixtures.hpp"
#include "psfwb/lrs.hpp"
#include "psfwb/psf.hpp"
#include "psfwb/qbf.hpp"
#include "psfwb/wa.hpp"
#include "support.hpp"

using namespace psfwb;
using testing_support::kSeed;
using testing_support::pow_q;

namespace {

/// Collects the first mismatch so a failing line says what went wrong.
struct Check {
  std::string detail;
  bool ok = true;

  bool expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
    return cond;
  }
};

std::string str(const Rational& q) { return q.get_str(); }

Rational num(std::size_t n) { return Rational(static_cast<long>(n)); }

ExpPoly exppoly_of_witness(const Ccra& c, const WordTriple& t) {
  return require_exppoly(subsample(psf_element_ccra(c, t), 1));
}

Word pumped(std::size_t k) {
  Word w(k, 0);
  w.push_back(1);
  return w;
}

void fig1_values(Check& c) {
  const auto a = fixture_wa("fig1a.wa");
  const auto b = fixture_wa("fig1b.wa");
  for (std::size_t n = 0; n <= 20; ++n) {
    const Word w(n, 0);
    const Rational expected_a = n % 2 == 0 ? pow_q(3, n) : pow_q(2, n);
    c.expect(evaluate(a, w) == expected_a, "fig1a at n=" + std::to_string(n) + " gave " + str(evaluate(a, w)));
    c.expect(evaluate(b, w) == num(n), "fig1b at n=" + std::to_string(n) + " gave " + str(evaluate(b, w)));
  }
}

void fig2_numbers(Check& c) {
  const auto left = fixture_ccra("fig2_left.ccra");
  const auto right = fixture_ccra("fig2_right.ccra");
  const WordTriple t{{}, {0}, {}};
  const auto ql = exppoly_of_witness(left, t);
  ExpPoly expected;
  expected.terms[Rational(3)] = UniPoly({Rational(3, 2)});
  expected.terms[Rational(1)] = UniPoly({Rational(-1, 2)});
  c.expect(ql == expected, "left EPS is " + ql.to_string());
  c.expect(coeff_sum(ql, 0) == 1, "left S0 is " + str(coeff_sum(ql, 0)));
  const auto qr = exppoly_of_witness(right, t);
  c.expect(coeff_sum(qr, 1) == 6, "right S1 is " + str(coeff_sum(qr, 1)));
  c.expect(coeff_sum(qr, 0) == 45, "right S0 is " + str(coeff_sum(qr, 0)));
}

void fig5_pipeline(Check& c) {
  const auto f = fixture_wa("fig5.wa");
  // The transition weights of Fig 5.
  const RGenerators gens{{1, 2}};
  std::vector<WordTriple> witnesses;
  for (std::size_t k : {2, 4, 6}) {
    const WordTriple t{{}, pumped(k), {}};
    witnesses.push_back(t);
    const Rational r = pow_q(2, k);
    // Direct summation of j k 2^{jk} for j = 1..n.
    Rational running = 0;
    const auto e = psf_element_wa(f, t);
    for (std::size_t n = 0; n <= 6; ++n) {
      if (n > 0) running += num(n) * num(k) * pow_q(r, n);
      Word w;
      for (std::size_t i = 0; i < n; ++i) w.insert(w.end(), t.w.begin(), t.w.end());
      c.expect(evaluate(f, w) == running, "fig5 value on (a^" + std::to_string(k) + "b)^" + std::to_string(n));
    }
    const auto q = require_exppoly(subsample(e, 1));
    for (std::size_t n = 0; n + 1 <= 6; ++n) {
      Rational direct = 0;
      for (std::size_t j = 1; j <= n + 1; ++j) direct += num(j) * num(k) * pow_q(r, j);
      c.expect(eval(q, n) == direct, "EPS disagrees with direct summation at k=" + std::to_string(k));
    }
    const Rational closed = num(k) * pow_q(2, 2 * k) / (r - 1);
    c.expect(coeff_sum(q, 1) == closed,
             "S1 at k=" + std::to_string(k) + " is " + str(coeff_sum(q, 1)) + ", closed form " + str(closed));
  }
  const auto report = ccra_obstruction_report(f, witnesses, 1, gens, {1});
  c.expect(report.verdict == Verdict::Obstructed, "fig5 verdict not OBSTRUCTED");
  c.expect(report.offending_primes == std::set<BigInt>{3, 5, 7}, "fig5 offending primes differ from {3, 5, 7}");
  for (std::size_t i = 0; i < report.witnesses.size(); ++i) {
    const auto& sums = report.witnesses[i].sums;
    // p = k + 1 divides 2^k - 1 by Fermat, so it appears in den(S_1).
    const BigInt p = 2 * i + 3;
    bool found = false;
    for (const auto& s : sums) {
      for (const auto& q : s.offending_primes) found = found || q == p;
    }
    c.expect(found, "prime k+1 missing for k=" + std::to_string(2 * i + 2));
  }
}

bool is_prime_index(std::size_t k) {
  for (std::size_t d = 2; d * d <= k; ++d) {
    if (k % d == 0) return false;
  }
  return k >= 2;
}

void fig7_pipeline(Check& c) {
  const auto f = fixture_ccra("fig7.ccra");
  std::vector<WordTriple> witnesses;
  for (std::size_t k = 2; k <= 11; ++k) witnesses.push_back(WordTriple{{}, pumped(k), {}});
  const auto report = pa_obstruction_report(f, witnesses);
  std::set<BigInt> previous;
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    const std::size_t k = i + 2;
    const auto& w = report.witnesses.at(i);
    c.expect(!w.skipped && w.roots == std::vector<Rational>{num(k)}, "roots for k=" + std::to_string(k));
    bool contains_previous = true;
    for (const auto& p : previous) contains_previous = contains_previous && w.cumulative_support.count(p) > 0;
    c.expect(contains_previous, "support shrank at k=" + std::to_string(k));
    // A prime k brings a prime that no smaller root has.
    if (is_prime_index(k)) {
      c.expect(w.cumulative_support.size() > previous.size(), "support did not grow at prime k=" + std::to_string(k));
    }
    previous = w.cumulative_support;
  }
  c.expect(report.support == std::set<BigInt>{2, 3, 5, 7, 11}, "final support differs from {2, 3, 5, 7, 11}");
  c.expect(report.verdict == Verdict::Obstructed, "fig7 verdict not OBSTRUCTED");
}

void translation_agreement(Check& c) {
  std::mt19937_64 rng(kSeed + 100);
  for (const char* file : {"fig2_left.ccra", "fig2_right.ccra", "fig6.ccra", "fig7.ccra"}) {
    const auto ccra = fixture_ccra(file);
    const auto wa = to_weighted_automaton(ccra);
    for (int i = 0; i < 1000; ++i) {
      const auto w = testing_support::random_word(rng, ccra.alphabet().size(), 12);
      c.expect(evaluate(wa, w) == evaluate(ccra, w),
               std::string(file) + " disagrees on " + ccra.alphabet().render(w));
    }
  }
}

void zeroness_property(Check& c) {
  std::mt19937_64 rng(kSeed + 200);
  std::size_t nonzero = 0;
  for (int i = 0; i < 500; ++i) {
    const auto a = testing_support::random_automaton(rng, 4, 2);
    bool all_zero = true;
    for (const auto& w : testing_support::words_up_to(a.alphabet().size(), a.dim() - 1)) {
      all_zero = all_zero && evaluate(a, w) == 0;
    }
    const auto r = zeroness(a);
    c.expect(r.zero == all_zero, "verdict mismatch on random automaton " + std::to_string(i));
    if (!r.zero) {
      ++nonzero;
      c.expect(r.witness && r.witness_value && *r.witness_value != 0 && evaluate(a, *r.witness) == *r.witness_value,
               "witness does not validate on random automaton " + std::to_string(i));
    }
  }
  c.expect(nonzero > 0 && nonzero < 500, "random sample has only one verdict");
}

void triangularization(Check& c) {
  const auto a = trim(fixture_wa("fig5.wa"));
  const auto w = a.alphabet().parse_word("ab");
  const auto t = triangularize_power(a, w, BigInt(6));
  c.expect(t.matrix.is_upper_triangular(), "conjugated matrix not upper triangular");
  const RatMatrix m6 = a.word_matrix(w).pow(BigInt(6));
  const RatMatrix conj = t.permutation.matrix() * m6 * t.permutation.inverse().matrix();
  const RatMatrix conj_alt = t.permutation.inverse().matrix() * m6 * t.permutation.matrix();
  c.expect(conj == t.matrix || conj_alt == t.matrix, "matrix is not a conjugate of M(ab)^6");
  for (const auto& d : t.diagonal) {
    if (d == 0) continue;
    bool power_of_two = is_integer(d) && d > 0;
    BigInt v = d.get_num();
    while (power_of_two && v % 2 == 0) v /= 2;
    c.expect(power_of_two && v == 1, "diagonal entry " + str(d) + " is not a power of 2");
  }
  try {
    triangularize_power(fixture_wa("eda.wa"), Word{0, 0});
    c.expect(false, "eda.wa triangularised without error");
  } catch (const Error& e) {
    c.expect(e.code() == ErrorCode::CycleOfLengthAtLeastTwo, "eda.wa raised " + std::string(e.what()));
  }
}

ExpPoly random_exppoly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 3), degree(0, 3), coeff(-5, 5), base(-4, 5), den(1, 3);
  ExpPoly q;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    int b = base(rng);
    if (b == 0) b = 1;
    std::vector<Rational> cs;
    const int d = degree(rng);
    for (int j = 0; j <= d; ++j) {
      Rational x(coeff(rng), den(rng));
      x.canonicalize();
      cs.push_back(x);
    }
    q.terms[Rational(b)] = q.terms[Rational(b)] + UniPoly(cs);
  }
  q.normalize();
  return q;
}

void product_rule(Check& c) {
  std::mt19937_64 rng(kSeed + 300);
  for (int i = 0; i < 300; ++i) {
    const auto q = random_exppoly(rng);
    const auto r = random_exppoly(rng);
    const auto qr = mul(q, r);
    for (std::size_t k = 0; k <= 6; ++k) {
      Rational expected = 0;
      for (std::size_t j = 0; j <= k; ++j) expected += coeff_sum(q, j) * coeff_sum(r, k - j);
      c.expect(coeff_sum(qr, k) == expected, "pair " + std::to_string(i) + " at k=" + std::to_string(k));
    }
  }
}

std::vector<bool> bits(std::size_t value, std::size_t n) {
  std::vector<bool> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = (value >> i) & 1;
  return out;
}

void qbf_reduction(Check& c) {
  std::size_t k1 = 0, valid = 0;
  for (const auto& m : testing_support::circuits_up_to(5, 2, true)) {
    const Qbf q{1, m};
    const bool expected = brute_force_qbf(q);
    c.expect(decide_via_ccra(q).valid == expected, "k=1 formula " + m.to_prefix(q.variable_names()));
    ++k1;
    valid += expected ? 1 : 0;
  }
  c.expect(k1 >= 100, "only " + std::to_string(k1) + " k=1 formulas");
  c.expect(valid > 0 && valid < k1, "k=1 sample has only one verdict");

  std::mt19937_64 rng(kSeed + 400);
  for (int i = 0; i < 50; ++i) {
    const Qbf q{2, testing_support::random_circuit(rng, 4, 6)};
    const auto d = decide_via_ccra(q);
    c.expect(d.valid == brute_force_qbf(q), "k=2 formula " + q.matrix.to_prefix(q.variable_names()));
    if (d.word) {
      const auto reduction = qbf_to_ccra(q);
      c.expect(evaluate(reduction.ccra, *d.word) != 0, "k=2 witness word evaluates to 0");
    }
  }

  const std::size_t vars = 4, copies = 6;
  for (const auto& circuit : testing_support::circuits_up_to(6, vars, false)) {
    const auto t = formula_to_polynomial(circuit, vars, copies);
    for (std::size_t m = 0; m < 16; ++m) {
      const auto a = bits(m, vars);
      RationalVector regs(copies * vars);
      for (std::size_t k = 0; k < copies; ++k) {
        for (std::size_t v = 0; v < vars; ++v) regs[k * vars + v] = a[v] ? 1 : 0;
      }
      c.expect(t.polynomial.eval(regs) == (circuit.eval(a) ? 1 : 0),
               "polynomial disagrees with " + circuit.to_prefix({"a", "b", "c", "d"}));
    }
  }
}

FpExpPoly fp_single(std::uint64_t p, std::uint64_t base, std::vector<std::uint64_t> coeffs) {
  FpExpPoly q;
  q.modulus = p;
  q.terms.emplace(base, FpPoly(p, std::move(coeffs)));
  return q;
}

void characteristic_p(Check& c) {
  const auto f8 = fixture_ccra("fig8.ccra");
  RationalVector seq;
  for (std::size_t n = 0; n < 12; ++n) seq.push_back(evaluate(f8, Word(n, 0)));
  const auto q = require_exppoly(Lrs::from_recurrence(require_minimal_recurrence(seq)));
  c.expect(q.terms.size() == 1 && q.terms.count(Rational(1)) &&
               q.terms.at(Rational(1)) == UniPoly({1, 0, 1, 1}),
           "fig8 EPS is " + q.to_string());
  const auto r = minimal_degree_reduce(to_fp(q, 3));
  c.expect(r.terms.count(1) && r.terms.at(1) == FpPoly(3, {1, 1, 1}), "reduction is " + r.to_string());
  for (std::size_t k = 0; k < 3; ++k) c.expect(coeff_sum(r, k).residue() == 1, "S" + std::to_string(k) + " not 1");

  for (std::uint64_t p : {2, 3, 5}) {
    std::vector<std::uint64_t> high(p + 1, 0);
    high[0] = 1;
    high[1] = 1;
    high[p] = 1;
    const auto a = fp_single(p, 1, high);
    const auto b = fp_single(p, 1, {1, 2 % p});
    for (std::uint64_t n = 0; n < 2 * p; ++n) c.expect(eval(a, n) == eval(b, n), "pair differs pointwise");
    c.expect(charp_sum_invariants(a, b), "invariants fail for p=" + std::to_string(p));
  }

  std::vector<FpScalar> tri;
  for (std::uint64_t n = 0; n < 8; ++n) tri.emplace_back((n * (n + 1) / 2) % 2, 2);
  c.expect(!is_pointwise_representable_mod_p(tri), "triangular numbers mod 2 reported representable");
}

void binary_value(Check& c) {
  const auto bin = fixture_wa("binary.wa");
  std::mt19937_64 rng(kSeed + 500);
  for (int i = 0; i < 20; ++i) {
    const auto t = random_triple(bin.alphabet(), rng, 6);
    const auto q = require_exppoly(subsample(psf_element_wa(bin, t), 1));
    for (const auto& [base, poly] : q.terms) {
      c.expect(poly.degree() <= 0, "non-constant polynomial for " + render_triple(bin.alphabet(), t));
      c.expect(base == 1 || base == pow_q(2, t.w.size()), "base " + str(base) + " for " + render_triple(bin.alphabet(), t));
    }
  }
}

bool half_integer(const Rational& x) { return is_integer(x * 2); }

void position_sums(Check& c) {
  const auto a = fixture_wa("position_sum.wa");
  std::mt19937_64 rng(kSeed + 600);
  auto to_bits = [](const Word& w) { return std::vector<int>(w.begin(), w.end()); };
  for (int i = 0; i < 50; ++i) {
    const auto t = random_triple(a.alphabet(), rng, 6);
    const auto u = to_bits(t.u), w = to_bits(t.w), v = to_bits(t.v);
    const auto label = render_triple(a.alphabet(), t);
    c.expect(example24_formula_check(u, w, v), "formula check fails for " + label);
    const auto closed = example24_closed_form(u, w, v);
    const auto q = require_exppoly(psf_element_wa(a, t).sequence);
    c.expect(q.terms.size() <= 1, "more than one base for " + label);
    const UniPoly p = q.terms.empty() ? UniPoly() : q.terms.begin()->second;
    c.expect(q.terms.empty() || q.terms.begin()->first == 1, "base other than 1 for " + label);
    c.expect(p.coefficient(2) == closed.a2 && p.coefficient(1) == closed.a1 && p.coefficient(0) == closed.a0,
             "extracted polynomial differs from the closed form for " + label);
    for (std::size_t k = 0; k <= 2; ++k) {
      c.expect(half_integer(p.coefficient(k)), "coefficient " + str(p.coefficient(k)) + " not in Z/2 for " + label);
    }
  }
}

struct Criterion {
  int id;
  const char* description;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Fig 1a and Fig 1b values for n <= 20", fig1_values},
      {2, "Fig 2 left and right exponential polynomials and coefficient sums", fig2_numbers},
      {3, "Fig 5 coefficient sums, witness primes {3,5,7}, OBSTRUCTED", fig5_pipeline},
      {4, "Fig 7 characteristic roots k = 2..11, growing support, OBSTRUCTED", fig7_pipeline},
      {5, "CCRA to WA translation agrees on 1000 random words per fixture", translation_agreement},
      {6, "zeroness agrees with exhaustive evaluation on 500 random automata", zeroness_property},
      {7, "Fig 5 triangularisation on ab and the EDA counter-fixture", triangularization},
      {8, "coefficient-sum product rule on 300 random pairs", product_rule},
      {9, "QBF reduction against brute force and formula polynomials", qbf_reduction},
      {10, "characteristic-p reduction, sum invariants and representability", characteristic_p},
      {11, "binary-value automaton has constant polynomials", binary_value},
      {12, "position-sum closed form on 50 random triples", position_sums},
  };
  int failures = 0;
  for (const auto& criterion : criteria) {
    Check c;
    try {
      criterion.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::ostringstream line;
    line << (c.ok ? "[PASS] " : "[FAIL] ") << criterion.id << ' ' << criterion.description;
    if (!c.ok) line << " (" << c.detail << ")";
    std::puts(line.str().c_str());
    failures += c.ok ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
