#include "psfwb/psf.hpp"

#include <algorithm>
#include <variant>

#include "psfwb/ambiguity.hpp"
#include "psfwb/error.hpp"

namespace psfwb {

namespace {

Word pumped(const WordTriple& t, std::size_t n) {
  Word out = t.u;
  for (std::size_t i = 0; i < n; ++i) out.insert(out.end(), t.w.begin(), t.w.end());
  out.insert(out.end(), t.v.begin(), t.v.end());
  return out;
}

void require_pumpable(const Alphabet& alphabet, const WordTriple& t) {
  if (t.w.empty()) throw Error(ErrorCode::InvalidArgument, "the pumped word must be nonempty");
  for (const Word* part : {&t.u, &t.w, &t.v}) {
    for (auto letter : *part) {
      if (letter >= alphabet.size()) throw Error(ErrorCode::UnknownLetter, "letter index out of range");
    }
  }
}

struct Config {
  std::size_t state;
  RationalVector registers;
};

void advance(const Ccra& c, Config& cfg, const Word& w) {
  for (auto letter : w) {
    const auto& tr = c.transition(cfg.state, letter);
    cfg.registers = tr.update.apply(cfg.registers);
    cfg.state = tr.target;
  }
}

Rational output_after(const Ccra& c, Config cfg, const Word& v) {
  advance(c, cfg, v);
  return c.nu()[cfg.state].eval(cfg.registers);
}

/// g(stride (n + offset)) for n < count, where g(j) = f(u w^j v).
RationalVector ccra_terms(const Ccra& c, const WordTriple& t, std::size_t count, std::size_t stride,
                          std::size_t offset) {
  Config cfg{c.initial_state(), c.mu()};
  advance(c, cfg, t.u);
  for (std::size_t i = 0; i < stride * offset; ++i) advance(c, cfg, t.w);
  RationalVector out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    out.push_back(output_after(c, cfg, t.v));
    if (n + 1 < count) {
      for (std::size_t i = 0; i < stride; ++i) advance(c, cfg, t.w);
    }
  }
  return out;
}

Alphabet unary() { return Alphabet({"a"}); }

}  // namespace

WordTriple parse_triple(const Alphabet& alphabet, std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
  if (parts.size() != 3) {
    throw Error(ErrorCode::InvalidArgument, "a witness is written u,w,v (use eps for the empty word)");
  }
  return WordTriple{alphabet.parse_word(parts[0]), alphabet.parse_word(parts[1]), alphabet.parse_word(parts[2])};
}

std::string render_triple(const Alphabet& alphabet, const WordTriple& t) {
  return alphabet.render(t.u) + "," + alphabet.render(t.w) + "," + alphabet.render(t.v);
}

WordTriple random_triple(const Alphabet& alphabet, std::mt19937_64& rng, std::size_t max_len) {
  if (alphabet.size() == 0) throw Error(ErrorCode::InvalidArgument, "empty alphabet");
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pumped_len(1, std::max<std::size_t>(1, max_len));
  std::uniform_int_distribution<std::size_t> letter(0, alphabet.size() - 1);
  auto word = [&](std::size_t n) {
    Word w(n);
    for (auto& x : w) x = letter(rng);
    return w;
  };
  WordTriple t;
  t.u = word(len(rng));
  t.w = word(pumped_len(rng));
  t.v = word(len(rng));
  return t;
}

PsfElement psf_element_wa(const WeightedAutomaton& a, const WordTriple& t) {
  require_pumpable(a.alphabet(), t);
  const RationalVector init = a.forward(t.u);
  const RationalVector fin = a.word_matrix(t.v) * a.final_weights();
  WeightedAutomaton one(a.dim(), unary(), {a.word_matrix(t.w)}, init, fin);

  PsfElement e;
  e.triple = t;
  e.source = PsfSource::Automaton;
  e.sequence = from_1letter_wa(one);
  e.horizon = std::max<std::size_t>(7, 4 * a.dim());
  e.direct_terms.reserve(e.horizon);
  for (std::size_t n = 0; n < e.horizon; ++n) e.direct_terms.push_back(evaluate(a, pumped(t, n)));
  if (recurrence_terms(*e.sequence.rec_form, e.horizon) != e.direct_terms) {
    throw Error(ErrorCode::InsufficientData, "recovered sequence disagrees with direct evaluation");
  }
  return e;
}

std::size_t default_psf_horizon(const Ccra& c) {
  auto dim = translation_dimension(c);
  if (!dim || *dim > (SIZE_MAX - 4) / 4) return SIZE_MAX;
  return 4 * *dim + 4;
}

PsfElement psf_element_ccra(const Ccra& c, const WordTriple& t, std::optional<std::size_t> horizon,
                            std::size_t budget) {
  require_pumpable(c.alphabet(), t);
  PsfElement e;
  e.triple = t;
  e.source = PsfSource::Ccra;
  e.ccra = std::make_shared<const Ccra>(c);
  e.horizon = horizon.value_or(default_psf_horizon(c));
  if (e.horizon == SIZE_MAX) {
    throw Error(ErrorCode::SizeGuard, "the default horizon overflows; pass an explicit horizon");
  }
  e.direct_terms = ccra_terms(c, t, e.horizon, 1, 0);
  e.sequence = Lrs::from_recurrence(require_minimal_recurrence(e.direct_terms));

  auto dim = translation_dimension(c);
  if (dim && *dim <= budget) {
    const WeightedAutomaton wa = to_weighted_automaton(c, budget);
    WeightedAutomaton one(wa.dim(), unary(), {wa.word_matrix(t.w)}, wa.forward(t.u),
                          wa.word_matrix(t.v) * wa.final_weights());
    if (terms(Lrs::from_automaton(one), e.horizon) != e.direct_terms) {
      throw Error(ErrorCode::InsufficientData, "the automaton route disagrees with direct evaluation");
    }
  }
  return e;
}

Lrs subsample(const PsfElement& e, std::size_t m) {
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "the subsampling step must be at least 1");
  if (e.sequence.wa_form) {
    const auto& one = *e.sequence.wa_form;
    const RatMatrix step = one.matrix(0).pow(BigInt(static_cast<unsigned long>(m)));
    WeightedAutomaton sub(one.dim(), unary(), {step}, one.initial() * step, one.final_weights());
    return from_1letter_wa(sub);
  }
  if (e.ccra) {
    return Lrs::from_recurrence(require_minimal_recurrence(ccra_terms(*e.ccra, e.triple, e.horizon, m, 1)));
  }
  const Recurrence& r = *e.sequence.rec_form;
  const std::size_t count = std::max<std::size_t>(e.horizon, 2 * r.order() + 4);
  const RationalVector all = recurrence_terms(r, m * (count + 1));
  RationalVector picked;
  for (std::size_t n = 0; n < count; ++n) picked.push_back(all[m * (n + 1)]);
  return Lrs::from_recurrence(require_minimal_recurrence(picked));
}

const char* verdict_name(Verdict v) {
  return v == Verdict::Obstructed ? "OBSTRUCTED" : "NOT-OBSTRUCTED-BY-THIS-TEST";
}

CcraObstructionReport ccra_obstruction_report(const WeightedAutomaton& f, const std::vector<WordTriple>& witnesses,
                                              std::size_t m, const RGenerators& gens,
                                              const std::vector<std::size_t>& ks) {
  std::set<BigInt> allowed;
  for (const auto& g : gens.constants) {
    if (g == 0 || g.get_den() == 1) continue;
    for (const auto& [p, e] : factor_integer(g.get_den())) allowed.insert(p);
  }
  CcraObstructionReport report;
  for (const auto& t : witnesses) {
    CoeffSumWitnessReport w;
    w.triple = t;
    w.eps = require_exppoly(subsample(psf_element_wa(f, t), m));
    w.sums = coeff_sums_in_semiring(w.eps, gens, ks);
    for (const auto& s : w.sums) {
      if (s.pass) continue;
      for (const auto& [p, e] : factor_integer(s.value.get_den())) {
        if (!allowed.count(p)) report.offending_primes.insert(p);
      }
    }
    report.witnesses.push_back(std::move(w));
  }
  report.verdict = report.offending_primes.empty() ? Verdict::NotObstructed : Verdict::Obstructed;
  return report;
}

namespace {

template <typename MakeElement>
PaObstructionReport collect_roots(const std::vector<WordTriple>& witnesses, MakeElement make) {
  PaObstructionReport report;
  bool seen_roots = false;
  for (const auto& t : witnesses) {
    RootWitnessReport w;
    w.triple = t;
    std::optional<PsfElement> e;
    try {
      e = make(t);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::InsufficientData) throw;
      w.skipped = true;
      w.notice = err.what();
    }
    if (e) {
      auto extracted = from_lrs(e->sequence);
      if (auto* irr = std::get_if<IrrationalRoots>(&extracted)) {
        w.skipped = true;
        w.notice = "characteristic polynomial " + irr->polynomial.to_string("x") + " has irrational roots";
      } else {
        for (const auto& [base, poly] : std::get<ExpPoly>(extracted).terms) {
          if (base != 0) w.roots.push_back(base);
        }
      }
    }
    if (!w.roots.empty()) {
      const auto primes = prime_support_report(w.roots);
      const bool grows = std::any_of(primes.begin(), primes.end(),
                                     [&](const BigInt& p) { return !report.support.count(p); });
      if (seen_roots && grows) report.verdict = Verdict::Obstructed;
      report.support.insert(primes.begin(), primes.end());
      seen_roots = true;
    }
    w.cumulative_support = report.support;
    report.witnesses.push_back(std::move(w));
  }
  return report;
}

}  // namespace

PaObstructionReport pa_obstruction_report(const WeightedAutomaton& f, const std::vector<WordTriple>& witnesses) {
  return collect_roots(witnesses, [&](const WordTriple& t) { return psf_element_wa(f, t); });
}

PaObstructionReport pa_obstruction_report(const Ccra& f, const std::vector<WordTriple>& witnesses) {
  return collect_roots(witnesses, [&](const WordTriple& t) { return psf_element_ccra(f, t); });
}

BigInt position_sum(const std::vector<int>& bits) {
  BigInt total = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) total += static_cast<unsigned long>(i + 1);
  }
  return total;
}

QuadraticForm example24_closed_form(const std::vector<int>& u, const std::vector<int>& w, const std::vector<int>& v) {
  const long r = static_cast<long>(u.size());
  const long t = static_cast<long>(w.size());
  Rational ones_w = 0, weighted_w = 0, ones_v = 0, d = 0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (u[j]) d += static_cast<long>(j + 1);
  }
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (!w[j]) continue;
    ones_w += 1;
    weighted_w += r + static_cast<long>(j + 1);
  }
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (!v[j]) continue;
    ones_v += 1;
    d += r + static_cast<long>(j + 1);
  }
  const Rational half_tw = Rational(t) * ones_w / 2;
  QuadraticForm q;
  q.a2 = half_tw;
  q.a1 = Rational(t) * ones_v + weighted_w - half_tw;
  q.a0 = d;
  return q;
}

bool example24_formula_check(const std::vector<int>& u, const std::vector<int>& w, const std::vector<int>& v) {
  const QuadraticForm q = example24_closed_form(u, w, v);
  for (const auto* c : {&q.a2, &q.a1, &q.a0}) {
    if (!is_integer(*c * 2)) return false;
  }
  for (long n = 0; n <= 10; ++n) {
    std::vector<int> word = u;
    for (long i = 0; i < n; ++i) word.insert(word.end(), w.begin(), w.end());
    word.insert(word.end(), v.begin(), v.end());
    const Rational closed = q.a2 * n * n + q.a1 * n + q.a0;
    if (closed != Rational(position_sum(word))) return false;
  }
  return true;
}

}  // namespace psfwb
