#include "psfwb/commands.hpp"

#include <filesystem>
#include <random>

#include "psfwb/ambiguity.hpp"
#include "psfwb/error.hpp"
#include "psfwb/fixtures.hpp"
#include "psfwb/lrs.hpp"

namespace psfwb {

namespace {

std::vector<std::string> strings(const RationalVector& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

RationalVector head(const RationalVector& v, std::size_t n) {
  return RationalVector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(std::min(n, v.size())));
}

constexpr std::size_t kShownTerms = 10;

void describe_recurrence(ReportRecord& rec, const Recurrence& r) {
  rec.set("order", static_cast<long long>(r.order()));
  rec.set("recurrence", strings(r.coefficients));
  rec.set("initial", strings(r.initial));
  rec.set("characteristic_polynomial", characteristic_polynomial(r).to_string("x"));
}

void describe_exppoly(ReportRecord& rec, const Lrs& l) {
  auto q = from_lrs(l);
  if (auto* irr = std::get_if<IrrationalRoots>(&q)) {
    rec.set("exppoly", std::string("irrational roots of ") + irr->polynomial.to_string("x"));
    return;
  }
  const auto& e = std::get<ExpPoly>(q);
  rec.set("exppoly", e.to_string());
  rec.set("valid_from", static_cast<long long>(e.valid_from));
}

}  // namespace

Model parse_model(std::string_view text) {
  auto kind = detect_kind(text);
  if (kind == DocumentKind::Wa) return parse_wa(text);
  if (kind == DocumentKind::Ccra) return parse_ccra(text);
  throw ParseError(1, 1, "expected header 'psfwb-format wa v1' or 'psfwb-format ccra v1'");
}

std::string render_model(const Model& m) {
  if (const auto* a = std::get_if<WeightedAutomaton>(&m)) return render_wa(*a);
  return render_ccra(std::get<Ccra>(m));
}

const Alphabet& model_alphabet(const Model& m) {
  if (const auto* a = std::get_if<WeightedAutomaton>(&m)) return a->alphabet();
  return std::get<Ccra>(m).alphabet();
}

Rational evaluate(const Model& m, const Word& w) {
  if (const auto* a = std::get_if<WeightedAutomaton>(&m)) return evaluate(*a, w);
  return evaluate(std::get<Ccra>(m), w);
}

WeightedAutomaton as_automaton(const Model& m, std::size_t budget) {
  if (const auto* a = std::get_if<WeightedAutomaton>(&m)) return *a;
  return to_weighted_automaton(std::get<Ccra>(m), budget);
}

std::vector<std::string> random_witnesses(const Alphabet& alphabet, std::size_t count, std::uint64_t seed,
                                          std::size_t max_len) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(render_triple(alphabet, random_triple(alphabet, rng, max_len)));
  return out;
}

Report zeroness_report(const Model& m, std::size_t budget) {
  Report r;
  const Alphabet& alphabet = model_alphabet(m);
  auto& rec = r.add("zeroness");
  if (const auto* a = std::get_if<WeightedAutomaton>(&m)) {
    const auto z = zeroness(*a);
    rec.set("zero", z.zero).set("forward_rank", static_cast<long long>(z.forward_rank));
    if (z.witness) {
      r.add("witness").set("word", alphabet.render(*z.witness)).set("value", z.witness_value->get_str());
    }
  } else {
    const auto z = zeroness_ccra(std::get<Ccra>(m), budget);
    rec.set("zero", z.zero).set("dimension", static_cast<long long>(z.dimension));
    if (z.witness) {
      r.add("witness").set("word", alphabet.render(*z.witness)).set("value", z.witness_value->get_str());
    }
  }
  return r;
}

Report equivalence_report(const Model& a, const Model& b, std::size_t budget) {
  Report r;
  if (!(model_alphabet(a) == model_alphabet(b))) {
    throw Error(ErrorCode::AlphabetMismatch, "the two models use different alphabets");
  }
  std::optional<Word> cex;
  bool equivalent = true;
  if (std::holds_alternative<Ccra>(a) && std::holds_alternative<Ccra>(b)) {
    const auto e = equivalence_ccra(std::get<Ccra>(a), std::get<Ccra>(b), budget);
    equivalent = e.equivalent;
    cex = e.counterexample;
  } else {
    const auto e = equivalence(as_automaton(a, budget), as_automaton(b, budget));
    equivalent = e.equivalent;
    cex = e.counterexample;
  }
  r.add("equivalence").set("equivalent", equivalent);
  if (cex) {
    r.add("counterexample")
        .set("word", model_alphabet(a).render(*cex))
        .set("left", evaluate(a, *cex).get_str())
        .set("right", evaluate(b, *cex).get_str());
  }
  return r;
}

Report ambiguity_report(const Model& m) {
  const auto* a = std::get_if<WeightedAutomaton>(&m);
  if (!a) throw Error(ErrorCode::InvalidArgument, "ambiguity is defined for weighted automata");
  std::vector<std::size_t> kept;
  const WeightedAutomaton t = trim(*a, &kept);
  Report r;
  r.add("ambiguity")
      .set("polynomially_ambiguous", is_polynomially_ambiguous(*a))
      .set("states", static_cast<long long>(a->dim()))
      .set("trim_states", static_cast<long long>(t.dim()));
  return r;
}

Report triangularize_report(const Model& m, std::string_view word, std::optional<BigInt> exponent) {
  const auto* a = std::get_if<WeightedAutomaton>(&m);
  if (!a) throw Error(ErrorCode::InvalidArgument, "triangularization is defined for weighted automata");
  const WeightedAutomaton t = trim(*a);
  const Word w = a->alphabet().parse_word(word);
  const auto res = triangularize_power(t, w, exponent);
  Report r;
  std::vector<std::string> perm;
  for (auto i : res.permutation.images()) perm.push_back(std::to_string(i));
  r.add("triangularization")
      .set("word", a->alphabet().render(w))
      .set("exponent", res.exponent.get_str())
      .set("cycle_lcm", cycle_lcm_exponent(t, w).get_str())
      .set("trim_states", static_cast<long long>(t.dim()))
      .set("permutation", perm)
      .set("upper_triangular", res.matrix.is_upper_triangular())
      .set("diagonal", strings(res.diagonal));
  for (std::size_t i = 0; i < res.matrix.rows(); ++i) {
    r.add("row").set("index", static_cast<long long>(i)).set("values", strings(res.matrix.row(i)));
  }
  std::vector<std::string> roots;
  for (const auto& root : psf_characteristic_roots(*a, w, res.exponent)) roots.push_back(root.to_string());
  r.add("roots").set("values", roots);
  return r;
}

PsfElement psf_element(const Model& m, const WordTriple& t, std::optional<std::size_t> horizon) {
  if (const auto* a = std::get_if<WeightedAutomaton>(&m)) return psf_element_wa(*a, t);
  return psf_element_ccra(std::get<Ccra>(m), t, horizon);
}

Report psf_report(const Model& m, std::string_view triple, std::optional<std::size_t> horizon) {
  const WordTriple t = parse_triple(model_alphabet(m), triple);
  const PsfElement e = psf_element(m, t, horizon);
  Report r;
  auto& rec = r.add("psf");
  rec.set("triple", render_triple(model_alphabet(m), t))
      .set("source", std::string(e.source == PsfSource::Automaton ? "automaton" : "ccra"))
      .set("terms", strings(head(e.direct_terms, kShownTerms)))
      .set("checked_terms", static_cast<long long>(e.direct_terms.size()));
  describe_recurrence(rec, *e.sequence.rec_form);
  describe_exppoly(rec, e.sequence);
  return r;
}

Report subsample_report(const Model& m, std::string_view triple, std::size_t step) {
  const WordTriple t = parse_triple(model_alphabet(m), triple);
  const Lrs l = subsample(psf_element(m, t), step);
  Report r;
  auto& rec = r.add("subsample");
  rec.set("triple", render_triple(model_alphabet(m), t))
      .set("step", static_cast<long long>(step))
      .set("terms", strings(terms(l, kShownTerms)));
  describe_recurrence(rec, minimal_form(l));
  describe_exppoly(rec, l);
  return r;
}

ExpPoly exppoly_of_witness(const Model& m, std::string_view triple, std::size_t step) {
  const WordTriple t = parse_triple(model_alphabet(m), triple);
  return require_exppoly(subsample(psf_element(m, t), step));
}

ExpPoly exppoly_of_sequence(const SequenceDocument& s, std::size_t margin) {
  return require_exppoly(Lrs::from_recurrence(require_minimal_recurrence(s.terms, margin)));
}

Report exppoly_report(const ExpPoly& q, std::optional<std::uint64_t> modulus) {
  Report r;
  r.add("exppoly")
      .set("value", q.to_string())
      .set("valid_from", static_cast<long long>(q.valid_from))
      .set("max_degree", static_cast<long long>(max_degree(q)));
  if (!q.terms.empty()) {
    for (std::size_t k = 0; k <= max_degree(q); ++k) {
      r.add("coeffsum").set("k", static_cast<long long>(k)).set("value", coeff_sum(q, k).get_str());
    }
  }
  if (modulus) {
    const FpExpPoly image = to_fp(q, *modulus);
    const FpExpPoly reduced = minimal_degree_reduce(image);
    std::vector<std::string> sums;
    for (std::size_t k = 0; k < *modulus; ++k) {
      sums.push_back(std::to_string(coeff_sum(reduced, k).residue()));
    }
    r.add("exppoly_mod_p")
        .set("modulus", static_cast<long long>(*modulus))
        .set("image", image.to_string())
        .set("minimal_degree", reduced.to_string())
        .set("coeffsums", sums);
  }
  return r;
}

RGenerators parse_generators(std::string_view text) {
  RGenerators g;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    auto item = text.substr(start, comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) throw Error(ErrorCode::InvalidArgument, "empty entry in generator list '" + std::string(text) + "'");
    g.constants.insert(parse_rational(item));
    start = comma + 1;
  }
  return g;
}

namespace {

void add_sums(Report& r, const std::vector<CoeffSumVerdict>& sums, const std::string& triple) {
  for (const auto& s : sums) {
    auto& rec = r.add("coeffsum");
    if (!triple.empty()) rec.set("triple", triple);
    rec.set("k", static_cast<long long>(s.k)).set("value", s.value.get_str()).set("pass", s.pass);
    if (s.witness_prime) {
      std::vector<std::string> primes;
      for (const auto& p : s.offending_primes) primes.push_back(p.get_str());
      rec.set("witness_prime", s.witness_prime->get_str()).set("offending_primes", primes);
    }
  }
}

std::vector<std::string> gens_strings(const RGenerators& g) {
  std::vector<std::string> out;
  for (const auto& c : g.constants) out.push_back(c.get_str());
  return out;
}

}  // namespace

Report coeffsums_report(const ExpPoly& q, const RGenerators& gens, const std::vector<std::size_t>& ks) {
  Report r;
  const auto sums = coeff_sums_in_semiring(q, gens, ks);
  r.add("exppoly").set("value", q.to_string()).set("generators", gens_strings(gens));
  add_sums(r, sums, "");
  const bool pass = std::all_of(sums.begin(), sums.end(), [](const CoeffSumVerdict& v) { return v.pass; });
  r.add("verdict").set("pass", pass);
  return r;
}

Report obstruct_ccra_report(const Model& f, const std::vector<std::string>& witnesses, std::size_t step,
                            const RGenerators& gens, const std::vector<std::size_t>& ks) {
  const WeightedAutomaton a = as_automaton(f);
  std::vector<WordTriple> triples;
  for (const auto& w : witnesses) triples.push_back(parse_triple(a.alphabet(), w));
  const auto rep = ccra_obstruction_report(a, triples, step, gens, ks);
  Report r;
  r.add("obstruct-ccra").set("step", static_cast<long long>(step)).set("generators", gens_strings(gens));
  for (const auto& w : rep.witnesses) {
    const std::string triple = render_triple(a.alphabet(), w.triple);
    r.add("witness").set("triple", triple).set("exppoly", w.eps.to_string());
    add_sums(r, w.sums, triple);
  }
  std::vector<std::string> primes;
  for (const auto& p : rep.offending_primes) primes.push_back(p.get_str());
  r.add("verdict").set("verdict", std::string(verdict_name(rep.verdict))).set("offending_primes", primes);
  return r;
}

Report obstruct_pa_report(const Model& f, const std::vector<std::string>& witnesses) {
  std::vector<WordTriple> triples;
  for (const auto& w : witnesses) triples.push_back(parse_triple(model_alphabet(f), w));
  const PaObstructionReport rep = std::holds_alternative<Ccra>(f)
                                      ? pa_obstruction_report(std::get<Ccra>(f), triples)
                                      : pa_obstruction_report(std::get<WeightedAutomaton>(f), triples);
  Report r;
  r.add("obstruct-pa").set("witnesses", static_cast<long long>(triples.size()));
  auto primes = [](const std::set<BigInt>& s) {
    std::vector<std::string> out;
    for (const auto& p : s) out.push_back(p.get_str());
    return out;
  };
  for (const auto& w : rep.witnesses) {
    auto& rec = r.add("witness");
    rec.set("triple", render_triple(model_alphabet(f), w.triple));
    if (w.skipped) {
      rec.set("skipped", true).set("notice", w.notice);
    } else {
      rec.set("roots", strings(w.roots));
    }
    rec.set("support", primes(w.cumulative_support));
  }
  r.add("verdict").set("verdict", std::string(verdict_name(rep.verdict))).set("support", primes(rep.support));
  return r;
}

Report reduction_report(const ReductionOutput& out) {
  Report r;
  r.add("reduction")
      .set("ell", static_cast<long long>(out.ell))
      .set("states", static_cast<long long>(out.ccra.state_count()))
      .set("registers", static_cast<long long>(out.ccra.register_count()))
      .set("layout", out.layout);
  return r;
}

Report qbf_solve_report(const Qbf& q) {
  const ReductionOutput red = qbf_to_ccra(q);
  const QbfDecision d = decide_via_ccra(q, red);
  const bool oracle = brute_force_qbf(q);
  if (oracle != d.valid) {
    throw Error(ErrorCode::InvalidArgument, "the reduction and the brute-force oracle disagree");
  }
  Report r;
  auto& rec = r.add("qbf-solve");
  rec.set("k", static_cast<long long>(q.k))
      .set("verdict", std::string(d.valid ? "VALID" : "INVALID"))
      .set("brute_force", oracle)
      .set("candidates", static_cast<long long>(d.candidates_evaluated))
      .set("ell", static_cast<long long>(red.ell))
      .set("registers", static_cast<long long>(red.ccra.register_count()));
  if (d.word) {
    rec.set("word", red.ccra.alphabet().render(*d.word));
    rec.set("output", evaluate(red.ccra, *d.word).get_str());
  }
  return r;
}

Report examples_report(const std::optional<std::string>& directory) {
  Report r;
  if (directory) std::filesystem::create_directories(*directory);
  for (const auto& f : bundled_fixtures()) {
    auto& rec = r.add("fixture");
    rec.set("file", f.file).set("kind", std::string(document_kind_name(f.kind))).set("description", f.description);
    if (f.kind == DocumentKind::Wa || f.kind == DocumentKind::Ccra) {
      const Model m = parse_model(f.text);
      const Rational value = evaluate(m, model_alphabet(m).parse_word(f.headline_word));
      rec.set("word", f.headline_word).set("expected", f.headline_value).set("value", value.get_str());
      rec.set("match", value == parse_rational(f.headline_value));
    } else {
      const Qbf q = parse_qbf_document(f.text);
      rec.set("valid", brute_force_qbf(q));
    }
    if (directory) {
      const std::string path = (std::filesystem::path(*directory) / f.file).string();
      write_file(path, f.text);
      rec.set("path", path);
    }
  }
  return r;
}

}  // namespace psfwb
