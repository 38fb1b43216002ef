#include "psfwb/psfwb.h"

#include <cstring>
#include <sstream>
#include <string>

#include "psfwb/commands.hpp"
#include "psfwb/error.hpp"

struct psfwb_model {
  psfwb::Model value;
};

struct psfwb_qbf {
  psfwb::Qbf value;
};

struct psfwb_exppoly {
  psfwb::ExpPoly value;
};

struct psfwb_report {
  psfwb::Report value;
};

namespace {

thread_local std::string last_error;

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
psfwb_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return PSFWB_OK;
  } catch (const psfwb::Error& e) {
    last_error = e.what();
    return static_cast<psfwb_status>(static_cast<int>(e.code()));
  } catch (const std::exception& e) {
    last_error = e.what();
    return PSFWB_E_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return PSFWB_E_INTERNAL;
  }
}

psfwb_status null_argument() {
  last_error = "null argument";
  return PSFWB_E_NULL_ARGUMENT;
}

template <typename... P>
bool any_null(P... p) {
  return ((p == nullptr) || ...);
}

psfwb_status give_report(psfwb::Report r, psfwb_report** out) {
  *out = new psfwb_report{std::move(r)};
  return PSFWB_OK;
}

std::vector<std::string> witness_list(const char* const* witnesses, size_t n) {
  std::vector<std::string> out;
  for (size_t i = 0; i < n; ++i) {
    if (!witnesses[i]) throw psfwb::Error(psfwb::ErrorCode::InvalidArgument, "null witness");
    out.emplace_back(witnesses[i]);
  }
  return out;
}

}  // namespace

extern "C" {

const char* psfwb_version(void) { return "1.0.0"; }

const char* psfwb_status_name(psfwb_status status) {
  if (status == PSFWB_OK) return "ok";
  if (status == PSFWB_E_NULL_ARGUMENT) return "null-argument";
  if (status == PSFWB_E_INTERNAL) return "internal";
  return psfwb::error_code_name(static_cast<psfwb::ErrorCode>(static_cast<int>(status)));
}

const char* psfwb_last_error(void) { return last_error.c_str(); }

void psfwb_string_free(char* s) { std::free(s); }

psfwb_status psfwb_model_parse(const char* text, psfwb_model** out) {
  if (any_null(text, out)) return null_argument();
  return guard([&] { *out = new psfwb_model{psfwb::parse_model(text)}; });
}

psfwb_status psfwb_model_load(const char* path, psfwb_model** out) {
  if (any_null(path, out)) return null_argument();
  return guard([&] { *out = new psfwb_model{psfwb::parse_model(psfwb::read_file(path))}; });
}

void psfwb_model_free(psfwb_model* m) { delete m; }

psfwb_status psfwb_model_is_ccra(const psfwb_model* m, int* is_ccra) {
  if (any_null(m, is_ccra)) return null_argument();
  *is_ccra = std::holds_alternative<psfwb::Ccra>(m->value) ? 1 : 0;
  return PSFWB_OK;
}

psfwb_status psfwb_model_render(const psfwb_model* m, char** out) {
  if (any_null(m, out)) return null_argument();
  return guard([&] { *out = dup(psfwb::render_model(m->value)); });
}

psfwb_status psfwb_model_eval(const psfwb_model* m, const char* word, char** value) {
  if (any_null(m, word, value)) return null_argument();
  return guard([&] {
    const auto w = psfwb::model_alphabet(m->value).parse_word(word);
    *value = dup(psfwb::evaluate(m->value, w).get_str());
  });
}

psfwb_status psfwb_model_translate(const psfwb_model* m, size_t budget, psfwb_model** out) {
  if (any_null(m, out)) return null_argument();
  return guard([&] { *out = new psfwb_model{psfwb::as_automaton(m->value, budget)}; });
}

psfwb_status psfwb_random_witnesses(const psfwb_model* m, size_t count, uint64_t seed, size_t max_len, char** out) {
  if (any_null(m, out)) return null_argument();
  return guard([&] {
    std::string joined;
    for (const auto& w : psfwb::random_witnesses(psfwb::model_alphabet(m->value), count, seed, max_len)) {
      joined += w + "\n";
    }
    *out = dup(joined);
  });
}

psfwb_status psfwb_zeroness(const psfwb_model* m, size_t budget, psfwb_report** out) {
  if (any_null(m, out)) return null_argument();
  return guard([&] { give_report(psfwb::zeroness_report(m->value, budget), out); });
}

psfwb_status psfwb_equivalence(const psfwb_model* a, const psfwb_model* b, size_t budget, psfwb_report** out) {
  if (any_null(a, b, out)) return null_argument();
  return guard([&] { give_report(psfwb::equivalence_report(a->value, b->value, budget), out); });
}

psfwb_status psfwb_ambiguity(const psfwb_model* m, psfwb_report** out) {
  if (any_null(m, out)) return null_argument();
  return guard([&] { give_report(psfwb::ambiguity_report(m->value), out); });
}

psfwb_status psfwb_triangularize(const psfwb_model* m, const char* word, const char* exponent, psfwb_report** out) {
  if (any_null(m, word, out)) return null_argument();
  return guard([&] {
    std::optional<psfwb::BigInt> e;
    if (exponent) {
      const psfwb::Rational r = psfwb::parse_rational(exponent);
      if (!psfwb::is_integer(r) || r < 1) {
        throw psfwb::Error(psfwb::ErrorCode::InvalidArgument, "the exponent must be a positive integer");
      }
      e = r.get_num();
    }
    give_report(psfwb::triangularize_report(m->value, word, e), out);
  });
}

psfwb_status psfwb_psf(const psfwb_model* m, const char* triple, size_t horizon, psfwb_report** out) {
  if (any_null(m, triple, out)) return null_argument();
  return guard([&] {
    std::optional<std::size_t> h;
    if (horizon > 0) h = horizon;
    give_report(psfwb::psf_report(m->value, triple, h), out);
  });
}

psfwb_status psfwb_subsample(const psfwb_model* m, const char* triple, size_t step, psfwb_report** out) {
  if (any_null(m, triple, out)) return null_argument();
  return guard([&] { give_report(psfwb::subsample_report(m->value, triple, step), out); });
}

psfwb_status psfwb_exppoly_from_model(const psfwb_model* m, const char* triple, size_t step, psfwb_exppoly** out) {
  if (any_null(m, triple, out)) return null_argument();
  return guard([&] { *out = new psfwb_exppoly{psfwb::exppoly_of_witness(m->value, triple, step)}; });
}

psfwb_status psfwb_exppoly_from_sequence(const char* text, size_t margin, psfwb_exppoly** out, uint64_t* modulus) {
  if (any_null(text, out)) return null_argument();
  return guard([&] {
    const auto doc = psfwb::parse_sequence(text);
    auto q = psfwb::exppoly_of_sequence(doc, margin);
    if (modulus) *modulus = doc.modulus.value_or(0);
    *out = new psfwb_exppoly{std::move(q)};
  });
}

psfwb_status psfwb_exppoly_parse(const char* text, psfwb_exppoly** out) {
  if (any_null(text, out)) return null_argument();
  return guard([&] { *out = new psfwb_exppoly{psfwb::parse_exppoly(text)}; });
}

void psfwb_exppoly_free(psfwb_exppoly* q) { delete q; }

psfwb_status psfwb_exppoly_render(const psfwb_exppoly* q, char** out) {
  if (any_null(q, out)) return null_argument();
  return guard([&] { *out = dup(psfwb::render_exppoly(q->value)); });
}

psfwb_status psfwb_exppoly_coeff_sum(const psfwb_exppoly* q, size_t k, char** value) {
  if (any_null(q, value)) return null_argument();
  return guard([&] { *value = dup(psfwb::coeff_sum(q->value, k).get_str()); });
}

psfwb_status psfwb_exppoly_report(const psfwb_exppoly* q, uint64_t modulus, psfwb_report** out) {
  if (any_null(q, out)) return null_argument();
  return guard([&] {
    std::optional<std::uint64_t> p;
    if (modulus > 0) p = modulus;
    give_report(psfwb::exppoly_report(q->value, p), out);
  });
}

psfwb_status psfwb_coeffsums(const psfwb_exppoly* q, const char* gens, const size_t* ks, size_t nks,
                             psfwb_report** out) {
  if (any_null(q, gens, out) || (nks > 0 && ks == nullptr)) return null_argument();
  return guard([&] {
    const std::vector<std::size_t> which(ks, ks + nks);
    give_report(psfwb::coeffsums_report(q->value, psfwb::parse_generators(gens), which), out);
  });
}

psfwb_status psfwb_obstruct_ccra(const psfwb_model* f, const char* const* witnesses, size_t n, size_t step,
                                 const char* gens, const size_t* ks, size_t nks, psfwb_report** out) {
  if (any_null(f, gens, out) || (n > 0 && witnesses == nullptr) || (nks > 0 && ks == nullptr)) {
    return null_argument();
  }
  return guard([&] {
    const std::vector<std::size_t> which(ks, ks + nks);
    give_report(psfwb::obstruct_ccra_report(f->value, witness_list(witnesses, n), step,
                                            psfwb::parse_generators(gens), which),
                out);
  });
}

psfwb_status psfwb_obstruct_pa(const psfwb_model* f, const char* const* witnesses, size_t n, psfwb_report** out) {
  if (any_null(f, out) || (n > 0 && witnesses == nullptr)) return null_argument();
  return guard([&] { give_report(psfwb::obstruct_pa_report(f->value, witness_list(witnesses, n)), out); });
}

psfwb_status psfwb_qbf_parse(const char* text, psfwb_qbf** out) {
  if (any_null(text, out)) return null_argument();
  return guard([&] { *out = new psfwb_qbf{psfwb::parse_qbf_document(text)}; });
}

psfwb_status psfwb_qbf_load(const char* path, psfwb_qbf** out) {
  if (any_null(path, out)) return null_argument();
  return guard([&] { *out = new psfwb_qbf{psfwb::parse_qbf_document(psfwb::read_file(path))}; });
}

void psfwb_qbf_free(psfwb_qbf* q) { delete q; }

psfwb_status psfwb_qbf_render(const psfwb_qbf* q, char** out) {
  if (any_null(q, out)) return null_argument();
  return guard([&] { *out = dup(psfwb::render_qbf_document(q->value)); });
}

psfwb_status psfwb_qbf_brute_force(const psfwb_qbf* q, int* valid) {
  if (any_null(q, valid)) return null_argument();
  return guard([&] { *valid = psfwb::brute_force_qbf(q->value) ? 1 : 0; });
}

psfwb_status psfwb_qbf_to_ccra(const psfwb_qbf* q, psfwb_model** out, psfwb_report** report) {
  if (any_null(q, out)) return null_argument();
  return guard([&] {
    auto red = psfwb::qbf_to_ccra(q->value);
    if (report) *report = new psfwb_report{psfwb::reduction_report(red)};
    *out = new psfwb_model{std::move(red.ccra)};
  });
}

psfwb_status psfwb_qbf_solve(const psfwb_qbf* q, psfwb_report** out) {
  if (any_null(q, out)) return null_argument();
  return guard([&] { give_report(psfwb::qbf_solve_report(q->value), out); });
}

psfwb_status psfwb_examples(const char* directory, psfwb_report** out) {
  if (any_null(out)) return null_argument();
  return guard([&] {
    std::optional<std::string> dir;
    if (directory) dir = directory;
    give_report(psfwb::examples_report(dir), out);
  });
}

void psfwb_report_free(psfwb_report* r) { delete r; }

psfwb_status psfwb_report_render(const psfwb_report* r, int json_lines, char** out) {
  if (any_null(r, out)) return null_argument();
  return guard([&] { *out = dup(json_lines ? psfwb::render_json_lines(r->value) : psfwb::render_text(r->value)); });
}

psfwb_status psfwb_report_get(const psfwb_report* r, const char* type, const char* key, char** value) {
  if (any_null(r, type, key, value)) return null_argument();
  return guard([&] {
    for (const auto& rec : r->value.records) {
      if (rec.type != type) continue;
      for (const auto& [k, v] : rec.fields) {
        if (k == key) {
          *value = dup(psfwb::render_value(v));
          return;
        }
      }
    }
    throw psfwb::Error(psfwb::ErrorCode::InvalidArgument,
                       std::string("no field '") + key + "' in a record of type '" + type + "'");
  });
}

}  // extern "C"
