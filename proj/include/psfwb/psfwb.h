#ifndef PSFWB_H
#define PSFWB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PSFWB_API __declspec(dllexport)
#else
#define PSFWB_API __attribute__((visibility("default")))
#endif

/* Opaque handles. Every handle returned through an out parameter is owned
 * by the caller and released with the matching *_free function. */
typedef struct psfwb_model psfwb_model;     /* weighted automaton or CCRA */
typedef struct psfwb_qbf psfwb_qbf;         /* normalised forall-exists formula */
typedef struct psfwb_exppoly psfwb_exppoly; /* exponential polynomial over Q */
typedef struct psfwb_report psfwb_report;   /* ordered report records */

typedef enum psfwb_status {
  PSFWB_OK = 0,
  PSFWB_E_INVALID_ARGUMENT = 1,
  PSFWB_E_DIVISION_BY_ZERO = 2,
  PSFWB_E_DIMENSION_MISMATCH = 3,
  PSFWB_E_UNKNOWN_LETTER = 4,
  PSFWB_E_ALPHABET_MISMATCH = 5,
  PSFWB_E_SQUARE_DETECTED = 6,
  PSFWB_E_NOT_COPYLESS = 7,
  PSFWB_E_CYCLE_OF_LENGTH_AT_LEAST_TWO = 8,
  PSFWB_E_BUDGET_EXCEEDED = 9,
  PSFWB_E_INSUFFICIENT_DATA = 10,
  PSFWB_E_IRRATIONAL_ROOTS = 11,
  PSFWB_E_FACTORISATION_CEILING = 12,
  PSFWB_E_MODULUS_MISMATCH = 13,
  PSFWB_E_SIZE_GUARD = 14,
  PSFWB_E_PARSE = 15,
  PSFWB_E_COPY_POOL_EXHAUSTED = 16,
  PSFWB_E_IO = 17,
  PSFWB_E_NULL_ARGUMENT = 100,
  PSFWB_E_INTERNAL = 101
} psfwb_status;

/* Default size bound for the CCRA to weighted automaton translation. */
#define PSFWB_DEFAULT_BUDGET 1024

PSFWB_API const char* psfwb_version(void);
PSFWB_API const char* psfwb_status_name(psfwb_status status);
/* Message of the last failure on this thread, or "" after success. */
PSFWB_API const char* psfwb_last_error(void);
/* Releases strings returned through char** out parameters. */
PSFWB_API void psfwb_string_free(char* s);

/* Models: documents with header "psfwb-format wa v1" or "psfwb-format ccra v1". */
PSFWB_API psfwb_status psfwb_model_parse(const char* text, psfwb_model** out);
PSFWB_API psfwb_status psfwb_model_load(const char* path, psfwb_model** out);
PSFWB_API void psfwb_model_free(psfwb_model* m);
PSFWB_API psfwb_status psfwb_model_is_ccra(const psfwb_model* m, int* is_ccra);
PSFWB_API psfwb_status psfwb_model_render(const psfwb_model* m, char** out);
/* Words use "eps" for the empty word. The value is written as "num/den". */
PSFWB_API psfwb_status psfwb_model_eval(const psfwb_model* m, const char* word, char** value);
/* Square-free monomial translation of a CCRA (a copy for automata). */
PSFWB_API psfwb_status psfwb_model_translate(const psfwb_model* m, size_t budget, psfwb_model** out);
/* Newline-separated "u,w,v" witnesses drawn with a fixed seed. */
PSFWB_API psfwb_status psfwb_random_witnesses(const psfwb_model* m, size_t count, uint64_t seed, size_t max_len,
                                              char** out);

PSFWB_API psfwb_status psfwb_zeroness(const psfwb_model* m, size_t budget, psfwb_report** out);
PSFWB_API psfwb_status psfwb_equivalence(const psfwb_model* a, const psfwb_model* b, size_t budget,
                                         psfwb_report** out);
PSFWB_API psfwb_status psfwb_ambiguity(const psfwb_model* m, psfwb_report** out);
/* exponent may be NULL for dim!. */
PSFWB_API psfwb_status psfwb_triangularize(const psfwb_model* m, const char* word, const char* exponent,
                                           psfwb_report** out);
/* horizon 0 selects the default. */
PSFWB_API psfwb_status psfwb_psf(const psfwb_model* m, const char* triple, size_t horizon, psfwb_report** out);
PSFWB_API psfwb_status psfwb_subsample(const psfwb_model* m, const char* triple, size_t step, psfwb_report** out);

/* Exponential polynomials. */
PSFWB_API psfwb_status psfwb_exppoly_from_model(const psfwb_model* m, const char* triple, size_t step,
                                                psfwb_exppoly** out);
/* Document with header "psfwb-format sequence v1". A modulus line, if any,
 * is returned through modulus (0 when absent; modulus may be NULL). */
PSFWB_API psfwb_status psfwb_exppoly_from_sequence(const char* text, size_t margin, psfwb_exppoly** out,
                                                   uint64_t* modulus);
PSFWB_API psfwb_status psfwb_exppoly_parse(const char* text, psfwb_exppoly** out);
PSFWB_API void psfwb_exppoly_free(psfwb_exppoly* q);
PSFWB_API psfwb_status psfwb_exppoly_render(const psfwb_exppoly* q, char** out);
PSFWB_API psfwb_status psfwb_exppoly_coeff_sum(const psfwb_exppoly* q, size_t k, char** value);
/* modulus 0 skips the F_p reduction. */
PSFWB_API psfwb_status psfwb_exppoly_report(const psfwb_exppoly* q, uint64_t modulus, psfwb_report** out);
/* gens is a comma-separated list such as "1,2,1/2"; nks 0 checks every degree. */
PSFWB_API psfwb_status psfwb_coeffsums(const psfwb_exppoly* q, const char* gens, const size_t* ks, size_t nks,
                                       psfwb_report** out);

/* Obstruction reports over explicit witnesses "u,w,v". */
PSFWB_API psfwb_status psfwb_obstruct_ccra(const psfwb_model* f, const char* const* witnesses, size_t n,
                                           size_t step, const char* gens, const size_t* ks, size_t nks,
                                           psfwb_report** out);
PSFWB_API psfwb_status psfwb_obstruct_pa(const psfwb_model* f, const char* const* witnesses, size_t n,
                                         psfwb_report** out);

/* QBF: the file form or an infix prenex formula. */
PSFWB_API psfwb_status psfwb_qbf_parse(const char* text, psfwb_qbf** out);
PSFWB_API psfwb_status psfwb_qbf_load(const char* path, psfwb_qbf** out);
PSFWB_API void psfwb_qbf_free(psfwb_qbf* q);
PSFWB_API psfwb_status psfwb_qbf_render(const psfwb_qbf* q, char** out);
PSFWB_API psfwb_status psfwb_qbf_brute_force(const psfwb_qbf* q, int* valid);
/* report may be NULL. */
PSFWB_API psfwb_status psfwb_qbf_to_ccra(const psfwb_qbf* q, psfwb_model** out, psfwb_report** report);
PSFWB_API psfwb_status psfwb_qbf_solve(const psfwb_qbf* q, psfwb_report** out);

/* directory may be NULL to only list the fixtures. */
PSFWB_API psfwb_status psfwb_examples(const char* directory, psfwb_report** out);

/* Reports. */
PSFWB_API void psfwb_report_free(psfwb_report* r);
PSFWB_API psfwb_status psfwb_report_render(const psfwb_report* r, int json_lines, char** out);
/* Text rendering of the first field `key` of the first record of `type`. */
PSFWB_API psfwb_status psfwb_report_get(const psfwb_report* r, const char* type, const char* key, char** value);

#ifdef __cplusplus
}
#endif

#endif /* PSFWB_H */
