#ifndef DRINFELD_H
#define DRINFELD_H

/* C interface to the drinfeld library.
 *
 * Every call returns a drf_status. On failure drf_last_error() describes the
 * problem (thread-local, valid until the next call on the same thread).
 * Strings returned through char** out parameters are owned by the caller and
 * released with drf_free_string. Handles are immutable after creation and may
 * be shared between threads. */

#include <stddef.h>

#if defined(_WIN32)
#define DRF_API __declspec(dllexport)
#else
#define DRF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum drf_status {
    DRF_OK = 0,
    DRF_EINVAL = 1,        /* bad argument (null pointer, parameter out of range) */
    DRF_EPARSE = 2,        /* malformed module spec or field description */
    DRF_EDOMAIN = 3,       /* mathematical precondition violated */
    DRF_EPRECISION = 4,    /* requested precision not available */
    DRF_ECONVERGENCE = 5,  /* series evaluation failed its convergence certificate */
    DRF_EREDUCTION = 6,    /* bad reduction at a prime */
    DRF_ECONSISTENCY = 7,  /* computed quantities disagree (for example a corrupted cache record) */
    DRF_EINTERNAL = 8
} drf_status;

typedef enum drf_format { DRF_FORMAT_TEXT = 0, DRF_FORMAT_JSON = 1 } drf_format;

typedef struct drf_field drf_field;
typedef struct drf_module drf_module;

DRF_API const char* drf_version(void);
DRF_API const char* drf_status_name(drf_status s);
DRF_API const char* drf_last_error(void);
DRF_API void drf_free_string(char* s);

/* F_q with q = p^m. modulus holds m+1 residues mod p, lowest degree first and
 * monic; pass NULL to use the library's fixed modulus for (p, m). */
DRF_API drf_status drf_field_new(unsigned p, unsigned m, const unsigned* modulus, size_t modulus_len, drf_field** out);
DRF_API void drf_field_free(drf_field* f);
DRF_API unsigned drf_field_order(const drf_field* f);

/* Parses a module spec (JSON text). A spec without "field" takes default_field;
 * a spec with "field" must agree with default_field when both are given. A spec
 * without "n" takes default_n when default_n >= 0. */
DRF_API drf_status drf_module_parse(const char* spec, const drf_field* default_field, int default_n, drf_module** out);
DRF_API void drf_module_free(drf_module* m);
/* The matrices A_0..A_m of φ(t) = Σ A_i τ^i. */
DRF_API drf_status drf_module_describe(const drf_module* m, drf_format fmt, char** out);

/* L-values. *stabilized (may be NULL) receives 1 when the truncation has
 * stabilized. cache_path may be NULL or empty for no cache. */
DRF_API drf_status drf_zeta(const drf_field* f, int n, int max_deg, long prec, drf_format fmt, char** out, int* stabilized);
DRF_API drf_status drf_taelman(const drf_module* m, int max_deg, long prec, const char* cache_path, drf_format fmt,
                               char** out, int* stabilized);
DRF_API drf_status drf_goss(const drf_module* m, int n, int max_deg, long prec, const char* cache_path, drf_format fmt,
                            char** out, int* stabilized);

/* Per-prime data for every monic irreducible β with deg β <= max_deg:
 * count_G, count_Lie and, when with_q is nonzero, Q_β and c. Bad primes are
 * listed with the reason they were skipped. */
DRF_API drf_status drf_local_factors(const drf_module* m, int max_deg, int with_q, const char* cache_path, drf_format fmt,
                                     char** out);

/* Runs the verification suite ("all", "omega", "period", "zeta", "lfunc",
 * "explog" or "cache"). t_prec is the t-precision of the Ω check; 0 selects
 * the default of 12. With cache_path the cache suite audits that file, reading
 * it over cache_field (NULL means F_2). *all_pass (may be NULL) receives 1 when
 * every selected check passed. */
DRF_API drf_status drf_verify(const char* suite, int t_prec, const char* cache_path, const drf_field* cache_field,
                              drf_format fmt, char** out, int* all_pass);

#ifdef __cplusplus
}
#endif

#endif
