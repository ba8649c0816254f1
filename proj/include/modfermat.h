/*
 * modfermat C API: exact computations around the modular Fermat system
 * Phi_N(x,u) = 0, Phi_M(y,v) = 0, u + v = 1.
 *
 * All functions return MF_OK (0) on success or a nonzero error code; the
 * message for the last failure on a session is kept on the session. Results
 * are returned as owned text buffers (mf_buf) in the library's documented
 * exact text formats; numbers cross the boundary as decimal strings so no
 * precision is lost.
 */
#ifndef MODFERMAT_H
#define MODFERMAT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define MF_OK 0
#define MF_EINVAL 1   /* bad arguments / usage */
#define MF_ECOMPUTE 2 /* computation failed */

typedef struct mf_session mf_session; /* configuration + warm caches */
typedef struct mf_buf mf_buf;         /* owned NUL-terminated text */

/* ---- session ---------------------------------------------------------- */

mf_session* mf_session_new(void);
void mf_session_free(mf_session* s);

/* configuration keys: cache_dir, phi_max_level, hilbert_max_disc,
 * float_precision_bits, tolerance, thread_count, format */
int mf_session_set(mf_session* s, const char* key, const char* value);

/* message for the most recent failure on this session; never NULL */
const char* mf_session_last_error(const mf_session* s);

const char* mf_version(void);

/* ---- buffers ----------------------------------------------------------- */

const char* mf_buf_data(const mf_buf* b);
size_t mf_buf_size(const mf_buf* b);
void mf_buf_free(mf_buf* b);

/* ---- generic dispatch --------------------------------------------------
 * argv is a subcommand followed by its arguments and flags, exactly as on
 * the command line (without the program name). Returns the process-style
 * exit code: 0 success, 1 usage error, 2 computation error. *out receives
 * the full report (header + body) regardless of the code. */
int mf_dispatch(mf_session* s, int argc, const char* const* argv, mf_buf** out);

/* ---- typed entry points ------------------------------------------------ */

/* Phi_N in the POLY text format */
int mf_modular_polynomial(mf_session* s, unsigned level, mf_buf** out);

/* Hilbert class polynomial H_D (D negative, or |D|) in the POLY format */
int mf_hilbert_class_polynomial(mf_session* s, long discriminant, mf_buf** out);

int mf_class_number(mf_session* s, long discriminant, unsigned long* h);

/* *found = 1 and *disc set if x (decimal or a/b) is a singular modulus with
 * |D| <= dbound */
int mf_is_special(mf_session* s, const char* x, long dbound, int* found,
                  long* disc);

/* smallest N <= nmax with Phi_N(x, y) = 0 */
int mf_hecke_level(mf_session* s, const char* x, const char* y, unsigned nmax,
                   int* found, unsigned* level);

/* all rational roots of the univariate POLY text, one "root multiplicity"
 * pair per line */
int mf_rational_roots(mf_session* s, const char* poly_text, mf_buf** out);

int mf_abc_quality(mf_session* s, const char* a, const char* b, double* quality,
                   mf_buf** radical);

int mf_risman_bound(mf_session* s, unsigned long n, unsigned long* h_min,
                    unsigned long* t, unsigned long* ell);

int mf_pure_equation_reducible(mf_session* s, const char* c, unsigned long n,
                               int* reducible, mf_buf** reason);

#ifdef __cplusplus
}
#endif

#endif /* MODFERMAT_H */
