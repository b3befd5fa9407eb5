#ifndef MCNAUGHTON_H
#define MCNAUGHTON_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define MCN_OK 0

#define MCN_ERR_NULL 1

#define MCN_ERR_UTF8 2

#define MCN_ERR_SYNTAX 3

#define MCN_ERR_ARITY 4

#define MCN_ERR_EMPTY 5

#define MCN_ERR_INVALID 6

#define MCN_ERR_INTERNAL 7

#define MCN_ERR_PANIC 8

#define MCN_SSS 0

#define MCN_NOT_SSS 1

#define MCN_UNKNOWN 4

#define MCN_MEMBER 0

#define MCN_NOT_MEMBER 1

/**
 * Compiled piecewise-linear function.
 */
typedef struct McnFunction McnFunction;

/**
 * Closed subset of the unit cube.
 */
typedef struct McnSet McnSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread; empty after success.
 * Valid until the next call on the same thread.
 */
const char *mcn_last_error(void);

void mcn_string_free(char *s);

/**
 * Parse and compile a formula such as `(x1 + !x2)` over `arity` variables.
 */
int32_t mcn_function_compile(const char *formula, size_t arity, struct McnFunction **out);

/**
 * Read the first `plfunction` record of a workbench document.
 */
int32_t mcn_function_parse(const char *document, struct McnFunction **out);

void mcn_function_free(struct McnFunction *f);

size_t mcn_function_arity(const struct McnFunction *f);

size_t mcn_function_cells(const struct McnFunction *f);

/**
 * Exact value at a point written like `(1/2,1/3)`; the result is a
 * rational string such as `5/6`.
 */
int32_t mcn_function_eval(const struct McnFunction *f, const char *point, char **out);

/**
 * The function as a `plfunction` record.
 */
int32_t mcn_function_to_text(const struct McnFunction *f, char **out);

/**
 * Read the first `closedset` record of a workbench document.
 */
int32_t mcn_set_parse(const char *document, struct McnSet **out);

void mcn_set_free(struct McnSet *x);

size_t mcn_set_dim(const struct McnSet *x);

/**
 * Strong semisimplicity of M(X). `verdict` receives `MCN_SSS`,
 * `MCN_NOT_SSS` or `MCN_UNKNOWN`. When `witness` is non-null it receives
 * the witness document for `MCN_NOT_SSS` and null otherwise.
 */
int32_t mcn_check_sss(const struct McnSet *x, uint64_t kmax, int32_t *verdict, char **witness);

/**
 * `f ∈ ⟨g⟩` on X searching multipliers up to `cap`. `status` receives
 * `MCN_MEMBER`, `MCN_NOT_MEMBER` or `MCN_UNKNOWN`; `k` the minimal
 * multiplier for members and 0 otherwise.
 */
int32_t mcn_ideal_member(const struct McnFunction *f,
                         const struct McnFunction *g,
                         const struct McnSet *x,
                         uint64_t cap,
                         int32_t *status,
                         uint64_t *k);

/**
 * Re-run the exact checks of every certificate in a document. `ok` is 1
 * when there is at least one certificate and all of them pass.
 */
int32_t mcn_verify(const char *document, int32_t *ok);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MCNAUGHTON_H */
