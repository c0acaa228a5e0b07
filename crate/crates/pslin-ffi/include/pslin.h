#ifndef PSLIN_H
#define PSLIN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

#define PSLIN_OK 0

#define PSLIN_ERR_INVALID_PARAMS 1

#define PSLIN_ERR_BUDGET_EXHAUSTED 2

#define PSLIN_ERR_PRECISION_OVERFLOW 3

#define PSLIN_ERR_NOT_MEMBER 4

#define PSLIN_ERR_NOT_SOLVABLE 5

#define PSLIN_ERR_NULL_POINTER 6

#define PSLIN_ERR_UTF8 7

#define PSLIN_ERR_PANIC 99

/**
 * Opaque exponent handle: a parsed alpha plus its precision policy.
 */
typedef struct PslinAlpha PslinAlpha;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse an exponent spec (`1.5`, `rat:3/2`, `logquot:2:4:3`) into a handle.
 * `prec_cap` of 0 selects the default precision cap.
 */
int32_t pslin_alpha_parse(const char *spec, uint32_t prec_cap, struct PslinAlpha **out);

/**
 * Release an exponent handle. Null is a no-op.
 */
void pslin_alpha_free(struct PslinAlpha *handle);

/**
 * Release a string returned by this library. Null is a no-op.
 */
void pslin_string_free(char *s);

/**
 * `floor(n^alpha)` as a decimal string.
 */
int32_t pslin_term(const struct PslinAlpha *handle, uint64_t n, char **out);

/**
 * Membership test for a decimal `value`; on success writes its index `n`.
 * Returns `PSLIN_ERR_NOT_MEMBER` when the value is not a term.
 */
int32_t pslin_member(const struct PslinAlpha *handle, const char *value, char **out_n);

/**
 * Search for up to `limit` verified pairs of `y = a x + b` in PS(alpha).
 * `a` and `b` are rational strings (`p/q` or decimal). The result is a
 * JSON array of `{x, y, n_x, n_y}` objects with decimal-string fields.
 */
int32_t pslin_solve_json(const struct PslinAlpha *handle,
                         const char *a,
                         const char *b,
                         uintptr_t limit,
                         uint64_t time_budget_secs,
                         char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PSLIN_H */
