/* C ABI for the spreclone library. */

#ifndef SPRECLONE_H
#define SPRECLONE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of an FFI call.
 */
typedef enum SpStatus {
  /**
   * Call succeeded.
   */
  SP_STATUS_OK = 0,
  /**
   * Call failed; see `sp_last_error`.
   */
  SP_STATUS_ERROR = 1,
  /**
   * A required pointer argument was null.
   */
  SP_STATUS_NULL_ARGUMENT = 2,
} SpStatus;

typedef struct SpMonoid SpMonoid;

typedef struct SpOp SpOp;

typedef struct SpRel SpRel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent error on this thread, or null. The
 * pointer stays valid until the next failing call on this thread.
 */
const char *sp_last_error(void);

/**
 * Creates a builtin monoid by name (`trivial`, `z2`, `z3`, `sprime`,
 * `shat`).
 *
 * # Safety
 * `name` must be a valid NUL-terminated string and `out` a valid
 * pointer.
 */
enum SpStatus sp_monoid_builtin(const char *name, struct SpMonoid **out);

/**
 * Parses a monoid from its JSON file format.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid
 * pointer.
 */
enum SpStatus sp_monoid_from_json(const char *json, struct SpMonoid **out);

/**
 * Parses a signed operation from its JSON file format.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string; `monoid` and `out`
 * must be valid pointers.
 */
enum SpStatus sp_op_from_json(const char *json, const struct SpMonoid *monoid, struct SpOp **out);

/**
 * Parses a signed relation from its JSON file format.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string; `monoid` and `out`
 * must be valid pointers.
 */
enum SpStatus sp_rel_from_json(const char *json, const struct SpMonoid *monoid, struct SpRel **out);

/**
 * Preservation check: writes 1 to `out` if `op` preserves `rel`,
 * else 0.
 *
 * # Safety
 * All pointers must be valid.
 */
enum SpStatus sp_preserves(const struct SpOp *op,
                           const struct SpRel *rel,
                           const struct SpMonoid *monoid,
                           int32_t *out);

/**
 * Membership of `op` in the preclone generated by `gens`; writes 1
 * or 0 to `out`.
 *
 * # Safety
 * `gens` must point to `gens_len` valid op handles; all pointers
 * must be valid.
 */
enum SpStatus sp_membership(const struct SpOp *op,
                            const struct SpOp *const *gens,
                            uintptr_t gens_len,
                            const struct SpMonoid *monoid,
                            int32_t *out);

/**
 * Membership certificate as JSON, or an empty string when `op` is a
 * member. The result must be freed with `sp_string_free`.
 *
 * # Safety
 * All pointers must be valid.
 */
enum SpStatus sp_membership_certificate_json(const struct SpOp *op,
                                             const struct SpOp *const *gens,
                                             uintptr_t gens_len,
                                             const struct SpMonoid *monoid,
                                             char **out);

/**
 * Invariant closure of `rel` under `gens`, serialized as a relation
 * JSON document. The result must be freed with `sp_string_free`.
 *
 * # Safety
 * `gens` must point to `gens_len` valid op handles; all pointers
 * must be valid.
 */
enum SpStatus sp_gamma_closure_json(const struct SpOp *const *gens,
                                    uintptr_t gens_len,
                                    const struct SpRel *rel,
                                    const struct SpMonoid *monoid,
                                    char **out);

/**
 * The generic-argument relation for a signum literal (e.g. `+,-`),
 * serialized as a relation JSON document. The result must be freed
 * with `sp_string_free`.
 *
 * # Safety
 * `signum` must be a valid NUL-terminated string; all pointers must
 * be valid.
 */
enum SpStatus sp_chi_json(uintptr_t domain_size,
                          const char *signum,
                          const struct SpMonoid *monoid,
                          char **out);

/**
 * Frees a string returned by this library.
 *
 * # Safety
 * `s` must be a pointer returned by this library, or null.
 */
void sp_string_free(char *s);

/**
 * # Safety
 * `monoid` must come from this library, or be null.
 */
void sp_monoid_free(struct SpMonoid *monoid);

/**
 * # Safety
 * `op` must come from this library, or be null.
 */
void sp_op_free(struct SpOp *op);

/**
 * # Safety
 * `rel` must come from this library, or be null.
 */
void sp_rel_free(struct SpRel *rel);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SPRECLONE_H */
