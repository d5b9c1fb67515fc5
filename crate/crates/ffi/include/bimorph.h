#ifndef BIMORPH_H
#define BIMORPH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call. Values 0 to 3 match the command-line exit codes.
 */
typedef enum BimorphStatus {
  BIMORPH_STATUS_OK = 0,
  /**
   * The call ran but a checked property does not hold.
   */
  BIMORPH_STATUS_CHECK_FAILED = 1,
  /**
   * Bad arguments, unknown names or invalid definitions.
   */
  BIMORPH_STATUS_INVALID = 2,
  /**
   * A size budget was exceeded.
   */
  BIMORPH_STATUS_BUDGET = 3,
  BIMORPH_STATUS_NULL_POINTER = 4,
  BIMORPH_STATUS_INVALID_UTF8 = 5,
  /**
   * The engine panicked; this is a bug.
   */
  BIMORPH_STATUS_INTERNAL = 6,
} BimorphStatus;

/**
 * An algebra for a monad.
 */
typedef struct BimorphAlgebra BimorphAlgebra;

/**
 * A monad on finite sets.
 */
typedef struct BimorphMonad BimorphMonad;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *bimorph_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void bimorph_string_free(char *s);

/**
 * Parses a monad expression such as `semimodule(f2)` or `writer(z3)`.
 *
 * # Safety
 * `expr` must be a NUL-terminated string; `out_monad` must be writable.
 */
enum BimorphStatus bimorph_monad_parse(const char *expr, struct BimorphMonad **out_monad);

/**
 * # Safety
 * `monad` must come from [`bimorph_monad_parse`] and not have been freed.
 */
void bimorph_monad_free(struct BimorphMonad *monad);

/**
 * The monad's name as a new string, or null on a null handle.
 *
 * # Safety
 * `monad` must be a live handle.
 */
char *bimorph_monad_name(const struct BimorphMonad *monad);

/**
 * `|T(n)|`.
 *
 * # Safety
 * `monad` must be a live handle; `out_size` must be writable.
 */
enum BimorphStatus bimorph_monad_obj_size(const struct BimorphMonad *monad,
                                          uint64_t n,
                                          uint64_t *out_size);

/**
 * Monad laws on all sets of size `<= max_size`. A `budget_limit` of 0
 * means the default. Returns `CheckFailed` when a law fails.
 *
 * # Safety
 * `monad` must be a live handle.
 */
enum BimorphStatus bimorph_monad_check_laws(const struct BimorphMonad *monad,
                                            uint64_t max_size,
                                            uint64_t budget_limit);

/**
 * Whether the two double strengths agree on sets of size `<= max_size`.
 *
 * # Safety
 * `monad` must be a live handle; `out_commutative` must be writable.
 */
enum BimorphStatus bimorph_monad_is_commutative(const struct BimorphMonad *monad,
                                                uint64_t max_size,
                                                uint64_t budget_limit,
                                                bool *out_commutative);

/**
 * The free algebra on a set of size `base`.
 *
 * # Safety
 * `monad` must be a live handle; `out_algebra` must be writable.
 */
enum BimorphStatus bimorph_algebra_free_on(const struct BimorphMonad *monad,
                                           uint64_t base,
                                           struct BimorphAlgebra **out_algebra);

/**
 * An algebra on `{0, .., carrier-1}` with structure map given by `table`,
 * one entry per element of `T(carrier)`. The axioms are checked.
 *
 * # Safety
 * `table` must point to `len` readable values; `out_algebra` must be
 * writable.
 */
enum BimorphStatus bimorph_algebra_new(const struct BimorphMonad *monad,
                                       uint64_t carrier,
                                       const uint64_t *table,
                                       size_t len,
                                       uint64_t budget_limit,
                                       struct BimorphAlgebra **out_algebra);

/**
 * # Safety
 * `algebra` must come from this library and not have been freed.
 */
void bimorph_algebra_free(struct BimorphAlgebra *algebra);

/**
 * Size of the carrier, or 0 on a null handle.
 *
 * # Safety
 * `algebra` must be a live handle.
 */
uint64_t bimorph_algebra_size(const struct BimorphAlgebra *algebra);

/**
 * Number of algebra morphisms `from -> to`.
 *
 * # Safety
 * Both handles must be live; `out_count` must be writable.
 */
enum BimorphStatus bimorph_count_morphisms(const struct BimorphAlgebra *from,
                                           const struct BimorphAlgebra *to,
                                           uint64_t budget_limit,
                                           uint64_t *out_count);

/**
 * The tensor product of two algebras over a commutative monad, returned
 * as a new algebra handle.
 *
 * # Safety
 * Both handles must be live; `out_algebra` must be writable.
 */
enum BimorphStatus bimorph_tensor(const struct BimorphAlgebra *left,
                                  const struct BimorphAlgebra *right,
                                  uint64_t budget_limit,
                                  struct BimorphAlgebra **out_algebra);

/**
 * Runs a command-line invocation (without the program name) and hands
 * back its JSON report. The status is the command's exit code.
 *
 * # Safety
 * `argv` must point to `argc` NUL-terminated strings; `out_json` must be
 * writable. `*out_json` is set to null when no report was produced.
 */
enum BimorphStatus bimorph_run(const char *const *argv, size_t argc, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BIMORPH_H */
