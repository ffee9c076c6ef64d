#ifndef WITT_TWIST_H
#define WITT_TWIST_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WtStatus {
  WT_STATUS_OK = 0,
  WT_STATUS_NULL_POINTER = 1,
  WT_STATUS_INVALID_ARGUMENT = 2,
  WT_STATUS_COMPUTATION = 3,
  WT_STATUS_CHECK_FAILED = 4,
  WT_STATUS_PANIC = 5,
} WtStatus;

/*
 A twisted algebra: restricted `u_{t,q}(W(n;1))` or `U(W+)` over a
 truncated series ring.
 */
typedef struct WtContext WtContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Restricted `u_{t,q}(W(n;1))` with the twist in the directions `eta`
 (1-based, strictly increasing).

 # Safety
 `eta` must point to `eta_len` values and `out` must be writable.
 */
enum WtStatus wt_context_modular(uint64_t p,
                                 uint32_t n,
                                 const uint32_t *eta,
                                 uintptr_t eta_len,
                                 uint64_t q,
                                 struct WtContext **out);

/*
 `U(W+(n))` over `Q[t]/(t^cap)` with the product of basic twists.

 # Safety
 `eta` must point to `eta_len` values and `out` must be writable.
 */
enum WtStatus wt_context_integral(uint32_t n,
                                  const uint32_t *eta,
                                  uintptr_t eta_len,
                                  uint32_t cap,
                                  struct WtContext **out);

/*
 # Safety
 `ctx` must be null or come from a `wt_context_*` constructor, and is not
 used afterwards.
 */
void wt_context_free(struct WtContext *ctx);

/*
 Coproduct of the basis symbol `alpha`, `i`, rendered in the element grammar.

 # Safety
 `ctx` must be a live context, `alpha` must point to `alpha_len` values and
 `out` must be writable.
 */
enum WtStatus wt_delta(const struct WtContext *ctx,
                       const int64_t *alpha,
                       uintptr_t alpha_len,
                       uint32_t i,
                       char **out);

/*
 Antipode of the basis symbol `alpha`, `i`, rendered in the element grammar.

 # Safety
 As for [`wt_delta`].
 */
enum WtStatus wt_antipode(const struct WtContext *ctx,
                          const int64_t *alpha,
                          uintptr_t alpha_len,
                          uint32_t i,
                          char **out);

/*
 Runs the named suite on the modular configuration and writes the JSON
 report to `out_json` (when not null). Returns `WT_STATUS_CHECK_FAILED`
 when some check fails.

 # Safety
 `suite` must be a nul-terminated string, `eta` must point to `eta_len`
 values and `out_json` must be null or writable.
 */
enum WtStatus wt_verify_modular(uint64_t p,
                                uint32_t n,
                                const uint32_t *eta,
                                uintptr_t eta_len,
                                uint64_t q,
                                const char *suite,
                                uint64_t seed,
                                char **out_json);

/*
 Message for the last failing call on this thread; empty after a success.
 The pointer stays valid until the next call on the same thread.
 */
const char *wt_last_error(void);

/*
 # Safety
 `s` must be null or a string returned by this library, not freed before.
 */
void wt_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WITT_TWIST_H */
