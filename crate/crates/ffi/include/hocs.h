#ifndef HOCS_H
#define HOCS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes. The numeric values of `DOMAIN` and `NUMERICAL` match the CLI exit codes.
typedef enum HocsStatus {
  HOCS_STATUS_OK = 0,
  // A null pointer, invalid UTF-8 or an unknown name was passed.
  HOCS_STATUS_INVALID_ARGUMENT = 1,
  // Input outside the domain of the requested quantity (poles, bad chamber, ...).
  HOCS_STATUS_DOMAIN = 2,
  // A numerical routine failed to reach its tolerance.
  HOCS_STATUS_NUMERICAL = 3,
  // A Rust panic was caught at the boundary.
  HOCS_STATUS_INTERNAL = 4,
} HocsStatus;

// Opaque evaluation context: coupling g, relative tolerance and series cap.
typedef struct HocsContext HocsContext;

// A complex value with its error estimate.
typedef struct HocsValue {
  double re;
  double im;
  double abs_err;
  uint64_t n_evals;
} HocsValue;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates a context. Returns null if `g` is not positive and finite or `tol` is not positive.
struct HocsContext *hocs_context_new(double g, double tol, size_t kmax);

// Releases a context. Passing null is a no-op.
//
// # Safety
// `ctx` must come from [`hocs_context_new`] and not have been freed already.
void hocs_context_free(struct HocsContext *ctx);

// Evaluates Ψ_λ(x) for `n` particles.
//
// `rep` is one of `euler`, `mb`, `series`, `asymptotic`, `zero`.
// `lambda_im` may be null for real spectral parameters.
//
// # Safety
// `lambda_re`, `x` (and `lambda_im` if non-null) must point to `n` doubles;
// `rep` must be a NUL-terminated string and `out` a valid pointer.
enum HocsStatus hocs_psi(const struct HocsContext *ctx,
                         const char *rep,
                         size_t n,
                         const double *lambda_re,
                         const double *lambda_im,
                         const double *x,
                         struct HocsValue *out);

// Runs a verification suite at the context's coupling.
//
// On `HOCS_STATUS_OK`, `*out_json` receives the JSON report (free it with
// [`hocs_string_free`]) and `*out_pass` is 1 if every check passed, else 0.
//
// # Safety
// `suite` must be a NUL-terminated string; `out_json` and `out_pass` must be valid pointers.
enum HocsStatus hocs_verify_suite(const struct HocsContext *ctx,
                                  const char *suite,
                                  bool include_slow,
                                  char **out_json,
                                  int32_t *out_pass);

// Message for the most recent failure on this thread, or null.
// The pointer stays valid until the next call into this library on the same thread.
const char *hocs_last_error_message(void);

// Frees a string returned by this library. Passing null is a no-op.
//
// # Safety
// `s` must come from this library and not have been freed already.
void hocs_string_free(char *s);

// Library version as a static NUL-terminated string.
const char *hocs_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOCS_H */
