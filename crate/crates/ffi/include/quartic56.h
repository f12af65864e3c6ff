#ifndef QUARTIC56_H
#define QUARTIC56_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes of every fallible call.
typedef enum Q56Status {
  Q56_STATUS_OK = 0,
  Q56_STATUS_NULL_POINTER = 1,
  Q56_STATUS_INVALID_INPUT = 2,
  Q56_STATUS_PRECONDITION = 3,
  Q56_STATUS_UNSUPPORTED = 4,
  Q56_STATUS_INTERNAL = 5,
  Q56_STATUS_IO = 6,
  Q56_STATUS_BUFFER_TOO_SMALL = 7,
  Q56_STATUS_PANIC = 8,
} Q56Status;

// Opaque handle owning the lazily computed pipeline stages.
typedef struct Q56Session Q56Session;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates a session. `cache_dir` may be null to disable the on-disk cache.
// Returns null on failure.
//
// # Safety
// `cache_dir` is null or a valid NUL-terminated string.
struct Q56Session *q56_session_new(const char *cache_dir);

// Releases a session; null is ignored.
//
// # Safety
// `s` is null or a handle from `q56_session_new` not yet freed.
void q56_session_free(struct Q56Session *s);

// Number of acceptance criteria, numbered from 1.
uint32_t q56_criterion_count(void);

// Evaluates one criterion and stores whether all its claims hold.
//
// # Safety
// `s` is a live session and `pass` points to writable storage.
enum Q56Status q56_run_criterion(const struct Q56Session *s, uint8_t number, bool *pass);

// JSON report of a subcommand without parameters: "fermat", "configs",
// "derive-psi", "lines-x56", "aut-x56" or "verify-all".
//
// # Safety
// `s` is a live session, `command` a NUL-terminated string, `out` writable.
enum Q56Status q56_command_json(const struct Q56Session *s, const char *command, char **out);

// JSON census of the classes of relative degree `d` (1 to 6).
//
// # Safety
// `s` is a live session and `out` writable.
enum Q56Status q56_census_json(const struct Q56Session *s, int64_t d, char **out);

// JSON reduction report at the primes above `prime`, or the smoothness
// certificate with its audits when `prime` is 0.
//
// # Safety
// `s` is a live session and `out` writable.
enum Q56Status q56_reduce_json(const struct Q56Session *s,
                               uint64_t prime,
                               bool all_orderings,
                               char **out);

// Copies the 20×20 Gram matrix, row-major, into `buf` of length `len ≥ 400`.
//
// # Safety
// `s` is a live session and `buf` is valid for `len` writes.
enum Q56Status q56_gram(const struct Q56Session *s, int64_t *buf, uintptr_t len);

// Releases a string returned by this library; null is ignored.
//
// # Safety
// `p` is null or a string returned by this library not yet freed.
void q56_string_free(char *p);

// Message of the last failed call on this thread, or "".
const char *q56_last_error(void);

// Library version as a static string.
const char *q56_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUARTIC56_H */
