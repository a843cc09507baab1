#ifndef FLAGCONE_H
#define FLAGCONE_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#define FC_OK 0

#define FC_ERR_NULL 1

#define FC_ERR_UTF8 2

#define FC_ERR_PARSE 3

#define FC_ERR_DOMAIN 4

#define FC_ERR_PANIC 5

// Opaque flag vector.
typedef struct FcFlagVector FcFlagVector;

// Opaque graded poset.
typedef struct FcPoset FcPoset;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the last failure on this thread. The pointer stays
// valid until the next library call on the same thread.
const char *fc_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void fc_string_free(char *s);

// Parses a poset from its JSON form.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
int fc_poset_from_json(const char *json, struct FcPoset **out);

// Builds a poset from a construction expression such as `"chain(4)"`.
//
// # Safety
// `expr` must be a NUL-terminated string; `out` must be writable.
int fc_poset_from_expr(const char *expr, struct FcPoset **out);

// # Safety
// `p` must come from this library and not have been freed. Null is ignored.
void fc_poset_free(struct FcPoset *p);

// # Safety
// `p` must be a live handle; `out` must be writable.
int fc_poset_to_json(const struct FcPoset *p, char **out);

// # Safety
// `p` must be a live handle; `out` must be writable.
int fc_poset_rank(const struct FcPoset *p, uintptr_t *out);

// # Safety
// `p` must be a live handle; `out` must be writable.
int fc_poset_is_eulerian(const struct FcPoset *p, bool *out);

// # Safety
// `p` must be a live handle; `out` must be writable.
int fc_poset_is_half_eulerian(const struct FcPoset *p, bool *out);

// Flag f-vector of a poset.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
int fc_poset_flag_vector(const struct FcPoset *p, struct FcFlagVector **out);

// # Safety
// `v` must come from this library and not have been freed. Null is ignored.
void fc_flag_vector_free(struct FcFlagVector *v);

// # Safety
// `v` must be a live handle; `out` must be writable.
int fc_flag_vector_n(const struct FcFlagVector *v, uintptr_t *out);

// Entry at the rank set whose bit `r-1` marks rank `r`, as a reduced
// fraction. Fails with `FC_ERR_DOMAIN` if it does not fit in 64 bits.
//
// # Safety
// `v` must be a live handle; `num` and `den` must be writable.
int fc_flag_vector_entry(const struct FcFlagVector *v, uint32_t mask, int64_t *num, int64_t *den);

// JSON form of the vector in `basis` (`"F"`, `"H"`, `"ELL"`, `"L"`, or
// null for its own basis).
//
// # Safety
// `v` must be a live handle; `basis` null or NUL-terminated; `out` writable.
int fc_flag_vector_to_json(const struct FcFlagVector *v, const char *basis, char **out);

// Number of even interval systems on `[1,n]`.
//
// # Safety
// `out` must be writable.
int fc_even_system_count(uintptr_t n, uint64_t *out);

// Cone verification report for `rank` (2 to 8) as a JSON string.
//
// # Safety
// `out` must be writable.
int fc_cone_verify(uintptr_t rank, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* FLAGCONE_H */
