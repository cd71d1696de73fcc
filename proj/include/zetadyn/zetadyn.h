/* zetadyn: dynamics of the Riemann zeta function and relatives. C interface. */
#ifndef ZETADYN_H
#define ZETADYN_H

#include <stddef.h>

#if defined(_WIN32) && defined(ZETADYN_BUILDING)
#define ZD_API __declspec(dllexport)
#elif defined(_WIN32)
#define ZD_API __declspec(dllimport)
#elif defined(ZETADYN_BUILDING)
#define ZD_API __attribute__((visibility("default")))
#else
#define ZD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zd_status {
  ZD_OK = 0,
  ZD_E_INVALID = 1,     /* malformed argument or request */
  ZD_E_POLE = 2,        /* evaluation at a pole */
  ZD_E_DIVZERO = 3,     /* e.g. multiplicative principal point of a zero critical value */
  ZD_E_UNSUPPORTED = 4, /* operation not defined for this function */
  ZD_E_NOT_FOUND = 5,   /* unknown preset or critical label */
  ZD_E_RANGE = 6,       /* over a configured limit */
  ZD_E_IO = 7,
  ZD_E_INTERNAL = 8
} zd_status;

/* A context holds settings and the last error; use it from one thread at a time. */
typedef struct zd_context zd_context;
typedef struct zd_buffer zd_buffer;

ZD_API const char* zd_version(void);

/* Limits come from ZETADYN_MAX_PX / ZETADYN_MAX_IM / ZETADYN_MAX_ITER when
   `use_env_limits` is nonzero; otherwise the context is unlimited (batch use). */
ZD_API zd_status zd_context_create(int use_env_limits, zd_context** out);
ZD_API void zd_context_destroy(zd_context* ctx);
/* Message of the last failed call on this context ("" after success). */
ZD_API const char* zd_last_error(const zd_context* ctx);

/* mode: "accelerated" or "truncated"; terms and deriv_step as in requests. */
ZD_API zd_status zd_set_eval(zd_context* ctx, const char* mode, int terms, double deriv_step);
/* 0 = hardware concurrency. */
ZD_API zd_status zd_set_threads(zd_context* ctx, int threads);
/* Merges a preset manifest file over the built-in presets. */
ZD_API zd_status zd_load_presets(zd_context* ctx, const char* path);

/* function: "zeta", "eta", "xi", "L(q,k)", "rosetta", "quadratic". */
ZD_API zd_status zd_eval(zd_context* ctx, const char* function, double re, double im, double* out_re,
                         double* out_im);
ZD_API zd_status zd_eval_derivative(zd_context* ctx, const char* function, double re, double im, double* out_re,
                                    double* out_im);

/* Query strings use the HTTP grammar, e.g. "function=zeta&family=additive&c=0&z0=0". */
ZD_API zd_status zd_render(zd_context* ctx, const char* query, zd_buffer** png, zd_buffer** resolved_json);
/* kind: "criticals", "zeros", "transfer", "orbit", "farey". */
ZD_API zd_status zd_analyze_json(zd_context* ctx, const char* kind, const char* query, zd_buffer** json);
ZD_API zd_status zd_presets_json(zd_context* ctx, zd_buffer** json);

/* Blocks serving HTTP until the process is interrupted. static_dir may be NULL. */
ZD_API zd_status zd_serve(zd_context* ctx, const char* host, int port, const char* static_dir);

ZD_API const unsigned char* zd_buffer_data(const zd_buffer* buf);
ZD_API size_t zd_buffer_size(const zd_buffer* buf);
ZD_API void zd_buffer_destroy(zd_buffer* buf);

#ifdef __cplusplus
}
#endif

#endif
