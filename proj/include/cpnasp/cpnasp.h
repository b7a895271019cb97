/*
 * C interface to the cpnasp colored Petri net engine.
 *
 * All objects are opaque handles created by a cpn_*_parse / cpn_enumerate
 * call and released with the matching cpn_*_free. Functions return a
 * cpn_status; on failure a description is available from cpn_last_error()
 * on the calling thread until the next call into the library.
 *
 * Strings returned through `char **out` are heap allocated and must be
 * released with cpn_string_free().
 */
#ifndef CPNASP_H
#define CPNASP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CPNASP_BUILDING)
#    define CPNASP_API __declspec(dllexport)
#  else
#    define CPNASP_API __declspec(dllimport)
#  endif
#else
#  define CPNASP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as CLI exit codes. */
typedef enum cpn_status {
  CPN_OK = 0,
  CPN_ERR_INTERNAL = 1,
  CPN_ERR_INPUT = 2,
  CPN_ERR_MISMATCH = 3,
  CPN_ERR_ARGUMENT = 4
} cpn_status;

typedef enum cpn_firing {
  CPN_FIRING_SET = 0,
  CPN_FIRING_MAXIMAL = 1,
  CPN_FIRING_INTERLEAVED = 2
} cpn_firing;

typedef enum cpn_format { CPN_FORMAT_ATOMS = 0, CPN_FORMAT_JSON = 1 } cpn_format;

typedef enum cpn_dialect { CPN_DIALECT_LEGACY = 0, CPN_DIALECT_CLINGO5 = 1 } cpn_dialect;

typedef struct cpn_mode {
  int firing;          /* cpn_firing */
  int reentrant;       /* non-zero: timed transitions may re-fire while in progress */
  int priorities;      /* non-zero: only highest-priority enabled transitions fire */
  int forbid_stutter;  /* non-zero: no empty firing set while something is enabled */
} cpn_mode;

typedef struct cpn_net cpn_net;
typedef struct cpn_constraints cpn_constraints;
typedef struct cpn_trajectories cpn_trajectories;

CPNASP_API const char *cpn_version(void);
CPNASP_API const char *cpn_last_error(void);
CPNASP_API void cpn_string_free(char *s);

/* Maximal firing, reentrant, priorities off, stutter allowed. */
CPNASP_API cpn_mode cpn_mode_default(void);

/* Parses `.cpn` text. CPN_ERR_INPUT carries every diagnostic, one per line. */
CPNASP_API cpn_status cpn_net_parse(const char *text, size_t len, cpn_net **out);
CPNASP_API void cpn_net_free(cpn_net *net);
/* Warnings from a successful parse, one per line; "" if none. Owned by net. */
CPNASP_API const char *cpn_net_warnings(const cpn_net *net);
CPNASP_API int cpn_net_has_priorities(const cpn_net *net);
CPNASP_API int cpn_net_has_durations(const cpn_net *net);
CPNASP_API int cpn_net_has_place(const cpn_net *net, const char *place);
CPNASP_API int cpn_net_has_color(const cpn_net *net, const char *color);
CPNASP_API cpn_status cpn_net_render(const cpn_net *net, char **out);

/* Parses `.cns` way-points and binds them to `net` for the given horizon. */
CPNASP_API cpn_status cpn_constraints_parse(const cpn_net *net, const char *text, size_t len,
                                            size_t horizon, cpn_constraints **out);
CPNASP_API void cpn_constraints_free(cpn_constraints *cs);

/* Enumerates trajectories of length horizon+1. `constraints` may be NULL;
 * `limit` 0 means unlimited. */
CPNASP_API cpn_status cpn_enumerate(const cpn_net *net, const cpn_constraints *constraints,
                                    size_t horizon, const cpn_mode *mode, size_t limit,
                                    cpn_trajectories **out);
CPNASP_API cpn_status cpn_count(const cpn_net *net, const cpn_constraints *constraints,
                                size_t horizon, const cpn_mode *mode, uint64_t *out);
CPNASP_API size_t cpn_trajectories_size(const cpn_trajectories *ts);
CPNASP_API void cpn_trajectories_free(cpn_trajectories *ts);
CPNASP_API cpn_status cpn_trajectory_render(const cpn_trajectories *ts, size_t index,
                                            int format, char **out);
/* CSV of one place/color over the steps of trajectory `index`. */
CPNASP_API cpn_status cpn_trace_csv(const cpn_trajectories *ts, size_t index, const char *place,
                                    const char *color, char **out);

/* ASP program text for the net and its initial marking. */
CPNASP_API cpn_status cpn_emit_asp(const cpn_net *net, size_t horizon, uint64_t ntok,
                                   const cpn_mode *mode, int dialect, char **out);
/* Largest token count of one color at one place reachable within horizon. */
CPNASP_API cpn_status cpn_max_reachable_count(const cpn_net *net, size_t horizon,
                                              const cpn_mode *mode, uint64_t *out);

/* Compares `native` against solver output. CPN_OK when the sets are equal,
 * CPN_ERR_MISMATCH when they differ, CPN_ERR_INPUT for malformed output.
 * The report is produced for CPN_OK and CPN_ERR_MISMATCH. */
CPNASP_API cpn_status cpn_compare_answer_sets(const cpn_trajectories *native,
                                              const char *solver_output, size_t len,
                                              char **report);

/* CSV `ts,min,max,min_value,max_value,states` of count(place,color)/ts over
 * every reachable state at each ts in 1..horizon. */
CPNASP_API cpn_status cpn_efficiency_sweep(const cpn_net *net, size_t horizon,
                                           const cpn_mode *mode, const char *place,
                                           const char *color, char **out);

#ifdef __cplusplus
}
#endif

#endif /* CPNASP_H */
