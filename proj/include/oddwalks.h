#ifndef ODDWALKS_H
#define ODDWALKS_H

/* C interface to the odd-walk congestion analyzer.  Each ow_analyze_*
 * function runs a full pipeline (build the chain, compute its spectrum,
 * build canonical odd walks, bound the smallest eigenvalue by congestion,
 * run every consistency check) and hands back an opaque result handle. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ow_status {
    OW_OK = 0,
    OW_INVALID_ARGUMENT = 1, /* malformed parameters or input file */
    OW_INFEASIBLE = 2,       /* valid input the analysis cannot accept */
    OW_STATE_CAP_EXCEEDED = 3,
    OW_NUMERIC = 4, /* eigensolver or iteration missed its accuracy contract */
    OW_IO = 5,
    OW_INTERNAL = 6
} ow_status;

typedef struct ow_analysis ow_analysis;

typedef struct ow_options {
    const double* epsilons; /* NULL => default {0.25, 0.01}; values in (0, 1) */
    size_t n_epsilons;
    int exact_mixing; /* nonzero => also compute exact total-variation mixing times */
    int lazy;         /* nonzero => also analyze the lazy chain (I + P)/2 */
    long max_states;  /* 0 => library default cap */
} ow_options;

/* Fill an ow_options with the defaults described above. */
void ow_options_init(ow_options* options);

/* On success returns OW_OK and stores a new handle in *out; on failure *out
 * is NULL and ow_last_error() describes the problem.  `options` may be NULL
 * for defaults. */

/* Switch chain on labeled d-regular graphs with n vertices. */
ow_status ow_analyze_switch(int n, int d, const ow_options* options, ow_analysis** out);

/* Perfect/near-perfect matchings chain; `path` names a graph file
 * ("n m" header, then one 1-based "u v" line per edge, '#' comments). */
ow_status ow_analyze_matchings_file(const char* path, const ow_options* options,
                                    ow_analysis** out);

/* Heat-bath chain on contingency tables with the given margins. */
ow_status ow_analyze_contingency(const long* row_sums, size_t n_rows, const long* col_sums,
                                 size_t n_cols, const ow_options* options, ow_analysis** out);

/* Property sweep over seeded random reversible chains with random odd walk
 * sets; state counts are drawn in [2, max_chain_states]. */
ow_status ow_analyze_random_sweep(int max_chain_states, int trials, uint64_t seed,
                                  const ow_options* options, ow_analysis** out);

/* The returned strings are owned by the handle and stay valid until
 * ow_analysis_free(analysis).  All three return NULL for a NULL handle. */
const char* ow_report_json(const ow_analysis* analysis);
const char* ow_report_csv(const ow_analysis* analysis);
const char* ow_report_summary(const ow_analysis* analysis);

/* 1 iff every check passed (skipped checks do not fail); 0 otherwise. */
int ow_all_checks_passed(const ow_analysis* analysis);

void ow_analysis_free(ow_analysis* analysis);

/* Message from the most recent failing call on this thread; "" if none. */
const char* ow_last_error(void);

const char* ow_version(void);

#ifdef __cplusplus
}
#endif

#endif /* ODDWALKS_H */
