/* C interface to the quasi-Hopf double verification kernel.
 *
 * All objects are opaque handles created and destroyed here; every function
 * that can fail returns a qhd_status, with a human-readable message available
 * from qhd_last_error() until the next call on the same thread.
 *
 * Verification results are returned as reports: ordered lists of named
 * checks, each with a stable anchor identifying the verified identity, the
 * residual (max-abs difference of the two sides) and a pass flag.
 */

#ifndef QHD_H
#define QHD_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qhd_status {
  QHD_OK = 0,
  QHD_ERR_IO = 1,       /* unreadable file */
  QHD_ERR_PARSE = 2,    /* unparsable file */
  QHD_ERR_INVALID = 3,  /* well-formed input violating a load-time invariant */
  QHD_ERR_ARGUMENT = 4, /* bad handle or argument */
  QHD_ERR_INTERNAL = 5
} qhd_status;

typedef struct qhd_algebra qhd_algebra;
typedef struct qhd_group qhd_group;
typedef struct qhd_cocycle qhd_cocycle;
typedef struct qhd_report qhd_report;

typedef struct qhd_options {
  double tol;            /* verdict tolerance, default 1e-9 */
  double prune;          /* sparse prune threshold, default 1e-14 */
  uint64_t seed;         /* seed for randomized spot checks */
  int force_deep_checks; /* lift the dimension gates on the deep coherence checks */
} qhd_options;

void qhd_options_init(qhd_options* opts);

const char* qhd_last_error(void);

/* ---- objects ---- */

qhd_status qhd_algebra_load(const char* path, qhd_algebra** out);
qhd_status qhd_algebra_export(const qhd_algebra* a, const char* name, const char* path);
uint32_t qhd_algebra_dim(const qhd_algebra* a);
int qhd_algebra_has_rmatrix(const qhd_algebra* a);
void qhd_algebra_free(qhd_algebra* a);

qhd_status qhd_group_load(const char* path, qhd_group** out);
uint32_t qhd_group_order(const qhd_group* g);
void qhd_group_free(qhd_group* g);

qhd_status qhd_cocycle_load(const qhd_group* g, const char* path, qhd_cocycle** out);
void qhd_cocycle_free(qhd_cocycle* w);

/* ---- pipelines ---- */

/* Full axiom suite on a loaded algebra: structure, reassociator, antipode,
 * derived twists, p/q identities, and the quasitriangular layer when an
 * R-matrix is present. */
qhd_status qhd_verify(const qhd_algebra* a, const qhd_options* opts, qhd_report** out);

/* Builds the double, verifies it end to end, and optionally hands back the
 * constructed algebra (pass NULL to discard it). */
qhd_status qhd_double_build(const qhd_algebra* a, const qhd_options* opts,
                            qhd_algebra** out_double, qhd_report** out);

/* Cocycle pipeline: validates the cocycle, builds the twisted function
 * algebra and its double, derives the explicit group-basis presentation and
 * cross-checks the two constructions. */
qhd_status qhd_twisted_double(const qhd_group* g, const qhd_cocycle* w, const qhd_options* opts,
                              qhd_algebra** out_double, qhd_report** out);

/* Monodromy relations over the double of a quasitriangular algebra. */
qhd_status qhd_monodromy(const qhd_algebra* a, const qhd_options* opts, qhd_report** out);

/* ---- reports ---- */

size_t qhd_report_count(const qhd_report* r);
int qhd_report_all_pass(const qhd_report* r);
const char* qhd_report_check_name(const qhd_report* r, size_t i);
const char* qhd_report_check_anchor(const qhd_report* r, size_t i);
double qhd_report_check_residual(const qhd_report* r, size_t i);
int qhd_report_check_pass(const qhd_report* r, size_t i);
const char* qhd_report_check_detail(const qhd_report* r, size_t i);

/* One JSON object per line; caller frees with qhd_string_free. */
char* qhd_report_to_jsonl(const qhd_report* r);
void qhd_string_free(char* s);
void qhd_report_free(qhd_report* r);

#ifdef __cplusplus
}
#endif

#endif /* QHD_H */
