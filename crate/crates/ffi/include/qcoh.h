#ifndef QCOH_H
#define QCOH_H

#include <stddef.h>
#include <stdint.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum QcohStatus {
  QCOH_STATUS_OK = 0,
  QCOH_STATUS_NULL_POINTER = 1,
  QCOH_STATUS_INVALID_UTF8 = 2,
  QCOH_STATUS_MALFORMED = 3,
  QCOH_STATUS_DIMENSION_MISMATCH = 4,
  QCOH_STATUS_IO = 5,
  QCOH_STATUS_PANIC = 6,
} QcohStatus;

/**
 * Opaque orthonormal basis.
 */
typedef struct QcohBasis QcohBasis;

/**
 * Opaque density matrix.
 */
typedef struct QcohState QcohState;

typedef struct QcohSplit {
  double total;
  double basis_part;
  double residual;
} QcohSplit;

typedef struct QcohBudget {
  double wave;
  double particle;
  double entanglement;
  double total;
} QcohBudget;

typedef struct QcohBellReport {
  double bi_coherence;
  double comp_coherence;
  double discord;
  double entanglement;
  /**
   * 1 when the ordering holds, 0 otherwise.
   */
  int32_t hierarchy_ok;
} QcohBellReport;

/**
 * Message for the most recent failure on this thread, or null.
 * The pointer stays valid until the next failing call on this thread.
 */
const char *qcoh_last_error_message(void);

/**
 * Parse a state from its JSON form.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum QcohStatus qcoh_state_from_json(const char *json, struct QcohState **out);

/**
 * Qubit state with Bloch vector `(x, y, z)`.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum QcohStatus qcoh_state_from_bloch(double x, double y, double z, struct QcohState **out);

/**
 * Bell-diagonal two-qubit state with correlations `(c1, c2, c3)`.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum QcohStatus qcoh_state_bell_diagonal(double c1, double c2, double c3, struct QcohState **out);

/**
 * Dimension of a state, or 0 for null.
 *
 * # Safety
 * `state` must be null or a live handle.
 */
uintptr_t qcoh_state_dim(const struct QcohState *state);

/**
 * # Safety
 * `state` must be null or a handle not yet freed.
 */
void qcoh_state_free(struct QcohState *state);

/**
 * # Safety
 * `out` must be a writable pointer.
 */
enum QcohStatus qcoh_basis_computational(uintptr_t dim, struct QcohBasis **out);

/**
 * # Safety
 * `out` must be a writable pointer.
 */
enum QcohStatus qcoh_basis_fourier(uintptr_t dim, struct QcohBasis **out);

/**
 * Parse a basis (columns are the vectors) from its JSON form.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum QcohStatus qcoh_basis_from_json(const char *json, struct QcohBasis **out);

/**
 * # Safety
 * `basis` must be null or a handle not yet freed.
 */
void qcoh_basis_free(struct QcohBasis *basis);

/**
 * Von Neumann entropy in bits.
 *
 * # Safety
 * `state` must be a live handle and `out` writable.
 */
enum QcohStatus qcoh_von_neumann(const struct QcohState *state, double *out);

/**
 * Basis-independent coherence `log2 d - S`.
 *
 * # Safety
 * `state` must be a live handle and `out` writable.
 */
enum QcohStatus qcoh_bi_coherence(const struct QcohState *state, double *out);

/**
 * Relative entropy of coherence in `basis`.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum QcohStatus qcoh_rel_ent_coherence(const struct QcohState *state,
                                       const struct QcohBasis *basis,
                                       double *out);

/**
 * # Safety
 * Handles must be live and `out` writable.
 */
enum QcohStatus qcoh_theorem1_split(const struct QcohState *state,
                                    const struct QcohBasis *basis,
                                    struct QcohSplit *out);

/**
 * # Safety
 * Handles must be live and `out` writable.
 */
enum QcohStatus qcoh_duality_budget(const struct QcohState *state,
                                    const struct QcohBasis *basis,
                                    struct QcohBudget *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum QcohStatus qcoh_bell_diagonal_report(double c1,
                                          double c2,
                                          double c3,
                                          struct QcohBellReport *out);

#endif  /* QCOH_H */
