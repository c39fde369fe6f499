#ifndef QPLANE_H
#define QPLANE_H

/* This file is generated by cbindgen from crates/ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every fallible call.
 */
typedef enum {
  QPLANE_STATUS_OK = 0,
  QPLANE_STATUS_NULL_POINTER,
  QPLANE_STATUS_INVALID_ARGUMENT,
  QPLANE_STATUS_PARSE_ERROR,
  QPLANE_STATUS_CONDITION_ONE_VIOLATED,
  QPLANE_STATUS_CONDITION_TWO_VIOLATED,
  QPLANE_STATUS_CONDITION_THREE_VIOLATED,
  QPLANE_STATUS_EVEN_ORDER,
  QPLANE_STATUS_NOT_SELF_DUAL,
  QPLANE_STATUS_INDEX_OUT_OF_RANGE,
  QPLANE_STATUS_INTERNAL,
} QplaneStatus;

/**
 * Opaque handle to a validated datum and its weight table.
 */
typedef struct QplaneDatum QplaneDatum;

/**
 * Build the u_q(sl2) datum at odd order n >= 3.
 */
QplaneStatus qplane_datum_uqsl2(uint64_t n, QplaneDatum **out);

/**
 * Build the Drinfeld-double-of-Taft datum at odd order n >= 3.
 */
QplaneStatus qplane_datum_drinfeld_taft(uint64_t n, QplaneDatum **out);

/**
 * Parse and validate a datum from its JSON form
 * `{"group":[...],"a":[...],"b":[...],"chi":[...]}`.
 */
QplaneStatus qplane_datum_from_json(const char *json, QplaneDatum **out);

/**
 * Release a datum handle. Null is allowed.
 */
void qplane_datum_free(QplaneDatum *datum);

/**
 * The nilpotency degree n = |chi(a)|, or 0 for a null handle.
 */
uint64_t qplane_datum_n(const QplaneDatum *datum);

/**
 * The group order |G|, or 0 for a null handle.
 */
uint64_t qplane_datum_group_order(const QplaneDatum *datum);

/**
 * The number of weights (equals |G|), or 0 for a null handle.
 */
uint64_t qplane_datum_weight_count(const QplaneDatum *datum);

/**
 * The exponent e(lambda) of the weight at `index` (weights are in
 * lexicographic enumeration order).
 */
QplaneStatus qplane_weight_exponent(const QplaneDatum *datum, uint64_t index, uint64_t *out);

/**
 * The dimension e(lambda) + 1 of the simple module at `index`.
 */
QplaneStatus qplane_weight_dimension(const QplaneDatum *datum, uint64_t index, uint64_t *out);

/**
 * Whether the simple module at `index` is self-dual.
 */
QplaneStatus qplane_weight_is_self_dual(const QplaneDatum *datum, uint64_t index, bool *out);

/**
 * The trace of the antipode on the self-dual module at `index`, as the
 * canonical cyclotomic string `c0 + c1*z + ...` with z = zeta_E.
 * Fails with `QPLANE_STATUS_NOT_SELF_DUAL` otherwise.
 */
QplaneStatus qplane_trace_closed(const QplaneDatum *datum, uint64_t index, char **out);

/**
 * Recompute the trace by all three routes and report whether they
 * agree exactly.
 */
QplaneStatus qplane_trace_routes_agree(const QplaneDatum *datum, uint64_t index, bool *out);

/**
 * Canonical serialization of the datum, e.g.
 * `G=[3];a=[1];b=[1];chi=[2]`.
 */
QplaneStatus qplane_datum_serial(const QplaneDatum *datum, char **out);

/**
 * Release a string returned by this library. Null is allowed.
 */
void qplane_string_free(char *s);

/**
 * Static description of a status code.
 */
const char *qplane_status_message(QplaneStatus status);

#endif  /* QPLANE_H */
