/* freeconv: free additive convolution powers of measures on the real line.
 *
 * C interface to the engine. All objects are opaque handles created and
 * destroyed here; every fallible call returns fc_status and leaves a
 * human-readable message in fc_last_error() (thread-local) on failure.
 * Output arrays are caller-allocated; *_count functions give the sizes.
 */
#ifndef FREECONV_H
#define FREECONV_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fc_status {
  FC_OK = 0,
  FC_ERR_NOT_PROBABILITY,
  FC_ERR_EMPTY_MEASURE,
  FC_ERR_NON_FINITE_POSITION,
  FC_ERR_PARSE,
  FC_ERR_IO,
  FC_ERR_BAD_T,
  FC_ERR_POLE_HIT,
  FC_ERR_OUTSIDE_OMEGA,
  FC_ERR_NOT_IN_VPLUS,
  FC_ERR_DIRAC_MEASURE,
  FC_ERR_EMPTY_RHO,
  FC_ERR_BAD_DIMENSION,
  FC_ERR_DEGENERATE_DENSITY,
  FC_ERR_UNKNOWN_LAW,
  FC_ERR_NULL_ARGUMENT,
  FC_ERR_INTERNAL
} fc_status;

const char* fc_status_name(fc_status s);
const char* fc_last_error(void);

typedef struct fc_measure fc_measure;
typedef struct fc_power fc_power;
typedef struct fc_support fc_support;
typedef struct fc_ecdf fc_ecdf;

/* ---- measures ---------------------------------------------------------- */

/* Parse a measure description (see the header comment in measure_io.hpp for
 * the format). Continuous inputs are discretized into discretize_atoms
 * equal-mass atoms (pass 0 for the default of 200). */
fc_status fc_measure_parse_json(const char* json_text, int discretize_atoms,
                                fc_measure** out);
fc_status fc_measure_from_atoms(const double* positions, const double* masses,
                                size_t count, fc_measure** out);
void fc_measure_free(fc_measure* m);

/* Serialized round-trip form; free the string with fc_string_free. */
fc_status fc_measure_serialize(const fc_measure* m, char** json_out);
void fc_string_free(char* s);

size_t fc_measure_atom_count(const fc_measure* m);
fc_status fc_measure_atoms(const fc_measure* m, double* positions,
                           double* masses, size_t capacity);

/* ---- Nevanlinna data (a, rho) ------------------------------------------ */

fc_status fc_measure_rep_a(const fc_measure* m, double* a_out);
size_t fc_measure_rho_count(const fc_measure* m);
fc_status fc_measure_rho(const fc_measure* m, double* positions, double* masses,
                         size_t capacity);

/* g(x); +infinity at atoms of rho. */
fc_status fc_g_value(const fc_measure* m, double x, double* g_out);

/* f_t(x), psi_t(x) and the class of x: +1 in V_t^+, 0 in V_t, -1 in V_t^-. */
fc_status fc_boundary_point(const fc_measure* m, double t, double x,
                            double* f_out, double* psi_out, int* class_out);

/* ---- the convolution power mu^{boxplus t} ------------------------------ */

fc_status fc_power_compute(const fc_measure* m, double t,
                           int points_per_component, fc_power** out);
void fc_power_free(fc_power* p);
size_t fc_power_atom_count(const fc_power* p);
fc_status fc_power_atoms(const fc_power* p, double* positions, double* masses,
                         size_t capacity);
size_t fc_power_sample_count(const fc_power* p);
fc_status fc_power_samples(const fc_power* p, double* u, double* pdf,
                           size_t capacity);
fc_status fc_power_total_mass(const fc_power* p, double* mass_out);
fc_status fc_power_cdf(const fc_power* p, double u, double* cdf_out);

/* ---- support decomposition --------------------------------------------- */

fc_status fc_support_compute(const fc_measure* m, double t, fc_support** out);
void fc_support_free(fc_support* s);
int fc_support_ncomponents(const fc_support* s);
/* kind: 0 = ac_component, 1 = atom_point (lo == hi). */
fc_status fc_support_component(const fc_support* s, int i, double* lo,
                               double* hi, int* kind);
int fc_support_vplus_count(const fc_support* s);
fc_status fc_support_vplus(const fc_support* s, int i, double* lo, double* hi);

/* Component counts n(t) along a t grid. */
fc_status fc_ncurve(const fc_measure* m, const double* ts, size_t count,
                    int* n_out);
fc_status fc_merge_threshold(const fc_measure* m, double* m_inf_out,
                             double* t0_out);

/* ---- random-matrix Monte Carlo oracle ---------------------------------- */

fc_status fc_rmt_sample(const fc_measure* m, int n, int dim, int trials,
                        uint64_t seed, fc_ecdf** out);
void fc_ecdf_free(fc_ecdf* e);
size_t fc_ecdf_count(const fc_ecdf* e);
fc_status fc_ecdf_samples(const fc_ecdf* e, double* values, size_t capacity);

/* Kolmogorov-Smirnov distance between the engine distribution p and the
 * empirical one. */
fc_status fc_ks_power_vs_ecdf(const fc_power* p, const fc_ecdf* e,
                              double* ks_out);

#ifdef __cplusplus
}
#endif

#endif /* FREECONV_H */
