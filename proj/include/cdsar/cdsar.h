/* C interface to the coordinate-delay SAR statistics library.
 *
 * All functions return a status code; on failure a thread-local message is
 * available via cdsar_last_error().  Output parameters are written only on
 * CDSAR_OK.  Datasets are opaque handles owned by the caller through
 * cdsar_dataset_free().
 */
#ifndef CDSAR_H
#define CDSAR_H

#include <stddef.h>
#include <stdint.h>

#if defined(CDSAR_BUILD)
#define CDSAR_API __attribute__((visibility("default")))
#else
#define CDSAR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cdsar_status {
    CDSAR_OK = 0,
    CDSAR_INVALID_ARGUMENT = 1,
    CDSAR_NUMERIC_ERROR = 2,
    CDSAR_IO_ERROR = 3,
    CDSAR_INTERNAL_ERROR = 4
} cdsar_status;

CDSAR_API const char* cdsar_version(void);

/* Message for the most recent failure on this thread; empty string if the
 * last call succeeded. */
CDSAR_API const char* cdsar_last_error(void);

/* Decorrelated sub-seed for (seed, salt); the derivation the ensemble
 * runners use internally for per-sweep-point streams. */
CDSAR_API uint64_t cdsar_derived_seed(uint64_t seed, uint64_t salt);

/* ---- special functions ---- */

/* Phi(v1, v2) = integral of exp(2 i v1 s + i v2 s^2) over s in [-1/2, 1/2]. */
CDSAR_API cdsar_status cdsar_phi(double v1, double v2, double* re, double* im);
CDSAR_API cdsar_status cdsar_phi_marginal(double v2, double* re, double* im);

/* First local minimum of |Phi(0, v)| for v > 0 (near 23). */
CDSAR_API cdsar_status cdsar_b_phi(double* out);

/* Fresnel integrals C(t), S(t) with integrand cos/sin(pi u^2 / 2). */
CDSAR_API cdsar_status cdsar_fresnel(double t, double* c, double* s);
CDSAR_API cdsar_status cdsar_sine_integral(double x, double* out);

/* Unit step seen through the sinc^2 point spread:
 * pi/2 + Si(2 zeta) - sin(zeta) sinc(zeta). */
CDSAR_API cdsar_status cdsar_smoothed_step(double zeta, double* out);

/* ---- radar configuration and imaging kernel ---- */

typedef struct cdsar_radar_config {
    double omega0;     /* carrier angular frequency, rad/s */
    double bandwidth;  /* chirp bandwidth B, rad/s */
    double tau;        /* pulse duration, s */
    double phi_t;      /* half-aperture angle, rad */
    double theta;      /* incidence angle, rad */
    int n_pulses;
    double wave_speed; /* m/s */
} cdsar_radar_config;

/* A physically consistent configuration with the requested aperture
 * parameter kappa = phi_t^2 * omega0 / bandwidth. */
CDSAR_API cdsar_status cdsar_demo_config(double kappa, cdsar_radar_config* out);
CDSAR_API cdsar_status cdsar_kappa(const cdsar_radar_config* cfg, double* out);
CDSAR_API cdsar_status cdsar_resolutions(const cdsar_radar_config* cfg, double* azimuth,
                                         double* range, double* unambiguous);

/* Point-spread kernel at dimensionless offsets (eta, zeta, psi). */
CDSAR_API cdsar_status cdsar_kernel(const cdsar_radar_config* cfg, double eta, double zeta,
                                    double psi, double* re, double* im);

/* ---- second-moment model ---- */

typedef enum cdsar_kind {
    CDSAR_BACKGROUND = 0,
    CDSAR_DELAYED = 1,
    CDSAR_STREAK = 2,
    CDSAR_NOISE = 3
} cdsar_kind;

typedef enum cdsar_model {
    CDSAR_S_MODEL = 0, /* instantaneous range-aligned inhomogeneity */
    CDSAR_T_MODEL = 1  /* delayed point target */
} cdsar_model;

/* Normalized per-kind moments at ambiguity-pair offset zeta. */
CDSAR_API cdsar_status cdsar_unit_moments(cdsar_kind kind, double zeta, double kappa,
                                          double* g_s, double* g_t, double* h_re,
                                          double* h_im);
CDSAR_API cdsar_status cdsar_k_const(cdsar_kind kind, const cdsar_radar_config* cfg,
                                     double* out);

typedef struct cdsar_intensities {
    double p_b;
    double p_n;
    double p_x;
} cdsar_intensities;

/* Powers from the contrasts: background 1, noise p_n, target power solving
 * q_st = p_x / (p_x + p_b + p_n). */
CDSAR_API cdsar_status cdsar_intensities_from_contrasts(double p_n, double q_st,
                                                        cdsar_intensities* out);

/* Pair moments (A, B, C, D) under a model; streak_pair selects whether the
 * inhomogeneous component contributes. */
CDSAR_API cdsar_status cdsar_pair_moments(cdsar_model model, int streak_pair, double zeta,
                                          double kappa, const cdsar_intensities* p,
                                          double m_out[4]);

/* ---- scenes, datasets, discrimination ---- */

typedef struct cdsar_scene {
    double zeta_min; /* streak offsets are multiples of pi in [zeta_min, zeta_max] */
    double zeta_max;
    size_t n_hom;    /* homogeneous control pairs at zeta_max */
    double kappa;
    cdsar_model truth;
    cdsar_intensities intensities;
} cdsar_scene;

typedef struct cdsar_dataset cdsar_dataset;

/* One synthetic image for (seed, trial); trials with the same seed form the
 * reproducible ensemble stream.  quad_tol <= 0 selects the default 1e-6. */
CDSAR_API cdsar_status cdsar_synthesize(const cdsar_scene* scene, uint64_t seed,
                                        uint64_t trial, double quad_tol,
                                        cdsar_dataset** out);

/* Wrap existing samples: pairs is row-major n_pairs x 4 of
 * (Re S, Im S, Re T, Im T); the first n_streak rows lie on the streak. */
CDSAR_API cdsar_status cdsar_dataset_create(const double* zetas, const double* pairs,
                                            size_t n_pairs, size_t n_streak, double kappa,
                                            double quad_tol, cdsar_dataset** out);
CDSAR_API void cdsar_dataset_free(cdsar_dataset* ds);
CDSAR_API cdsar_status cdsar_dataset_size(const cdsar_dataset* ds, size_t* n_pairs,
                                          size_t* n_streak);
CDSAR_API cdsar_status cdsar_dataset_pair(const cdsar_dataset* ds, size_t j, double* zeta,
                                          double q_out[4]);

typedef struct cdsar_fit_result {
    cdsar_intensities intensities;
    double loglik;
    int converged;
    int evaluations;
} cdsar_fit_result;

typedef struct cdsar_decision {
    cdsar_fit_result fit_s;
    cdsar_fit_result fit_t;
    double margin; /* loglik(t) - loglik(s); ties classify as s */
    cdsar_model verdict;
    int converged;
} cdsar_decision;

CDSAR_API cdsar_status cdsar_log_likelihood(const cdsar_dataset* ds, cdsar_model model,
                                            const cdsar_intensities* p, double* out);
CDSAR_API cdsar_status cdsar_fit(const cdsar_dataset* ds, cdsar_model model,
                                 cdsar_fit_result* out);
CDSAR_API cdsar_status cdsar_discriminate(const cdsar_dataset* ds, cdsar_decision* out);

/* ---- ensembles ---- */

typedef struct cdsar_table {
    size_t n_img;
    double r_s; /* instantaneous-truth images labeled delayed */
    double r_t; /* delayed-truth images labeled instantaneous */
    double std_r_s;
    double std_r_t;
    size_t non_converged;
    int metric;        /* round(100 (r_s + r_t) / 2) */
    double metric_std; /* 50 sqrt(r_s(1-r_s)/n + r_t(1-r_t)/n) */
} cdsar_table;

/* n_img trials per true model; bit-reproducible for a given seed no matter
 * how many threads run the trials.  threads <= 0 uses all cores. */
CDSAR_API cdsar_status cdsar_run_ensemble(const cdsar_scene* scene, size_t n_img,
                                          uint64_t seed, int threads, double quad_tol,
                                          cdsar_table* out);

typedef enum cdsar_sweep_param {
    CDSAR_SWEEP_ZETA_MAX = 0,
    CDSAR_SWEEP_ZETA_MIN = 1,
    CDSAR_SWEEP_TARGET_SHARE = 2
} cdsar_sweep_param;

/* One ensemble per value with decorrelated per-value sub-seeds; tables_out
 * must hold n_values entries. */
CDSAR_API cdsar_status cdsar_sweep(const cdsar_scene* base, cdsar_sweep_param param,
                                   const double* values, size_t n_values, size_t n_img,
                                   uint64_t seed, int threads, double quad_tol,
                                   cdsar_table* tables_out);

#ifdef __cplusplus
}
#endif

#endif /* CDSAR_H */
