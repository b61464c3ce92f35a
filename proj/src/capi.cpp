#include "cdsar/cdsar.h"

#include <exception>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "discriminator.hpp"
#include "errors.hpp"
#include "kernel.hpp"
#include "moments.hpp"
#include "montecarlo.hpp"
#include "rng.hpp"
#include "sampler.hpp"
#include "specfun.hpp"

struct cdsar_dataset {
    cdsar::Dataset data;
    std::shared_ptr<const cdsar::MomentBasis> basis;
};

namespace {

thread_local std::string g_last_error;

template <class F>
cdsar_status guard(F&& body) noexcept {
    try {
        g_last_error.clear();
        return body();
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return CDSAR_INVALID_ARGUMENT;
    } catch (const cdsar::numeric_error& e) {
        g_last_error = e.what();
        return CDSAR_NUMERIC_ERROR;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return CDSAR_INTERNAL_ERROR;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return CDSAR_INTERNAL_ERROR;
    } catch (...) {
        g_last_error = "unknown error";
        return CDSAR_INTERNAL_ERROR;
    }
}

cdsar_status fail_arg(const char* msg) {
    g_last_error = msg;
    return CDSAR_INVALID_ARGUMENT;
}

cdsar::RadarConfig from_c(const cdsar_radar_config& c) {
    cdsar::RadarConfig cfg;
    cfg.omega0 = c.omega0;
    cfg.bandwidth = c.bandwidth;
    cfg.tau = c.tau;
    cfg.phi_t = c.phi_t;
    cfg.theta = c.theta;
    cfg.n_pulses = c.n_pulses;
    cfg.wave_speed = c.wave_speed;
    return cfg;
}

cdsar_radar_config to_c(const cdsar::RadarConfig& cfg) {
    cdsar_radar_config c;
    c.omega0 = cfg.omega0;
    c.bandwidth = cfg.bandwidth;
    c.tau = cfg.tau;
    c.phi_t = cfg.phi_t;
    c.theta = cfg.theta;
    c.n_pulses = cfg.n_pulses;
    c.wave_speed = cfg.wave_speed;
    return c;
}

cdsar::ScattererKind kind_from_c(cdsar_kind k) {
    switch (k) {
    case CDSAR_BACKGROUND: return cdsar::ScattererKind::background;
    case CDSAR_DELAYED: return cdsar::ScattererKind::delayed;
    case CDSAR_STREAK: return cdsar::ScattererKind::streak_instantaneous;
    case CDSAR_NOISE: return cdsar::ScattererKind::noise;
    }
    throw std::invalid_argument("unknown scatterer kind");
}

cdsar::TargetModel model_from_c(cdsar_model m) {
    switch (m) {
    case CDSAR_S_MODEL: return cdsar::TargetModel::s_model;
    case CDSAR_T_MODEL: return cdsar::TargetModel::t_model;
    }
    throw std::invalid_argument("unknown target model");
}

cdsar_model model_to_c(cdsar::TargetModel m) {
    return m == cdsar::TargetModel::s_model ? CDSAR_S_MODEL : CDSAR_T_MODEL;
}

cdsar::Intensities intensities_from_c(const cdsar_intensities& p) {
    return {p.p_b, p.p_n, p.p_x};
}

cdsar_intensities intensities_to_c(const cdsar::Intensities& p) {
    return {p.p_b, p.p_n, p.p_x};
}

cdsar::SceneSpec scene_from_c(const cdsar_scene& s) {
    cdsar::SceneSpec spec;
    spec.zeta_min = s.zeta_min;
    spec.zeta_max = s.zeta_max;
    spec.n_hom = s.n_hom;
    spec.kappa = s.kappa;
    spec.truth = model_from_c(s.truth);
    spec.intensities = intensities_from_c(s.intensities);
    return spec;
}

cdsar_fit_result fit_to_c(const cdsar::FitResult& f) {
    cdsar_fit_result r;
    r.intensities = intensities_to_c(f.intensities);
    r.loglik = f.loglik;
    r.converged = f.converged ? 1 : 0;
    r.evaluations = f.evaluations;
    return r;
}

cdsar_table table_to_c(const cdsar::ContingencyTable& t) {
    cdsar_table out;
    out.n_img = t.n_img;
    out.r_s = t.r_s;
    out.r_t = t.r_t;
    out.std_r_s = t.std_r_s;
    out.std_r_t = t.std_r_t;
    out.non_converged = t.non_converged;
    out.metric = t.metric();
    out.metric_std = t.metric_std();
    return out;
}

double tol_or_default(double quad_tol) {
    return quad_tol > 0.0 ? quad_tol : cdsar::kDefaultQuadTol;
}

} // namespace

extern "C" {

const char* cdsar_version(void) { return "1.0.0"; }

const char* cdsar_last_error(void) { return g_last_error.c_str(); }

uint64_t cdsar_derived_seed(uint64_t seed, uint64_t salt) {
    return cdsar::derived_seed(seed, salt);
}

cdsar_status cdsar_phi(double v1, double v2, double* re, double* im) {
    if (!re || !im) return fail_arg("null output pointer");
    return guard([&] {
        const auto z = cdsar::phi(v1, v2);
        *re = z.real();
        *im = z.imag();
        return CDSAR_OK;
    });
}

cdsar_status cdsar_phi_marginal(double v2, double* re, double* im) {
    if (!re || !im) return fail_arg("null output pointer");
    return guard([&] {
        const auto z = cdsar::phi_marginal_v2(v2);
        *re = z.real();
        *im = z.imag();
        return CDSAR_OK;
    });
}

cdsar_status cdsar_b_phi(double* out) {
    if (!out) return fail_arg("null output pointer");
    return guard([&] {
        *out = cdsar::b_phi();
        return CDSAR_OK;
    });
}

cdsar_status cdsar_fresnel(double t, double* c, double* s) {
    if (!c || !s) return fail_arg("null output pointer");
    return guard([&] {
        const auto cs = cdsar::fresnel(t);
        *c = cs.c;
        *s = cs.s;
        return CDSAR_OK;
    });
}

cdsar_status cdsar_sine_integral(double x, double* out) {
    if (!out) return fail_arg("null output pointer");
    return guard([&] {
        *out = cdsar::sine_integral(x);
        return CDSAR_OK;
    });
}

cdsar_status cdsar_smoothed_step(double zeta, double* out) {
    if (!out) return fail_arg("null output pointer");
    return guard([&] {
        *out = cdsar::f_breve_t(zeta);
        return CDSAR_OK;
    });
}

cdsar_status cdsar_demo_config(double kappa, cdsar_radar_config* out) {
    if (!out) return fail_arg("null output pointer");
    return guard([&] {
        *out = to_c(cdsar::demo_config(kappa));
        return CDSAR_OK;
    });
}

cdsar_status cdsar_kappa(const cdsar_radar_config* cfg, double* out) {
    if (!cfg || !out) return fail_arg("null pointer");
    return guard([&] {
        *out = cdsar::kappa(from_c(*cfg));
        return CDSAR_OK;
    });
}

cdsar_status cdsar_resolutions(const cdsar_radar_config* cfg, double* azimuth, double* range,
                               double* unambiguous) {
    if (!cfg || !azimuth || !range || !unambiguous) return fail_arg("null pointer");
    return guard([&] {
        const auto r = cdsar::resolutions(from_c(*cfg));
        *azimuth = r.azimuth;
        *range = r.range;
        *unambiguous = r.unambiguous;
        return CDSAR_OK;
    });
}

cdsar_status cdsar_kernel(const cdsar_radar_config* cfg, double eta, double zeta, double psi,
                          double* re, double* im) {
    if (!cfg || !re || !im) return fail_arg("null pointer");
    return guard([&] {
        const auto w = cdsar::kernel_w({eta, zeta, psi}, from_c(*cfg));
        *re = w.real();
        *im = w.imag();
        return CDSAR_OK;
    });
}

cdsar_status cdsar_unit_moments(cdsar_kind kind, double zeta, double kappa, double* g_s,
                                double* g_t, double* h_re, double* h_im) {
    if (!g_s || !g_t || !h_re || !h_im) return fail_arg("null output pointer");
    return guard([&] {
        const auto k = kind_from_c(kind);
        *g_s = cdsar::g_s(k, zeta, kappa);
        *g_t = cdsar::g_t(k, zeta, kappa);
        const auto hv = cdsar::h(k, zeta, kappa);
        *h_re = hv.real();
        *h_im = hv.imag();
        return CDSAR_OK;
    });
}

cdsar_status cdsar_k_const(cdsar_kind kind, const cdsar_radar_config* cfg, double* out) {
    if (!cfg || !out) return fail_arg("null pointer");
    return guard([&] {
        *out = cdsar::k_const(kind_from_c(kind), from_c(*cfg));
        return CDSAR_OK;
    });
}

cdsar_status cdsar_intensities_from_contrasts(double p_n, double q_st, cdsar_intensities* out) {
    if (!out) return fail_arg("null output pointer");
    return guard([&] {
        *out = intensities_to_c(cdsar::intensities_from_contrasts(p_n, q_st));
        return CDSAR_OK;
    });
}

cdsar_status cdsar_pair_moments(cdsar_model model, int streak_pair, double zeta, double kappa,
                                const cdsar_intensities* p, double m_out[4]) {
    if (!p || !m_out) return fail_arg("null pointer");
    return guard([&] {
        const auto m = cdsar::pair_moments(model_from_c(model), streak_pair != 0, zeta, kappa,
                                           intensities_from_c(*p));
        m_out[0] = m.a;
        m_out[1] = m.b;
        m_out[2] = m.c;
        m_out[3] = m.d;
        return CDSAR_OK;
    });
}

cdsar_status cdsar_synthesize(const cdsar_scene* scene, uint64_t seed, uint64_t trial,
                              double quad_tol, cdsar_dataset** out) {
    if (!scene || !out) return fail_arg("null pointer");
    return guard([&] {
        const auto spec = scene_from_c(*scene);
        auto handle = std::make_unique<cdsar_dataset>();
        const auto basis = std::make_shared<const cdsar::MomentBasis>(
            cdsar::basis_for(spec, tol_or_default(quad_tol)));
        auto rng = cdsar::Philox::for_trial(seed, trial);
        handle->data = cdsar::synthesize(spec, *basis, rng);
        handle->basis = basis;
        *out = handle.release();
        return CDSAR_OK;
    });
}

cdsar_status cdsar_dataset_create(const double* zetas, const double* pairs, size_t n_pairs,
                                  size_t n_streak, double kappa, double quad_tol,
                                  cdsar_dataset** out) {
    if (!zetas || !pairs || !out) return fail_arg("null pointer");
    return guard([&] {
        if (n_pairs == 0) throw std::invalid_argument("dataset needs at least one pair");
        if (n_streak > n_pairs) throw std::invalid_argument("n_streak exceeds n_pairs");
        auto handle = std::make_unique<cdsar_dataset>();
        handle->data.zetas.assign(zetas, zetas + n_pairs);
        handle->data.n_streak = n_streak;
        handle->data.kappa = kappa;
        handle->data.pairs.resize(n_pairs);
        for (size_t j = 0; j < n_pairs; ++j)
            for (int k = 0; k < 4; ++k) handle->data.pairs[j][k] = pairs[4 * j + k];
        handle->basis = std::make_shared<const cdsar::MomentBasis>(
            handle->data.zetas, handle->data.n_streak, handle->data.kappa,
            cdsar::ReflectivityProfile{}, tol_or_default(quad_tol));
        *out = handle.release();
        return CDSAR_OK;
    });
}

void cdsar_dataset_free(cdsar_dataset* ds) { delete ds; }

cdsar_status cdsar_dataset_size(const cdsar_dataset* ds, size_t* n_pairs, size_t* n_streak) {
    if (!ds || !n_pairs || !n_streak) return fail_arg("null pointer");
    *n_pairs = ds->data.pairs.size();
    *n_streak = ds->data.n_streak;
    g_last_error.clear();
    return CDSAR_OK;
}

cdsar_status cdsar_dataset_pair(const cdsar_dataset* ds, size_t j, double* zeta,
                                double q_out[4]) {
    if (!ds || !zeta || !q_out) return fail_arg("null pointer");
    if (j >= ds->data.pairs.size()) return fail_arg("pair index out of range");
    *zeta = ds->data.zetas[j];
    for (int k = 0; k < 4; ++k) q_out[k] = ds->data.pairs[j][k];
    g_last_error.clear();
    return CDSAR_OK;
}

cdsar_status cdsar_log_likelihood(const cdsar_dataset* ds, cdsar_model model,
                                  const cdsar_intensities* p, double* out) {
    if (!ds || !p || !out) return fail_arg("null pointer");
    return guard([&] {
        *out = cdsar::log_likelihood(ds->data, *ds->basis, model_from_c(model),
                                     intensities_from_c(*p));
        return CDSAR_OK;
    });
}

cdsar_status cdsar_fit(const cdsar_dataset* ds, cdsar_model model, cdsar_fit_result* out) {
    if (!ds || !out) return fail_arg("null pointer");
    return guard([&] {
        *out = fit_to_c(cdsar::fit_model(ds->data, *ds->basis, model_from_c(model)));
        return CDSAR_OK;
    });
}

cdsar_status cdsar_discriminate(const cdsar_dataset* ds, cdsar_decision* out) {
    if (!ds || !out) return fail_arg("null pointer");
    return guard([&] {
        const auto d = cdsar::discriminate(ds->data, *ds->basis);
        out->fit_s = fit_to_c(d.fit_s);
        out->fit_t = fit_to_c(d.fit_t);
        out->margin = d.margin;
        out->verdict = model_to_c(d.verdict);
        out->converged = d.converged ? 1 : 0;
        return CDSAR_OK;
    });
}

cdsar_status cdsar_run_ensemble(const cdsar_scene* scene, size_t n_img, uint64_t seed,
                                int threads, double quad_tol, cdsar_table* out) {
    if (!scene || !out) return fail_arg("null pointer");
    return guard([&] {
        const auto report = cdsar::run_ensemble(scene_from_c(*scene), n_img, seed, threads,
                                                tol_or_default(quad_tol));
        *out = table_to_c(report.table);
        return CDSAR_OK;
    });
}

cdsar_status cdsar_sweep(const cdsar_scene* base, cdsar_sweep_param param, const double* values,
                         size_t n_values, size_t n_img, uint64_t seed, int threads,
                         double quad_tol, cdsar_table* tables_out) {
    if (!base || !values || !tables_out) return fail_arg("null pointer");
    return guard([&] {
        cdsar::SweepParameter sp;
        switch (param) {
        case CDSAR_SWEEP_ZETA_MAX: sp = cdsar::SweepParameter::zeta_max; break;
        case CDSAR_SWEEP_ZETA_MIN: sp = cdsar::SweepParameter::zeta_min; break;
        case CDSAR_SWEEP_TARGET_SHARE: sp = cdsar::SweepParameter::target_share; break;
        default: throw std::invalid_argument("unknown sweep parameter");
        }
        const std::vector<double> vals(values, values + n_values);
        const auto points = cdsar::sweep(scene_from_c(*base), sp, vals, n_img, seed, threads,
                                         tol_or_default(quad_tol));
        for (size_t k = 0; k < points.size(); ++k) tables_out[k] = table_to_c(points[k].report.table);
        return CDSAR_OK;
    });
}

} // extern "C"
