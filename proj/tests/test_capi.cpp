#include <cmath>
#include <complex>
#include <cstring>
#include <string>
#include <vector>

#include "cdsar/cdsar.h"
#include "doctest.h"
#include "moments.hpp"
#include "rng.hpp"
#include "sampler.hpp"
#include "specfun.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

cdsar_scene demo_scene() {
    cdsar_scene scene{};
    scene.zeta_min = 3.0 * kPi;
    scene.zeta_max = 5.0 * kPi;
    scene.n_hom = 2;
    scene.kappa = 1.0;
    scene.truth = CDSAR_T_MODEL;
    REQUIRE(cdsar_intensities_from_contrasts(0.25, 0.4, &scene.intensities) == CDSAR_OK);
    return scene;
}

} // namespace

TEST_CASE("version and error reporting") {
    REQUIRE(cdsar_version() != nullptr);
    CHECK(std::string(cdsar_version()).find('.') != std::string::npos);

    CHECK(cdsar_phi(0.0, 0.0, nullptr, nullptr) == CDSAR_INVALID_ARGUMENT);
    CHECK(std::strlen(cdsar_last_error()) > 0);

    double re = -1.0, im = -1.0;
    CHECK(cdsar_phi(0.0, 0.0, &re, &im) == CDSAR_OK);
    CHECK(std::strlen(cdsar_last_error()) == 0); // success clears the message
    CHECK(re == 1.0);
    CHECK(im == 0.0);
}

TEST_CASE("special function surface") {
    double re = 0.0, im = 0.0;
    REQUIRE(cdsar_phi(2.0, 10.0, &re, &im) == CDSAR_OK);
    const auto want = cdsar::phi(2.0, 10.0);
    CHECK(re == want.real());
    CHECK(im == want.imag());

    REQUIRE(cdsar_phi_marginal(22.0, &re, &im) == CDSAR_OK);
    CHECK(std::complex<double>(re, im) == cdsar::phi_marginal_v2(22.0));

    double b = 0.0;
    REQUIRE(cdsar_b_phi(&b) == CDSAR_OK);
    CHECK(b == cdsar::b_phi());
    CHECK(b > 22.0);
    CHECK(b < 24.0);

    double c = 0.0, s = 0.0;
    REQUIRE(cdsar_fresnel(1.0, &c, &s) == CDSAR_OK);
    CHECK(c == doctest::Approx(0.7798934003768228).epsilon(1e-14));
    CHECK(s == doctest::Approx(0.4382591473903548).epsilon(1e-14));

    double si = 0.0;
    REQUIRE(cdsar_sine_integral(2.0, &si) == CDSAR_OK);
    CHECK(si == doctest::Approx(1.6054129768026948).epsilon(1e-14));

    double fb = 0.0;
    REQUIRE(cdsar_smoothed_step(0.0, &fb) == CDSAR_OK);
    CHECK(fb == doctest::Approx(kPi / 2.0).epsilon(1e-14));

    CHECK(cdsar_derived_seed(20260814, 3) == cdsar::derived_seed(20260814, 3));
}

TEST_CASE("radar configuration surface") {
    cdsar_radar_config cfg{};
    REQUIRE(cdsar_demo_config(0.4, &cfg) == CDSAR_OK);
    double kappa = 0.0;
    REQUIRE(cdsar_kappa(&cfg, &kappa) == CDSAR_OK);
    CHECK(kappa == doctest::Approx(0.4).epsilon(1e-14));

    CHECK(cdsar_demo_config(0.0, &cfg) == CDSAR_INVALID_ARGUMENT);
    CHECK(std::string(cdsar_last_error()).find("kappa") != std::string::npos);
    CHECK(cdsar_demo_config(0.4, nullptr) == CDSAR_INVALID_ARGUMENT);

    REQUIRE(cdsar_demo_config(0.4, &cfg) == CDSAR_OK);
    double az = 0.0, rng = 0.0, unamb = 0.0;
    REQUIRE(cdsar_resolutions(&cfg, &az, &rng, &unamb) == CDSAR_OK);
    double b_phi = 0.0;
    REQUIRE(cdsar_b_phi(&b_phi) == CDSAR_OK);
    CHECK(unamb / rng == doctest::Approx(b_phi / (kPi * 0.4)).epsilon(1e-12));

    double re = 0.0, im = 0.0;
    REQUIRE(cdsar_kernel(&cfg, 0.0, 0.0, 0.0, &re, &im) == CDSAR_OK);
    CHECK(re == doctest::Approx(cfg.n_pulses * cfg.tau).epsilon(1e-14));
    CHECK(im == 0.0);

    CHECK(cdsar_kernel(nullptr, 0.0, 0.0, 0.0, &re, &im) == CDSAR_INVALID_ARGUMENT);
    CHECK(cdsar_resolutions(&cfg, nullptr, &rng, &unamb) == CDSAR_INVALID_ARGUMENT);
}

TEST_CASE("moment surface") {
    double gs = 0.0, gt = 0.0, hre = 0.0, him = 0.0;
    REQUIRE(cdsar_unit_moments(CDSAR_BACKGROUND, 5.0 * kPi, 1.0, &gs, &gt, &hre, &him) ==
            CDSAR_OK);
    CHECK(gs == 1.0);
    CHECK(gt == 1.0);
    const auto hb = cdsar::phi_marginal_v2(5.0 * kPi);
    CHECK(hre == hb.real());
    CHECK(him == hb.imag());

    REQUIRE(cdsar_unit_moments(CDSAR_NOISE, 5.0 * kPi, 1.0, &gs, &gt, &hre, &him) == CDSAR_OK);
    CHECK(hre == 0.0);
    CHECK(him == 0.0);

    REQUIRE(cdsar_unit_moments(CDSAR_STREAK, 5.0 * kPi, 1.0, &gs, &gt, &hre, &him) == CDSAR_OK);
    CHECK(gs == cdsar::g_s(cdsar::ScattererKind::streak_instantaneous, 5.0 * kPi, 1.0));
    CHECK(gt == cdsar::g_t(cdsar::ScattererKind::streak_instantaneous, 5.0 * kPi, 1.0));

    CHECK(cdsar_unit_moments(CDSAR_DELAYED, 5.0 * kPi, -1.0, &gs, &gt, &hre, &him) ==
          CDSAR_INVALID_ARGUMENT);

    cdsar_radar_config cfg{};
    REQUIRE(cdsar_demo_config(1.0, &cfg) == CDSAR_OK);
    double k = 0.0;
    REQUIRE(cdsar_k_const(CDSAR_NOISE, &cfg, &k) == CDSAR_OK);
    CHECK(k == 1.0);
    REQUIRE(cdsar_k_const(CDSAR_DELAYED, &cfg, &k) == CDSAR_OK);
    CHECK(k == doctest::Approx(1e-16).epsilon(1e-12));

    cdsar_intensities p{};
    REQUIRE(cdsar_intensities_from_contrasts(0.25, 0.4, &p) == CDSAR_OK);
    CHECK(p.p_b == 1.0);
    CHECK(p.p_x == doctest::Approx(0.4 * 1.25 / 0.6).epsilon(1e-15));
    CHECK(cdsar_intensities_from_contrasts(0.25, 1.0, &p) == CDSAR_INVALID_ARGUMENT);

    double m[4] = {};
    REQUIRE(cdsar_pair_moments(CDSAR_T_MODEL, 1, 5.0 * kPi, 1.0, &p, m) == CDSAR_OK);
    const auto want = cdsar::pair_moments(cdsar::TargetModel::t_model, true, 5.0 * kPi, 1.0,
                                          {p.p_b, p.p_n, p.p_x});
    CHECK(m[0] == want.a);
    CHECK(m[1] == want.b);
    CHECK(m[2] == want.c);
    CHECK(m[3] == want.d);

    // Control pairs: the model drops out.
    double ms[4] = {}, mt[4] = {};
    REQUIRE(cdsar_pair_moments(CDSAR_S_MODEL, 0, 5.0 * kPi, 1.0, &p, ms) == CDSAR_OK);
    REQUIRE(cdsar_pair_moments(CDSAR_T_MODEL, 0, 5.0 * kPi, 1.0, &p, mt) == CDSAR_OK);
    for (int i = 0; i < 4; ++i) CHECK(ms[i] == mt[i]);
}

TEST_CASE("datasets through the opaque handle") {
    const cdsar_scene scene = demo_scene();

    cdsar_dataset* ds = nullptr;
    REQUIRE(cdsar_synthesize(&scene, 20260814, 0, 0.0, &ds) == CDSAR_OK);
    REQUIRE(ds != nullptr);

    size_t n_pairs = 0, n_streak = 0;
    REQUIRE(cdsar_dataset_size(ds, &n_pairs, &n_streak) == CDSAR_OK);
    CHECK(n_pairs == 5); // offsets 3pi..5pi plus two control pairs
    CHECK(n_streak == 3);

    double zeta = 0.0;
    double q[4] = {};
    REQUIRE(cdsar_dataset_pair(ds, 0, &zeta, q) == CDSAR_OK);
    CHECK(zeta == 3.0 * kPi);
    REQUIRE(cdsar_dataset_pair(ds, 4, &zeta, q) == CDSAR_OK);
    CHECK(zeta == 5.0 * kPi);
    CHECK(cdsar_dataset_pair(ds, 5, &zeta, q) == CDSAR_INVALID_ARGUMENT);

    // The handle matches a direct in-process synthesis of the same trial.
    cdsar::SceneSpec spec;
    spec.zeta_min = scene.zeta_min;
    spec.zeta_max = scene.zeta_max;
    spec.n_hom = scene.n_hom;
    spec.kappa = scene.kappa;
    spec.truth = cdsar::TargetModel::t_model;
    spec.intensities = {scene.intensities.p_b, scene.intensities.p_n, scene.intensities.p_x};
    cdsar::Philox rng = cdsar::Philox::for_trial(20260814, 0);
    const cdsar::Dataset direct = cdsar::synthesize(spec, rng);
    for (size_t j = 0; j < n_pairs; ++j) {
        REQUIRE(cdsar_dataset_pair(ds, j, &zeta, q) == CDSAR_OK);
        CHECK(zeta == direct.zetas[j]);
        for (int i = 0; i < 4; ++i) CHECK(q[i] == direct.pairs[j][i]);
    }

    // Same pairs wrapped through the raw constructor give the same
    // likelihoods and decision.
    std::vector<double> zetas(n_pairs);
    std::vector<double> flat(n_pairs * 4);
    for (size_t j = 0; j < n_pairs; ++j) {
        REQUIRE(cdsar_dataset_pair(ds, j, &zetas[j], &flat[4 * j]) == CDSAR_OK);
    }
    cdsar_dataset* wrapped = nullptr;
    REQUIRE(cdsar_dataset_create(zetas.data(), flat.data(), n_pairs, n_streak, scene.kappa, 0.0,
                                 &wrapped) == CDSAR_OK);

    double ll_a = 0.0, ll_b = 0.0;
    REQUIRE(cdsar_log_likelihood(ds, CDSAR_T_MODEL, &scene.intensities, &ll_a) == CDSAR_OK);
    REQUIRE(cdsar_log_likelihood(wrapped, CDSAR_T_MODEL, &scene.intensities, &ll_b) == CDSAR_OK);
    CHECK(ll_a == ll_b);

    cdsar_fit_result fit{};
    REQUIRE(cdsar_fit(ds, CDSAR_T_MODEL, &fit) == CDSAR_OK);
    CHECK(fit.loglik >= ll_a - 1e-6);
    CHECK(fit.evaluations > 0);

    cdsar_decision dec_a{}, dec_b{};
    REQUIRE(cdsar_discriminate(ds, &dec_a) == CDSAR_OK);
    REQUIRE(cdsar_discriminate(wrapped, &dec_b) == CDSAR_OK);
    CHECK(dec_a.margin == dec_b.margin);
    CHECK(dec_a.verdict == dec_b.verdict);
    CHECK(dec_a.margin == dec_a.fit_t.loglik - dec_a.fit_s.loglik);

    cdsar_dataset_free(wrapped);
    cdsar_dataset_free(ds);
    cdsar_dataset_free(nullptr); // tolerated, like free()

    CHECK(cdsar_synthesize(nullptr, 1, 0, 0.0, &ds) == CDSAR_INVALID_ARGUMENT);
    cdsar_scene bad = scene;
    bad.zeta_min = -1.0;
    CHECK(cdsar_synthesize(&bad, 1, 0, 0.0, &ds) == CDSAR_INVALID_ARGUMENT);
    CHECK(cdsar_dataset_create(zetas.data(), flat.data(), n_pairs, n_pairs + 1, 1.0, 0.0,
                               &wrapped) == CDSAR_INVALID_ARGUMENT);
    CHECK(cdsar_dataset_create(zetas.data(), flat.data(), 0, 0, 1.0, 0.0, &wrapped) ==
          CDSAR_INVALID_ARGUMENT);
}

TEST_CASE("ensembles through the C surface") {
    const cdsar_scene scene = demo_scene();

    cdsar_table one{}, four{};
    REQUIRE(cdsar_run_ensemble(&scene, 6, 99, 1, 0.0, &one) == CDSAR_OK);
    REQUIRE(cdsar_run_ensemble(&scene, 6, 99, 4, 0.0, &four) == CDSAR_OK);
    CHECK(one.n_img == 6);
    CHECK(one.r_s == four.r_s);
    CHECK(one.r_t == four.r_t);
    CHECK(one.non_converged == four.non_converged);
    CHECK(one.metric == four.metric);

    const double values[2] = {4.0 * kPi, 5.0 * kPi};
    cdsar_table tables[2] = {};
    REQUIRE(cdsar_sweep(&scene, CDSAR_SWEEP_ZETA_MAX, values, 2, 3, 5, 1, 0.0, tables) ==
            CDSAR_OK);
    CHECK(tables[0].n_img == 3);
    CHECK(tables[1].n_img == 3);

    // Every sweep point runs from its own derived seed: point k of the sweep
    // equals a standalone ensemble at that seed.
    cdsar_scene at0 = scene;
    at0.zeta_max = values[0];
    cdsar_table solo{};
    REQUIRE(cdsar_run_ensemble(&at0, 3, cdsar_derived_seed(5, 0), 1, 0.0, &solo) == CDSAR_OK);
    CHECK(solo.r_s == tables[0].r_s);
    CHECK(solo.r_t == tables[0].r_t);

    CHECK(cdsar_run_ensemble(&scene, 0, 1, 1, 0.0, &one) == CDSAR_INVALID_ARGUMENT);
    CHECK(cdsar_sweep(&scene, CDSAR_SWEEP_TARGET_SHARE, values, 0, 3, 5, 1, 0.0, tables) ==
          CDSAR_INVALID_ARGUMENT);
    const double bad_share[1] = {1.5};
    CHECK(cdsar_sweep(&scene, CDSAR_SWEEP_TARGET_SHARE, bad_share, 1, 3, 5, 1, 0.0, tables) ==
          CDSAR_INVALID_ARGUMENT);
}
