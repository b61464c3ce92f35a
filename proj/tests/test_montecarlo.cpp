#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "montecarlo.hpp"
#include "rng.hpp"
#include "sampler.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

cdsar::SceneSpec small_scene() {
    cdsar::SceneSpec sc;
    sc.zeta_min = 3.0 * kPi;
    sc.zeta_max = 5.0 * kPi; // three streak pairs keeps the ensemble cheap
    sc.n_hom = 3;
    sc.kappa = 1.0;
    sc.intensities = cdsar::intensities_from_contrasts(0.25, 0.4);
    return sc;
}

} // namespace

TEST_CASE("classification table arithmetic") {
    cdsar::ContingencyTable t;
    t.n_img = 400;
    t.r_s = 0.165;
    t.r_t = 0.08;
    CHECK(t.metric() == 12); // round(100 * 0.1225)
    CHECK(t.metric_std() ==
          doctest::Approx(50.0 * std::sqrt(0.165 * 0.835 / 400.0 + 0.08 * 0.92 / 400.0))
              .epsilon(1e-15));

    t.r_s = 0.13;
    t.r_t = 0.12;
    CHECK(t.metric() == 13); // half-way case rounds up

    t.r_s = 0.0;
    t.r_t = 0.0;
    CHECK(t.metric() == 0);
    CHECK(t.metric_std() == 0.0);

    t.r_s = 0.5;
    t.r_t = 0.5;
    CHECK(t.metric() == 50);
    CHECK(t.metric_std() == doctest::Approx(50.0 * std::sqrt(0.5 / 400.0)).epsilon(1e-15));

    cdsar::ContingencyTable empty;
    CHECK(empty.metric() == 0);
    CHECK(empty.metric_std() == 0.0);
}

TEST_CASE("ensemble bookkeeping") {
    const cdsar::SceneSpec sc = small_scene();
    const cdsar::RunReport rep = cdsar::run_ensemble(sc, 6, 20260814);
    CHECK(rep.n_img == 6);
    CHECK(rep.master_seed == 20260814);
    CHECK(rep.table.n_img == 6);
    CHECK(rep.scene.zeta_max == sc.zeta_max);
    CHECK(rep.wall_seconds >= 0.0);
    CHECK(rep.table.r_s >= 0.0);
    CHECK(rep.table.r_s <= 1.0);
    CHECK(rep.table.r_t >= 0.0);
    CHECK(rep.table.r_t <= 1.0);
    CHECK(rep.table.std_r_s ==
          doctest::Approx(std::sqrt(rep.table.r_s * (1.0 - rep.table.r_s) / 6.0)).epsilon(1e-15));
    CHECK(rep.table.non_converged <= 12);
    // Error counts are multiples of 1/n_img.
    CHECK(rep.table.r_s * 6.0 == doctest::Approx(std::round(rep.table.r_s * 6.0)).epsilon(1e-12));

    CHECK_THROWS_AS(cdsar::run_ensemble(sc, 0, 1), std::invalid_argument);
}

TEST_CASE("ensemble is thread-count invariant") {
    const cdsar::SceneSpec sc = small_scene();
    const cdsar::RunReport one = cdsar::run_ensemble(sc, 8, 99, 1);
    const cdsar::RunReport four = cdsar::run_ensemble(sc, 8, 99, 4);
    const cdsar::RunReport hw = cdsar::run_ensemble(sc, 8, 99, 0);
    CHECK(four.table.r_s == one.table.r_s);
    CHECK(four.table.r_t == one.table.r_t);
    CHECK(four.table.non_converged == one.table.non_converged);
    CHECK(hw.table.r_s == one.table.r_s);
    CHECK(hw.table.r_t == one.table.r_t);

    const cdsar::RunReport again = cdsar::run_ensemble(sc, 8, 99, 1);
    CHECK(again.table.r_s == one.table.r_s);
    CHECK(again.table.r_t == one.table.r_t);
}

TEST_CASE("vanishing aperture parameter forces chance performance") {
    cdsar::SceneSpec sc = small_scene();
    sc.kappa = 0.0;
    const cdsar::RunReport rep = cdsar::run_ensemble(sc, 4, 7);
    // Every comparison is an exact tie resolved to the instantaneous label:
    // s-truth images are all correct, delayed ones all wrong.
    CHECK(rep.table.r_s == 0.0);
    CHECK(rep.table.r_t == 1.0);
    CHECK(rep.table.metric() == 50);
    CHECK(rep.table.metric_std() == 0.0);
}

TEST_CASE("parameter sweeps") {
    cdsar::SceneSpec base = small_scene();

    const auto pts = cdsar::sweep(base, cdsar::SweepParameter::zeta_max,
                                  {4.0 * kPi, 5.0 * kPi}, 3, 424242);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].value == 4.0 * kPi);
    CHECK(pts[0].report.scene.zeta_max == 4.0 * kPi);
    CHECK(pts[1].report.scene.zeta_max == 5.0 * kPi);
    // Every point owns a decorrelated sub-seed.
    CHECK(pts[0].report.master_seed == cdsar::derived_seed(424242, 0));
    CHECK(pts[1].report.master_seed == cdsar::derived_seed(424242, 1));

    const auto zmin = cdsar::sweep(base, cdsar::SweepParameter::zeta_min,
                                   {3.0 * kPi, 4.0 * kPi}, 3, 424242);
    CHECK(zmin[1].report.scene.zeta_min == 4.0 * kPi);

    // Target-share sweep keeps the base scene's noise share of the total.
    base.intensities = cdsar::intensities_from_contrasts(0.2, 0.4);
    const double share = base.intensities.p_n /
                         (base.intensities.p_b + base.intensities.p_n + base.intensities.p_x);
    CHECK(share == doctest::Approx(0.1).epsilon(1e-12));
    const auto qs = cdsar::sweep(base, cdsar::SweepParameter::target_share, {0.1, 0.6}, 2, 5);
    for (const auto& pt : qs) {
        const auto& p = pt.report.scene.intensities;
        CHECK(p.p_n / (p.p_b + p.p_n + p.p_x) == doctest::Approx(share).epsilon(1e-12));
        CHECK(p.p_x / (p.p_b + p.p_n + p.p_x) == doctest::Approx(pt.value).epsilon(1e-12));
    }
    CHECK(qs[0].report.scene.intensities.p_n == doctest::Approx(0.125).epsilon(1e-12));

    CHECK_THROWS_AS(cdsar::sweep(base, cdsar::SweepParameter::target_share, {0.95}, 2, 5),
                    std::invalid_argument);
    CHECK_THROWS_AS(cdsar::sweep(base, cdsar::SweepParameter::zeta_max, {}, 2, 5),
                    std::invalid_argument);
}
