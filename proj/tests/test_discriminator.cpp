#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "discriminator.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "moments.hpp"
#include "rng.hpp"
#include "sampler.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

using cdsar::TargetModel;

using Mat4 = std::array<std::array<double, 4>, 4>;

// Generic Gaussian elimination with partial pivoting: inverse and log det of
// a 4x4 matrix, used as an independent route to the pair densities.
struct InverseResult {
    Mat4 inv;
    double logdet;
};

InverseResult invert4(Mat4 a) {
    Mat4 inv{};
    for (int i = 0; i < 4; ++i) inv[i][i] = 1.0;
    double logdet = 0.0;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        REQUIRE(std::abs(a[piv][col]) > 0.0);
        if (piv != col) {
            std::swap(a[piv], a[col]);
            std::swap(inv[piv], inv[col]);
        }
        const double d = a[col][col];
        REQUIRE(d > 0.0); // covariance: every pivot of the PD matrix is positive
        logdet += std::log(d);
        for (int c = 0; c < 4; ++c) {
            a[col][c] /= d;
            inv[col][c] /= d;
        }
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (int c = 0; c < 4; ++c) {
                a[r][c] -= f * a[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return {inv, logdet};
}

// Reference likelihood: sum over pairs of the 4-variate normal log density
// with covariance assembled from the model moments.
double oracle_loglik(const cdsar::Dataset& d, TargetModel model, const cdsar::Intensities& p) {
    double ll = 0.0;
    for (std::size_t j = 0; j < d.pairs.size(); ++j) {
        const auto m =
            cdsar::pair_moments(model, j < d.n_streak, d.zetas[j], d.kappa, p);
        const InverseResult ir = invert4(cdsar::cov4(m));
        const auto& q = d.pairs[j];
        double quad = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 4; ++k) quad += q[i] * ir.inv[i][k] * q[k];
        ll += -2.0 * std::log(2.0 * kPi) - 0.5 * ir.logdet - 0.5 * quad;
    }
    return ll;
}

cdsar::Dataset draw(const cdsar::SceneSpec& spec, std::uint64_t trial) {
    cdsar::Philox rng = cdsar::Philox::for_trial(20260814, trial);
    return cdsar::synthesize(spec, rng);
}

} // namespace

TEST_CASE("likelihood of the zero sample") {
    cdsar::Dataset d;
    d.zetas = {kPi};
    d.n_streak = 1;
    d.kappa = 0.0;
    d.pairs = {{0.0, 0.0, 0.0, 0.0}};
    const cdsar::MomentBasis basis(d.zetas, d.n_streak, d.kappa);

    // A = B = 2, C = 1, D = 0; the density at the origin is
    // -2 log(2 pi) + log(4/3) for both hypotheses.
    const double want = -2.0 * std::log(2.0 * kPi) + std::log(4.0 / 3.0);
    const cdsar::Intensities p{1.0, 1.0, 0.0};
    CHECK(cdsar::log_likelihood(d, basis, TargetModel::s_model, p) ==
          doctest::Approx(want).epsilon(1e-13));
    CHECK(cdsar::log_likelihood(d, basis, TargetModel::t_model, p) ==
          doctest::Approx(-3.3880720603669102).epsilon(1e-12));
}

TEST_CASE("likelihood matches the matrix-inversion reference") {
    cdsar::SceneSpec spec;
    spec.kappa = 1.0;
    spec.truth = TargetModel::t_model;
    spec.intensities = cdsar::intensities_from_contrasts(0.25, 0.4);
    const cdsar::Dataset d = draw(spec, 0);
    const cdsar::MomentBasis basis(d.zetas, d.n_streak, d.kappa);

    const cdsar::Intensities probes[] = {
        spec.intensities, {1.0, 0.25, 0.8}, {0.5, 0.1, 0.3}, {2.0, 1.0, 1e-6}};
    for (TargetModel model : {TargetModel::s_model, TargetModel::t_model})
        for (const auto& p : probes) {
            const double got = cdsar::log_likelihood(d, basis, model, p);
            const double want = oracle_loglik(d, model, p);
            CAPTURE(p.p_b);
            CHECK(std::abs(got - want) <= 1e-8);
        }

    CHECK_THROWS_AS(cdsar::log_likelihood(d, basis, TargetModel::s_model, {-1.0, 0.25, 0.8}),
                    std::invalid_argument);
}

TEST_CASE("likelihood rejects degenerate covariances") {
    cdsar::Dataset d;
    d.zetas = {kPi};
    d.n_streak = 1;
    d.kappa = 0.0;
    d.pairs = {{0.1, 0.0, 0.1, 0.0}};
    const cdsar::MomentBasis basis(d.zetas, d.n_streak, d.kappa);
    // Pure background at kappa=0: S and T coincide, the pair covariance is
    // exactly singular.
    CHECK_THROWS_AS(
        cdsar::log_likelihood(d, basis, TargetModel::s_model, {1.0, 0.0, 0.0}),
        cdsar::numeric_error);

    cdsar::Dataset mismatched = d;
    mismatched.pairs.push_back({0.0, 0.0, 0.0, 0.0});
    CHECK_THROWS_AS(
        cdsar::log_likelihood(mismatched, basis, TargetModel::s_model, {1.0, 1.0, 0.0}),
        std::invalid_argument);
}

TEST_CASE("fitting dominates the generating parameters") {
    cdsar::SceneSpec spec;
    spec.kappa = 1.0;
    spec.truth = TargetModel::t_model;
    spec.intensities = cdsar::intensities_from_contrasts(0.25, 0.4);
    const cdsar::Dataset d = draw(spec, 1);
    const cdsar::MomentBasis basis(d.zetas, d.n_streak, d.kappa);

    for (TargetModel model : {TargetModel::s_model, TargetModel::t_model}) {
        const cdsar::FitResult fit = cdsar::fit_model(d, basis, model);
        const double at_truth = cdsar::log_likelihood(d, basis, model, spec.intensities);
        CHECK(fit.loglik >= at_truth - 1e-6);
        CHECK(fit.intensities.p_b > 0.0);
        CHECK(fit.intensities.p_n > 0.0);
        CHECK(fit.intensities.p_x > 0.0);
        CHECK(fit.evaluations > 0);
        // The reported optimum is the likelihood at the reported point.
        CHECK(cdsar::log_likelihood(d, basis, model, fit.intensities) ==
              doctest::Approx(fit.loglik).epsilon(1e-12));

        const cdsar::FitResult again = cdsar::fit_model(d, basis, model);
        CHECK(again.loglik == fit.loglik);
        CHECK(again.intensities.p_x == fit.intensities.p_x);
        CHECK(again.evaluations == fit.evaluations);
        CHECK(again.converged == fit.converged);
    }

    cdsar::Dataset empty;
    empty.kappa = 1.0;
    const cdsar::MomentBasis empty_basis(std::vector<double>{}, 0, 1.0);
    CHECK_THROWS_AS(cdsar::fit_model(empty, empty_basis, TargetModel::s_model),
                    std::invalid_argument);
}

TEST_CASE("discrimination verdicts") {
    // Strong, well-separated target: the delayed hypothesis must win on a
    // t-truth draw and lose on an s-truth draw.
    cdsar::SceneSpec spec;
    spec.kappa = 1.0;
    spec.truth = TargetModel::t_model;
    spec.intensities = cdsar::intensities_from_contrasts(0.1, 0.8);
    const cdsar::Dataset dt = draw(spec, 2);
    const cdsar::Decision ct = cdsar::discriminate(dt);
    CHECK(ct.margin == ct.fit_t.loglik - ct.fit_s.loglik);
    CHECK(ct.margin > 0.0);
    CHECK(ct.verdict == TargetModel::t_model);
    CHECK(ct.converged);

    spec.truth = TargetModel::s_model;
    const cdsar::Dataset ds = draw(spec, 3);
    const cdsar::Decision cs = cdsar::discriminate(ds);
    CHECK(cs.margin < 0.0);
    CHECK(cs.verdict == TargetModel::s_model);

    // Explicit and rebuilt bases agree.
    const cdsar::MomentBasis basis(ds.zetas, ds.n_streak, ds.kappa);
    const cdsar::Decision cs2 = cdsar::discriminate(ds, basis);
    CHECK(cs2.margin == cs.margin);
    CHECK(cs2.fit_s.loglik == cs.fit_s.loglik);
}

TEST_CASE("unresolved ambiguity yields exact ties") {
    // kappa = 0: the model hypotheses are numerically identical, so the
    // margin is exactly zero and ties resolve to the s verdict.
    cdsar::SceneSpec spec;
    spec.kappa = 0.0;
    spec.truth = TargetModel::t_model;
    spec.intensities = cdsar::intensities_from_contrasts(0.25, 0.4);
    const cdsar::Dataset d = draw(spec, 4);
    const cdsar::Decision c = cdsar::discriminate(d);
    CHECK(c.margin == 0.0);
    CHECK(c.verdict == TargetModel::s_model);

    // Control-only dataset: no streak pairs, nothing to attribute to either
    // model, again an exact tie.
    cdsar::Dataset hom;
    hom.kappa = 1.0;
    hom.n_streak = 0;
    hom.zetas.assign(8, 12.0 * kPi);
    cdsar::Philox rng = cdsar::Philox::for_trial(20260814, 5);
    const cdsar::MomentBasis hb(hom.zetas, 0, hom.kappa);
    for (std::size_t j = 0; j < hom.zetas.size(); ++j)
        hom.pairs.push_back(cdsar::sample_pair(hb.triple(TargetModel::t_model, j, spec.intensities), rng));
    const cdsar::Decision ch = cdsar::discriminate(hom, hb);
    CHECK(ch.margin == 0.0);
    CHECK(ch.verdict == TargetModel::s_model);
}
