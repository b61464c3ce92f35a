#include "montecarlo.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "discriminator.hpp"

namespace cdsar {

int ContingencyTable::metric() const {
    return static_cast<int>(std::lround(100.0 * 0.5 * (r_s + r_t)));
}

double ContingencyTable::metric_std() const {
    if (n_img == 0) return 0.0;
    const double n = static_cast<double>(n_img);
    return 50.0 * std::sqrt(r_s * (1.0 - r_s) / n + r_t * (1.0 - r_t) / n);
}

RunReport run_ensemble(const SceneSpec& scene, std::size_t n_img, std::uint64_t master_seed,
                       int threads, double tol) {
    if (n_img < 1) throw std::invalid_argument("ensemble needs at least one image per model");
    const auto t_start = std::chrono::steady_clock::now();

    const MomentBasis basis = basis_for(scene, tol);

    struct TrialResult {
        bool labeled_delayed = false;
        bool converged = false;
    };
    const std::size_t n_trials = 2 * n_img;
    std::vector<TrialResult> results(n_trials);

    auto run_trial = [&](std::size_t i) {
        SceneSpec sc = scene;
        sc.truth = i < n_img ? TargetModel::s_model : TargetModel::t_model;
        Philox rng = Philox::for_trial(master_seed, i);
        const Dataset ds = synthesize(sc, basis, rng);
        const Decision dec = discriminate(ds, basis);
        results[i] = {dec.verdict == TargetModel::t_model, dec.converged};
    };

    unsigned n_workers = threads > 0 ? static_cast<unsigned>(threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
    n_workers = static_cast<unsigned>(
        std::min<std::size_t>(n_workers, n_trials));
    if (n_workers <= 1) {
        for (std::size_t i = 0; i < n_trials; ++i) run_trial(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < n_trials; i = next.fetch_add(1))
                    run_trial(i);
            });
        for (auto& th : pool) th.join();
    }

    RunReport rep;
    rep.scene = scene;
    rep.n_img = n_img;
    rep.master_seed = master_seed;
    rep.table.n_img = n_img;
    std::size_t wrong_s = 0;
    std::size_t wrong_t = 0;
    for (std::size_t i = 0; i < n_trials; ++i) { // tally in trial order
        if (i < n_img) {
            wrong_s += results[i].labeled_delayed ? 1 : 0;
        } else {
            wrong_t += results[i].labeled_delayed ? 0 : 1;
        }
        rep.table.non_converged += results[i].converged ? 0 : 1;
    }
    const double n = static_cast<double>(n_img);
    rep.table.r_s = static_cast<double>(wrong_s) / n;
    rep.table.r_t = static_cast<double>(wrong_t) / n;
    rep.table.std_r_s = std::sqrt(rep.table.r_s * (1.0 - rep.table.r_s) / n);
    rep.table.std_r_t = std::sqrt(rep.table.r_t * (1.0 - rep.table.r_t) / n);
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return rep;
}

std::vector<SweepPoint> sweep(const SceneSpec& base, SweepParameter param,
                              const std::vector<double>& values, std::size_t n_img,
                              std::uint64_t master_seed, int threads, double tol) {
    if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
    std::vector<SweepPoint> out;
    out.reserve(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        SceneSpec sc = base;
        switch (param) {
        case SweepParameter::zeta_max:
            sc.zeta_max = values[k];
            break;
        case SweepParameter::zeta_min:
            sc.zeta_min = values[k];
            break;
        case SweepParameter::target_share: {
            const double q = values[k];
            if (!(q >= 0.0) || !(q < 1.0))
                throw std::invalid_argument("target share must lie in [0, 1)");
            const double total = base.intensities.p_b + base.intensities.p_n +
                                 base.intensities.p_x;
            const double n_share = total > 0.0 ? base.intensities.p_n / total : 0.0;
            if (n_share + q >= 1.0)
                throw std::invalid_argument("noise and target shares exceed the total");
            // Fixed noise share: p_n = n_share / (1 - n_share - q) relative
            // to unit background power.
            sc.intensities = intensities_from_contrasts(n_share / (1.0 - n_share - q), q);
            break;
        }
        }
        SweepPoint pt;
        pt.value = values[k];
        pt.report = run_ensemble(sc, n_img, derived_seed(master_seed, k), threads, tol);
        out.push_back(std::move(pt));
    }
    return out;
}

} // namespace cdsar
