#pragma once

#include <cstdint>
#include <vector>

#include "sampler.hpp"

namespace cdsar {

// Classification error frequencies over an ensemble: r_s counts
// instantaneous-truth images labeled delayed, r_t the reverse.  Both are
// binomial over n_img trials.
struct ContingencyTable {
    std::size_t n_img = 0;
    double r_s = 0.0;
    double r_t = 0.0;
    double std_r_s = 0.0;
    double std_r_t = 0.0;
    std::size_t non_converged = 0; // fits that ended without clean convergence

    int metric() const;        // round(100 * (r_s + r_t) / 2); 0 best, 50 chance
    double metric_std() const; // 50 * sqrt(r_s(1-r_s)/n + r_t(1-r_t)/n)
};

struct RunReport {
    SceneSpec scene; // truth field is irrelevant: both truths are simulated
    std::size_t n_img = 0;
    std::uint64_t master_seed = 0;
    ContingencyTable table;
    double wall_seconds = 0.0; // measurement only; keep out of canonical output
};

// Synthesizes n_img images per true model, discriminates each, and tallies
// the table.  Bit-reproducible for a given master_seed regardless of the
// thread count: every trial owns a derived generator and the tally runs in
// trial order.  threads <= 0 selects the hardware concurrency.
RunReport run_ensemble(const SceneSpec& scene, std::size_t n_img, std::uint64_t master_seed,
                       int threads = 1, double tol = kDefaultQuadTol);

enum class SweepParameter {
    zeta_max,
    zeta_min,
    target_share, // background power rescaled to keep the noise share fixed
};

struct SweepPoint {
    double value = 0.0;
    RunReport report;
};

// One ensemble per value with decorrelated sub-seeds derived from
// master_seed.  For target_share the base scene's noise share of the total
// power is preserved while the target share takes the swept value.
std::vector<SweepPoint> sweep(const SceneSpec& base, SweepParameter param,
                              const std::vector<double>& values, std::size_t n_img,
                              std::uint64_t master_seed, int threads = 1,
                              double tol = kDefaultQuadTol);

} // namespace cdsar
