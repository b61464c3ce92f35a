#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "moments.hpp"
#include "rng.hpp"

namespace cdsar {

// Synthetic-scene description: which ambiguity pairs are observed and the
// true population generating them.
struct SceneSpec {
    double zeta_min = 3.0 * 3.14159265358979323846;
    double zeta_max = 12.0 * 3.14159265358979323846;
    std::size_t n_hom = 15;      // pure background/noise pairs at zeta_max
    double kappa = 0.0;
    TargetModel truth = TargetModel::t_model;
    Intensities intensities;     // powers of background / noise / inhomogeneity
    ReflectivityProfile profile;
};

// One synthetic image: complex amplitudes at the S and T points of every
// pair, flattened to (Re S, Im S, Re T, Im T).  Streak pairs first, then the
// homogeneous control pairs.
struct Dataset {
    std::vector<double> zetas;
    std::size_t n_streak = 0;
    double kappa = 0.0;
    std::vector<std::array<double, 4>> pairs;
};

// Streak-pair offsets: multiples of pi inside [zeta_min, zeta_max], both ends
// inclusive up to a 1e-9 snap.
std::vector<double> streak_grid(double zeta_min, double zeta_max);

// Background power 1, noise power p_n, inhomogeneity power solving
// q = P_x / (P_x + P_b + P_n) for the requested target share q_st in [0, 1).
Intensities intensities_from_contrasts(double p_n, double q_st);

// Draw one circular complex-Gaussian pair sample with the given second
// moments.  Consumes exactly four normal deviates.  Eigenvalues of the
// covariance are clipped at zero; values below -1e-10 (relative) throw.
std::array<double, 4> sample_pair(const MomentTriple& m, Philox& rng);

MomentBasis basis_for(const SceneSpec& spec, double tol = kDefaultQuadTol);

Dataset synthesize(const SceneSpec& spec, const MomentBasis& basis, Philox& rng);
Dataset synthesize(const SceneSpec& spec, Philox& rng);

} // namespace cdsar
