#pragma once

#include "moments.hpp"
#include "sampler.hpp"

namespace cdsar {

// Exact log-likelihood of the dataset under a model hypothesis with fixed
// component powers: every pair is an independent circular complex Gaussian
// with the model's second moments.  Throws numeric_error on singular or
// ill-conditioned (cond > 1e14) pair covariances.
double log_likelihood(const Dataset& data, const MomentBasis& basis, TargetModel model,
                      const Intensities& p);

struct FitResult {
    Intensities intensities;
    double loglik = 0.0;
    bool converged = false; // simplex tolerance met and the two best starts agree
    int evaluations = 0;    // objective evaluations summed over starts
};

// Maximize the likelihood over the three component powers by Nelder-Mead in
// log space from four deterministic starts (method-of-moments, uniform,
// background-only, target-heavy).  Powers are floored at 1e-12 of the mean
// pair power so the covariance stays positive definite.
FitResult fit_model(const Dataset& data, const MomentBasis& basis, TargetModel model);

struct Decision {
    FitResult fit_s;
    FitResult fit_t;
    double margin = 0.0; // loglik(t) - loglik(s); ties resolve to s
    TargetModel verdict = TargetModel::s_model;
    bool converged = false;
};

Decision discriminate(const Dataset& data, const MomentBasis& basis);
Decision discriminate(const Dataset& data); // rebuilds the basis from the dataset grid

} // namespace cdsar
