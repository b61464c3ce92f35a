#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "kernel.hpp"

namespace cdsar {

// Scatterer population entering an image sample's second moments.
enum class ScattererKind {
    background,
    delayed,
    streak_instantaneous,
    noise,
};

enum class TargetModel {
    s_model, // instantaneous range-aligned inhomogeneity
    t_model, // delayed point target
};

// Nonnegative reflectivity density along the streak; zero for zeta < 0
// (causality).  The default unit step admits closed-form smoothing, custom
// densities fall back to truncated quadrature.
class ReflectivityProfile {
public:
    ReflectivityProfile() = default; // unit step
    static ReflectivityProfile unit_step() { return {}; }
    static ReflectivityProfile custom(std::function<double(double)> f);

    bool is_unit_step() const { return !fn_; }
    double operator()(double zeta) const;

private:
    std::function<double(double)> fn_;
};

inline constexpr double kDefaultQuadTol = 1e-6;

// Normalized second-moment operators at the S and T points of an ambiguity
// pair: A = sum P_a g_s, B = sum P_a g_t, C + iD = sum P_a h.  Background and
// noise are flat (value 1 / 1 / Phi resp. 0); delayed and streak kinds carry
// the smoothed profile response.
double g_s(ScattererKind kind, double zeta, double kappa,
           const ReflectivityProfile& profile = {}, double tol = kDefaultQuadTol);
double g_t(ScattererKind kind, double zeta, double kappa,
           const ReflectivityProfile& profile = {}, double tol = kDefaultQuadTol);
std::complex<double> h(ScattererKind kind, double zeta, double kappa,
                       const ReflectivityProfile& profile = {}, double tol = kDefaultQuadTol);

// Physical-unit prefactors multiplying the normalized operators; reporting
// only, the statistics pipeline works with the products P = sigma^2 K.
double k_const(ScattererKind kind, const RadarConfig& cfg);

struct MomentTriple {
    double a = 0.0; // <|I^S|^2>
    double b = 0.0; // <|I^T|^2>
    double c = 0.0; // Re <conj(I^T) I^S>
    double d = 0.0; // Im <conj(I^T) I^S>
};

struct Intensities {
    double p_b = 0.0;
    double p_n = 0.0;
    double p_x = 0.0; // shared by the s- and t-target per model
};

// Moments of pair j under a model: background + noise always, plus the
// model's inhomogeneous component on streak pairs only.
MomentTriple pair_moments(TargetModel model, bool streak_pair, double zeta, double kappa,
                          const Intensities& p, const ReflectivityProfile& profile = {},
                          double tol = kDefaultQuadTol);

// Covariance of (Re I^S, Im I^S, Re I^T, Im I^T):
//   (1/2) [[A,0,C,-D],[0,A,D,C],[C,D,B,0],[-D,C,0,B]].
// Throws if the triple violates A B >= C^2 + D^2 beyond 1e-9.
using Cov4 = std::array<std::array<double, 4>, 4>;
Cov4 cov4(const MomentTriple& m);

// Per-kind unit triples on a dataset's zeta grid, memoized per (kappa, tol)
// for the unit-step profile.  Immutable after construction; shareable across
// threads.
class MomentBasis {
public:
    MomentBasis(std::vector<double> zetas, std::size_t n_streak, double kappa,
                const ReflectivityProfile& profile = {}, double tol = kDefaultQuadTol);

    std::size_t size() const { return zetas_.size(); }
    std::size_t n_streak() const { return n_streak_; }
    double kappa() const { return kappa_; }
    const std::vector<double>& zetas() const { return zetas_; }

    struct Row {
        MomentTriple background;
        MomentTriple noise;
        MomentTriple streak;
        MomentTriple delayed;
    };
    const Row& row(std::size_t j) const { return rows_[j]; }

    MomentTriple triple(TargetModel model, std::size_t j, const Intensities& p) const;

private:
    std::vector<double> zetas_;
    std::size_t n_streak_;
    double kappa_;
    std::vector<Row> rows_;
};

} // namespace cdsar
