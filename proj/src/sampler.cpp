#include "sampler.hpp"

#include <cmath>
#include <stdexcept>

#include "errors.hpp"
#include "linalg.hpp"

namespace cdsar {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<double> streak_grid(double zeta_min, double zeta_max) {
    if (!std::isfinite(zeta_min) || !std::isfinite(zeta_max) || zeta_min <= 0.0 ||
        zeta_max < zeta_min)
        throw std::invalid_argument("require 0 < zeta_min <= zeta_max");
    const long m_lo = static_cast<long>(std::ceil(zeta_min / kPi - 1e-9));
    const long m_hi = static_cast<long>(std::floor(zeta_max / kPi + 1e-9));
    if (m_lo > m_hi) throw std::invalid_argument("no pi multiple inside [zeta_min, zeta_max]");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(m_hi - m_lo + 1));
    for (long m = std::max(m_lo, 1L); m <= m_hi; ++m) grid.push_back(kPi * static_cast<double>(m));
    if (grid.empty()) throw std::invalid_argument("no usable streak offset in range");
    return grid;
}

Intensities intensities_from_contrasts(double p_n, double q_st) {
    if (!(p_n >= 0.0) || !std::isfinite(p_n))
        throw std::invalid_argument("noise contrast must be finite and nonnegative");
    if (!(q_st >= 0.0) || !(q_st < 1.0))
        throw std::invalid_argument("target share must lie in [0, 1)");
    Intensities p;
    p.p_b = 1.0;
    p.p_n = p_n;
    p.p_x = q_st * (1.0 + p_n) / (1.0 - q_st);
    return p;
}

std::array<double, 4> sample_pair(const MomentTriple& m, Philox& rng) {
    const EigenSym4 eig = eigen_sym4(cov4(m));
    const double scale = std::max(1.0, eig.values[0]);
    std::array<double, 4> q{};
    for (int k = 0; k < 4; ++k) {
        double lam = eig.values[k];
        if (lam < -1e-10 * scale)
            throw numeric_error("pair covariance has a significantly negative eigenvalue");
        if (lam < 0.0) lam = 0.0;
        const double amp = std::sqrt(lam) * rng.next_gaussian();
        for (int i = 0; i < 4; ++i) q[i] += amp * eig.vectors[k][i];
    }
    return q;
}

MomentBasis basis_for(const SceneSpec& spec, double tol) {
    std::vector<double> zetas = streak_grid(spec.zeta_min, spec.zeta_max);
    const std::size_t n_streak = zetas.size();
    zetas.insert(zetas.end(), spec.n_hom, spec.zeta_max);
    return MomentBasis(std::move(zetas), n_streak, spec.kappa, spec.profile, tol);
}

Dataset synthesize(const SceneSpec& spec, const MomentBasis& basis, Philox& rng) {
    Dataset d;
    d.zetas = basis.zetas();
    d.n_streak = basis.n_streak();
    d.kappa = basis.kappa();
    d.pairs.reserve(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        d.pairs.push_back(sample_pair(basis.triple(spec.truth, j, spec.intensities), rng));
    return d;
}

Dataset synthesize(const SceneSpec& spec, Philox& rng) {
    const MomentBasis basis = basis_for(spec);
    return synthesize(spec, basis, rng);
}

} // namespace cdsar
