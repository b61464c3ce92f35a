#include "kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "specfun.hpp"

namespace cdsar {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}
} // namespace

std::vector<std::string> validate(const RadarConfig& cfg) {
    check_finite(cfg.omega0, "omega0");
    check_finite(cfg.bandwidth, "bandwidth");
    check_finite(cfg.tau, "tau");
    check_finite(cfg.phi_t, "phi_t");
    check_finite(cfg.theta, "theta");
    check_finite(cfg.wave_speed, "wave_speed");
    if (cfg.omega0 <= 0.0) throw std::invalid_argument("omega0 must be positive");
    if (cfg.bandwidth <= 0.0) throw std::invalid_argument("bandwidth must be positive");
    if (cfg.bandwidth / cfg.omega0 > 0.2)
        throw std::invalid_argument("bandwidth/omega0 exceeds 0.2: not a narrowband waveform");
    if (cfg.tau <= 0.0) throw std::invalid_argument("tau must be positive");
    if (cfg.bandwidth * cfg.tau < 10.0)
        throw std::invalid_argument("time-bandwidth product B*tau must be at least 10");
    if (!(cfg.theta > 0.0 && cfg.theta < kPi / 2.0))
        throw std::invalid_argument("theta must lie in (0, pi/2)");
    if (!(cfg.phi_t > 0.0 && cfg.phi_t <= 0.5))
        throw std::invalid_argument("phi_t must lie in (0, 0.5]");
    if (cfg.n_pulses < 1) throw std::invalid_argument("n_pulses must be at least 1");
    if (cfg.wave_speed <= 0.0) throw std::invalid_argument("wave_speed must be positive");

    std::vector<std::string> warnings;
    if (cfg.bandwidth / cfg.omega0 > 0.05)
        warnings.push_back("bandwidth/omega0 above 0.05: narrowband approximation is marginal");
    return warnings;
}

RadarConfig demo_config(double kappa_target) {
    if (!(kappa_target > 0.0) || !std::isfinite(kappa_target))
        throw std::invalid_argument("demo_config requires kappa > 0");
    RadarConfig cfg;
    cfg.omega0 = 2.0 * kPi * 1.0e10;   // 10 GHz carrier
    cfg.bandwidth = cfg.omega0 / 100.0;
    cfg.tau = 1.0e-6;
    cfg.phi_t = std::sqrt(kappa_target * cfg.bandwidth / cfg.omega0);
    cfg.theta = kPi / 4.0;
    cfg.n_pulses = 100;
    if (cfg.phi_t > 0.5)
        throw std::invalid_argument("requested kappa needs phi_t > 0.5 at the demo geometry");
    validate(cfg);
    return cfg;
}

double k0_theta(const RadarConfig& cfg) {
    return cfg.omega0 / cfg.wave_speed * std::sin(cfg.theta);
}

double kappa(const RadarConfig& cfg) {
    return cfg.phi_t * cfg.phi_t * cfg.omega0 / cfg.bandwidth;
}

Resolutions resolutions(const RadarConfig& cfg) {
    const double k0t = k0_theta(cfg);
    return {
        kPi / (k0t * cfg.phi_t),
        kPi * cfg.wave_speed / (cfg.bandwidth * std::sin(cfg.theta)),
        b_phi() / (k0t * cfg.phi_t * cfg.phi_t),
    };
}

std::complex<double> kernel_w(const DimensionlessPoint& p, const RadarConfig& cfg) {
    check_finite(p.eta, "eta");
    check_finite(p.zeta, "zeta");
    check_finite(p.psi, "psi");
    const double carrier_phase = -2.0 * (cfg.omega0 / cfg.bandwidth) * p.zeta;
    const std::complex<double> rot(std::cos(carrier_phase), std::sin(carrier_phase));
    const double amp = static_cast<double>(cfg.n_pulses) * cfg.tau;
    return amp * rot * phi(p.eta, kappa(cfg) * (p.zeta + p.psi) * 0.5) * sinc(p.zeta);
}

AmbiguityPairCoords streak_pair_coords(int m, double zd1, double zd2, const RadarConfig& cfg) {
    if (m < 1) throw std::invalid_argument("streak pair index m must be at least 1");
    check_finite(zd1, "zd1");
    check_finite(zd2, "zd2");
    const double zeta_y = kPi * static_cast<double>(m);
    const double range_offset = cfg.omega0 * zeta_y / (cfg.bandwidth * k0_theta(cfg));
    AmbiguityPairCoords pc;
    pc.s = {0.0, zd1, zd2 + range_offset};
    pc.t = {2.0 * zeta_y / cfg.bandwidth, zd1, zd2};
    pc.zeta_y = zeta_y;
    return pc;
}

AmbiguityPairCoords hom_pair_coords(int k, double y1, double y2, double zeta_max,
                                    const RadarConfig& cfg) {
    if (k < 0) throw std::invalid_argument("homogeneous sample index must be nonnegative");
    check_finite(y1, "y1");
    check_finite(y2, "y2");
    if (!(zeta_max > 0.0) || !std::isfinite(zeta_max))
        throw std::invalid_argument("zeta_max must be positive");
    const double range_offset = cfg.omega0 * zeta_max / (cfg.bandwidth * k0_theta(cfg));
    AmbiguityPairCoords pc;
    pc.s = {0.0, y1, y2};
    pc.t = {2.0 * zeta_max / cfg.bandwidth, y1, y2 - range_offset};
    pc.zeta_y = zeta_max;
    return pc;
}

} // namespace cdsar
