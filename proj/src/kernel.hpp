#pragma once

#include <complex>
#include <string>
#include <vector>

namespace cdsar {

// Radar acquisition geometry and waveform parameters.
struct RadarConfig {
    double omega0 = 0.0;      // angular carrier frequency, rad/s
    double bandwidth = 0.0;   // chirp bandwidth B, rad/s
    double tau = 0.0;         // pulse duration, s
    double phi_t = 0.0;       // synthetic-aperture angular width, rad
    double theta = 0.0;       // incidence angle, rad
    int n_pulses = 0;         // pulses per aperture
    double wave_speed = 299792458.0; // m/s
};

// Hard validation plus soft warnings (narrowband margin).  Throws
// std::invalid_argument on violated invariants; returns warning strings
// for conditions that are legal but strain the model assumptions.
std::vector<std::string> validate(const RadarConfig& cfg);

// Demo geometry solving phi_t for a requested aperture parameter kappa,
// with omega0/B fixed at 100 so kappa = (100 phi_t)^2 / 100.
RadarConfig demo_config(double kappa);

// k_{0 theta} = (omega0/c) sin(theta): range wavenumber along the slant.
double k0_theta(const RadarConfig& cfg);

// Aperture parameter kappa = phi_t^2 * omega0 / B: ratio of the
// quadratic-phase scale to the bandwidth scale.
double kappa(const RadarConfig& cfg);

struct Resolutions {
    double azimuth;     // pi / (k0t * phi_t)
    double range;       // pi c / (B sin theta)
    double unambiguous; // b_phi / (k0t * phi_t^2)
};
Resolutions resolutions(const RadarConfig& cfg);

// Dimensionless image-domain coordinates (cross-range, range, ambiguity).
struct DimensionlessPoint {
    double eta;
    double zeta;
    double psi;
};

// Factorized point-spread kernel
//   W = N tau exp(-2i (omega0/B) zeta) Phi(eta, kappa (zeta + psi)/2) sinc(zeta).
std::complex<double> kernel_w(const DimensionlessPoint& p, const RadarConfig& cfg);

// A sample pair on one range-delay ambiguity line: S in the zero-delay
// plane, T in the target's range plane.
struct PairPoint {
    double t_y; // image delay coordinate, s
    double y1;  // cross-range, m
    double y2;  // range, m
};
struct AmbiguityPairCoords {
    PairPoint s;
    PairPoint t;
    double zeta_y; // dimensionless separation along the line
};

// Pair on the streak of a reference target at z_d: zeta_y = pi*m,
// S displaced down-range by omega0 zeta_y/(B k0t), T delayed by 2 zeta_y/B.
AmbiguityPairCoords streak_pair_coords(int m, double zd1, double zd2, const RadarConfig& cfg);

// Homogeneous-scene pair anchored at y_k, separated by zeta_max along its
// ambiguity line; k tags the sample location and does not enter coordinates.
AmbiguityPairCoords hom_pair_coords(int k, double y1, double y2, double zeta_max,
                                    const RadarConfig& cfg);

} // namespace cdsar
