#include "moments.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "errors.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace cdsar {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Distance past the sinc^2 peak where the oscillatory integrals switch from
// composite panels to the averaged-tail correction.  The replacement
// sin^2 -> 1/2 leaves a residual bounded by the integrand envelope at the
// split, ~1e-7 here, uniformly in kappa.
constexpr double kTailStart = 3000.0;

// Truncation for custom reflectivity densities, where no tail asymptotics
// are available.  For bounded densities the dropped mass is
// ~ sup F / (2 (kCustomCut - zeta)).
constexpr double kCustomCut = 1e4;

double sinc2(double x) {
    const double s = sinc(x);
    return s * s;
}

double phi0_abs2(double v) {
    return std::norm(phi_marginal_v2(v));
}

double require_nonneg(double v, const char* what) {
    if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(what) + " must be finite and nonnegative");
    return v;
}

struct StreakUnit {
    double gs = 0.0;
    double gt = 0.0;
    std::complex<double> h;
};

// Streak-line operators for the unit-step density.  Core region by
// pi-aligned panels (one per half-period of sin^2), then the far tail with
// sin^2 averaged to 1/2 and mapped to [0, 1] via xi = x_end / w so a few
// adaptive panels capture the algebraic decay.
StreakUnit streak_unit_step(double zeta, double kappa, double tol) {
    StreakUnit u;
    if (kappa == 0.0) {
        const double v = f_breve_t(zeta) / kPi;
        u.gs = u.gt = v;
        u.h = v;
        return u;
    }

    const double x_end = std::max(zeta, 0.0) + kTailStart;

    u.gs = integrate_panels<double>(
        [&](double xi) { return phi0_abs2(kappa * (zeta - xi)) * sinc2(zeta - xi); }, 0.0, x_end);
    u.gt = integrate_panels<double>(
        [&](double xi) { return phi0_abs2(kappa * xi) * sinc2(zeta - xi); }, 0.0, x_end);
    // conj(Phi(0, -x)) = Phi(0, x) turns the cross term into a plain product.
    u.h = integrate_panels<std::complex<double>>(
        [&](double xi) {
            return phi_marginal_v2(kappa * (zeta - xi)) * phi_marginal_v2(kappa * xi) *
                   sinc2(zeta - xi);
        },
        0.0, x_end);

    // Tail of the S moment depends on xi - zeta only.
    const double u0 = x_end - zeta;
    {
        const double w_cut = std::min(0.02, kappa * u0 / 50.0);
        u.gs += 0.5 / u0 *
                integrate_adaptive<double>(
                    [&](double w) { return phi0_abs2(kappa * u0 / w); }, w_cut, 1.0,
                    0.5 * tol * u0);
    }
    const double w_cut = std::min(0.02, kappa * x_end / 50.0);
    auto jac = [&](double w) { // xi = x_end / w, d xi / (xi - zeta)^2 collapses to:
        const double den = x_end - zeta * w;
        return x_end / (den * den);
    };
    u.gt += 0.5 * integrate_adaptive<double>(
                      [&](double w) { return phi0_abs2(kappa * x_end / w) * jac(w); }, w_cut, 1.0,
                      0.5 * tol);
    u.h += 0.5 * integrate_adaptive<std::complex<double>>(
                     [&](double w) {
                         return phi_marginal_v2(kappa * (zeta - x_end / w)) *
                                phi_marginal_v2(kappa * x_end / w) * jac(w);
                     },
                     w_cut, 1.0, 0.5 * tol);

    u.gs /= kPi;
    u.gt /= kPi;
    u.h /= kPi;
    return u;
}

StreakUnit streak_custom(double zeta, double kappa, const ReflectivityProfile& profile) {
    StreakUnit u;
    u.gs = integrate_panels<double>(
        [&](double xi) {
            return profile(xi) * phi0_abs2(kappa * (zeta - xi)) * sinc2(zeta - xi);
        },
        0.0, kCustomCut);
    u.gt = integrate_panels<double>(
        [&](double xi) { return profile(xi) * phi0_abs2(kappa * xi) * sinc2(zeta - xi); }, 0.0,
        kCustomCut);
    u.h = integrate_panels<std::complex<double>>(
        [&](double xi) {
            return profile(xi) * phi_marginal_v2(kappa * (zeta - xi)) *
                   phi_marginal_v2(kappa * xi) * sinc2(zeta - xi);
        },
        0.0, kCustomCut);
    u.gs /= kPi;
    u.gt /= kPi;
    u.h /= kPi;
    return u;
}

const StreakUnit& streak_unit_cached(double zeta, double kappa, double tol) {
    static std::mutex mu;
    static std::map<std::array<double, 3>, StreakUnit> memo;
    std::lock_guard<std::mutex> lock(mu);
    const std::array<double, 3> key{zeta, kappa, tol};
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, streak_unit_step(zeta, kappa, tol)).first;
    return it->second;
}

StreakUnit streak_ops(double zeta, double kappa, const ReflectivityProfile& profile, double tol) {
    if (profile.is_unit_step()) return streak_unit_cached(zeta, kappa, tol);
    return streak_custom(zeta, kappa, profile);
}

// Smoothed density seen through the sinc^2 point-spread: the unit step has
// the closed form pi/2 + Si(2 zeta) - sin(zeta) sinc(zeta).
double f_breve_profile(double zeta, const ReflectivityProfile& profile) {
    if (profile.is_unit_step()) return f_breve_t(zeta);
    return integrate_panels<double>([&](double xi) { return profile(xi) * sinc2(zeta - xi); },
                                    0.0, kCustomCut);
}

void check_point(double zeta, double kappa) {
    if (!std::isfinite(zeta)) throw std::invalid_argument("zeta must be finite");
    require_nonneg(kappa, "kappa");
}

} // namespace

ReflectivityProfile ReflectivityProfile::custom(std::function<double(double)> f) {
    if (!f) throw std::invalid_argument("reflectivity density must be callable");
    ReflectivityProfile p;
    p.fn_ = std::move(f);
    return p;
}

double ReflectivityProfile::operator()(double zeta) const {
    if (!fn_) return zeta >= 0.0 ? 1.0 : 0.0;
    if (zeta < 0.0) return 0.0;
    const double v = fn_(zeta);
    if (!(v >= 0.0) || !std::isfinite(v))
        throw numeric_error("reflectivity density returned a negative or non-finite value");
    return v;
}

double g_s(ScattererKind kind, double zeta, double kappa, const ReflectivityProfile& profile,
           double tol) {
    check_point(zeta, kappa);
    switch (kind) {
    case ScattererKind::background:
    case ScattererKind::noise:
        return 1.0;
    case ScattererKind::delayed:
        return phi0_abs2(kappa * zeta) * f_breve_profile(zeta, profile) / kPi;
    case ScattererKind::streak_instantaneous:
        return streak_ops(zeta, kappa, profile, tol).gs;
    }
    throw std::invalid_argument("unknown scatterer kind");
}

double g_t(ScattererKind kind, double zeta, double kappa, const ReflectivityProfile& profile,
           double tol) {
    check_point(zeta, kappa);
    switch (kind) {
    case ScattererKind::background:
    case ScattererKind::noise:
        return 1.0;
    case ScattererKind::delayed:
        return f_breve_profile(zeta, profile) / kPi;
    case ScattererKind::streak_instantaneous:
        return streak_ops(zeta, kappa, profile, tol).gt;
    }
    throw std::invalid_argument("unknown scatterer kind");
}

std::complex<double> h(ScattererKind kind, double zeta, double kappa,
                       const ReflectivityProfile& profile, double tol) {
    check_point(zeta, kappa);
    switch (kind) {
    case ScattererKind::background:
        return phi_marginal_v2(kappa * zeta);
    case ScattererKind::noise:
        return 0.0;
    case ScattererKind::delayed:
        return phi_marginal_v2(kappa * zeta) * f_breve_profile(zeta, profile) / kPi;
    case ScattererKind::streak_instantaneous:
        return streak_ops(zeta, kappa, profile, tol).h;
    }
    throw std::invalid_argument("unknown scatterer kind");
}

double k_const(ScattererKind kind, const RadarConfig& cfg) {
    const double nt = static_cast<double>(cfg.n_pulses) * cfg.tau;
    const double nt2 = nt * nt;
    const double k0t = k0_theta(cfg);
    switch (kind) {
    case ScattererKind::background:
        return nt2 * (cfg.omega0 / (cfg.bandwidth * k0t)) * (1.0 / (k0t * cfg.phi_t)) * kPi * kPi;
    case ScattererKind::delayed:
        return nt2 * (2.0 / cfg.bandwidth) * kPi;
    case ScattererKind::streak_instantaneous:
        return nt2 * (cfg.omega0 / (cfg.bandwidth * k0t)) * kPi;
    case ScattererKind::noise:
        return 1.0;
    }
    throw std::invalid_argument("unknown scatterer kind");
}

MomentTriple pair_moments(TargetModel model, bool streak_pair, double zeta, double kappa,
                          const Intensities& p, const ReflectivityProfile& profile, double tol) {
    require_nonneg(p.p_b, "p_b");
    require_nonneg(p.p_n, "p_n");
    require_nonneg(p.p_x, "p_x");
    const std::complex<double> hb = h(ScattererKind::background, zeta, kappa, profile, tol);
    MomentTriple m;
    m.a = p.p_b + p.p_n;
    m.b = p.p_b + p.p_n;
    m.c = p.p_b * hb.real();
    m.d = p.p_b * hb.imag();
    if (streak_pair && p.p_x > 0.0) {
        const ScattererKind kind = model == TargetModel::s_model
                                       ? ScattererKind::streak_instantaneous
                                       : ScattererKind::delayed;
        m.a += p.p_x * g_s(kind, zeta, kappa, profile, tol);
        m.b += p.p_x * g_t(kind, zeta, kappa, profile, tol);
        const std::complex<double> hx = h(kind, zeta, kappa, profile, tol);
        m.c += p.p_x * hx.real();
        m.d += p.p_x * hx.imag();
    }
    return m;
}

Cov4 cov4(const MomentTriple& m) {
    if (!std::isfinite(m.a) || !std::isfinite(m.b) || !std::isfinite(m.c) || !std::isfinite(m.d))
        throw std::invalid_argument("moment triple must be finite");
    if (m.a < 0.0 || m.b < 0.0) throw std::invalid_argument("moment triple has negative power");
    const double excess = m.a * m.b - m.c * m.c - m.d * m.d;
    if (excess < -1e-9 * std::max(1.0, m.a * m.b))
        throw std::invalid_argument("moment triple violates the cross-correlation bound");
    return Cov4{{
        {0.5 * m.a, 0.0, 0.5 * m.c, -0.5 * m.d},
        {0.0, 0.5 * m.a, 0.5 * m.d, 0.5 * m.c},
        {0.5 * m.c, 0.5 * m.d, 0.5 * m.b, 0.0},
        {-0.5 * m.d, 0.5 * m.c, 0.0, 0.5 * m.b},
    }};
}

MomentBasis::MomentBasis(std::vector<double> zetas, std::size_t n_streak, double kappa,
                         const ReflectivityProfile& profile, double tol)
    : zetas_(std::move(zetas)), n_streak_(n_streak), kappa_(kappa) {
    if (n_streak_ > zetas_.size())
        throw std::invalid_argument("streak pair count exceeds grid size");
    require_nonneg(kappa_, "kappa");
    rows_.reserve(zetas_.size());
    for (double z : zetas_) {
        if (!std::isfinite(z)) throw std::invalid_argument("zeta grid must be finite");
        Row r;
        const std::complex<double> hb = phi_marginal_v2(kappa_ * z);
        r.background = {1.0, 1.0, hb.real(), hb.imag()};
        r.noise = {1.0, 1.0, 0.0, 0.0};
        const StreakUnit su = streak_ops(z, kappa_, profile, tol);
        r.streak = {su.gs, su.gt, su.h.real(), su.h.imag()};
        const double fb = f_breve_profile(z, profile) / kPi;
        const std::complex<double> hd = hb * fb;
        r.delayed = {std::norm(hb) * fb, fb, hd.real(), hd.imag()};
        rows_.push_back(r);
    }
}

MomentTriple MomentBasis::triple(TargetModel model, std::size_t j, const Intensities& p) const {
    if (j >= rows_.size()) throw std::invalid_argument("pair index out of range");
    require_nonneg(p.p_b, "p_b");
    require_nonneg(p.p_n, "p_n");
    require_nonneg(p.p_x, "p_x");
    const Row& r = rows_[j];
    MomentTriple m;
    m.a = p.p_b * r.background.a + p.p_n * r.noise.a;
    m.b = p.p_b * r.background.b + p.p_n * r.noise.b;
    m.c = p.p_b * r.background.c;
    m.d = p.p_b * r.background.d;
    if (j < n_streak_) {
        const MomentTriple& x = model == TargetModel::s_model ? r.streak : r.delayed;
        m.a += p.p_x * x.a;
        m.b += p.p_x * x.b;
        m.c += p.p_x * x.c;
        m.d += p.p_x * x.d;
    }
    return m;
}

} // namespace cdsar
