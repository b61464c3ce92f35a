#include "discriminator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "errors.hpp"

namespace cdsar {

namespace {

constexpr double kLogNorm = -2.0 * 1.8378770664093454836 + 1.3862943611198906188; // -2 log(2 pi) + log 4
constexpr double kCondLimit = 1e14;
constexpr double kSick = -std::numeric_limits<double>::infinity();

// Everything the likelihood needs per pair, independent of the powers: data
// quadratics and the unit moments the powers multiply.
struct PairPre {
    double ss, tt, x1, x2;
    double hbr, hbi;        // background cross moment
    double xa, xb, xc, xd;  // inhomogeneity moments; zero on control pairs
};

std::vector<PairPre> precompute(const Dataset& data, const MomentBasis& basis,
                                TargetModel model) {
    if (data.pairs.size() != basis.size() || data.n_streak != basis.n_streak())
        throw std::invalid_argument("dataset and moment basis describe different grids");
    std::vector<PairPre> pre(data.pairs.size());
    for (std::size_t j = 0; j < data.pairs.size(); ++j) {
        const auto& q = data.pairs[j];
        PairPre& p = pre[j];
        p.ss = q[0] * q[0] + q[1] * q[1];
        p.tt = q[2] * q[2] + q[3] * q[3];
        p.x1 = q[0] * q[2] + q[1] * q[3];
        p.x2 = q[1] * q[2] - q[0] * q[3];
        const auto& row = basis.row(j);
        p.hbr = row.background.c;
        p.hbi = row.background.d;
        if (j < basis.n_streak()) {
            const MomentTriple& x =
                model == TargetModel::s_model ? row.streak : row.delayed;
            p.xa = x.a;
            p.xb = x.b;
            p.xc = x.c;
            p.xd = x.d;
        }
    }
    return pre;
}

// Sum of per-pair closed-form log densities.  With strict=true singular or
// ill-conditioned covariances throw; otherwise they return -inf so the
// optimizer treats the point as infeasible.
double loglik_core(const std::vector<PairPre>& pre, double pb, double pn, double px,
                   bool strict) {
    double ll = 0.0;
    for (const PairPre& p : pre) {
        const double a = pb + pn + px * p.xa;
        const double b = pb + pn + px * p.xb;
        const double c = pb * p.hbr + px * p.xc;
        const double d = pb * p.hbi + px * p.xd;
        const double e = a * b - c * c - d * d;
        if (!(e > 0.0) || !std::isfinite(e)) {
            if (strict) throw numeric_error("pair covariance is singular");
            return kSick;
        }
        const double half_tr = a + b;
        const double gap = std::sqrt((a - b) * (a - b) + 4.0 * (c * c + d * d));
        if (half_tr - gap <= half_tr / kCondLimit * 2.0) {
            // cond = (tr + gap) / (tr - gap) > ~1e14
            if (strict) throw numeric_error("pair covariance is ill-conditioned");
            return kSick;
        }
        const double quad = b * p.ss + a * p.tt - 2.0 * c * p.x1 - 2.0 * d * p.x2;
        ll += kLogNorm - std::log(e) - quad / e;
    }
    return ll;
}

using Vec3 = std::array<double, 3>;

struct NmResult {
    Vec3 x{};
    double f = std::numeric_limits<double>::infinity();
    bool converged = false;
    int evaluations = 0;
};

// Nelder-Mead with the textbook coefficients; minimizes f over R^3.  Stops
// when the simplex function spread falls below f_tol.
template <class F>
NmResult nelder_mead(F&& f, const Vec3& x0, double step, double f_tol, int max_evals) {
    std::array<Vec3, 4> xs;
    std::array<double, 4> fs;
    NmResult res;
    xs[0] = x0;
    for (int i = 1; i < 4; ++i) {
        xs[i] = x0;
        xs[i][i - 1] += step;
    }
    for (int i = 0; i < 4; ++i) {
        fs[i] = f(xs[i]);
        ++res.evaluations;
    }

    auto order = [&] {
        for (int i = 1; i < 4; ++i) { // insertion sort keeps it branch-simple
            const Vec3 x = xs[i];
            const double fv = fs[i];
            int j = i - 1;
            while (j >= 0 && fs[j] > fv) {
                xs[j + 1] = xs[j];
                fs[j + 1] = fs[j];
                --j;
            }
            xs[j + 1] = x;
            fs[j + 1] = fv;
        }
    };
    order();

    while (res.evaluations < max_evals) {
        if (std::isfinite(fs[0]) && fs[3] - fs[0] <= f_tol) {
            res.converged = true;
            break;
        }
        Vec3 centroid{};
        for (int i = 0; i < 3; ++i)
            centroid[i] = (xs[0][i] + xs[1][i] + xs[2][i]) / 3.0;
        auto at = [&](double coef) {
            Vec3 x;
            for (int i = 0; i < 3; ++i) x[i] = centroid[i] + coef * (xs[3][i] - centroid[i]);
            return x;
        };

        const Vec3 xr = at(-1.0);
        const double fr = f(xr);
        ++res.evaluations;
        if (fr < fs[0]) {
            const Vec3 xe = at(-2.0);
            const double fe = f(xe);
            ++res.evaluations;
            if (fe < fr) {
                xs[3] = xe;
                fs[3] = fe;
            } else {
                xs[3] = xr;
                fs[3] = fr;
            }
        } else if (fr < fs[2]) {
            xs[3] = xr;
            fs[3] = fr;
        } else {
            const bool outside = fr < fs[3];
            const Vec3 xc = at(outside ? -0.5 : 0.5);
            const double fc = f(xc);
            ++res.evaluations;
            if (fc < (outside ? fr : fs[3])) {
                xs[3] = xc;
                fs[3] = fc;
            } else {
                for (int i = 1; i < 4; ++i) {
                    for (int k = 0; k < 3; ++k) xs[i][k] = xs[0][k] + 0.5 * (xs[i][k] - xs[0][k]);
                    fs[i] = f(xs[i]);
                    ++res.evaluations;
                }
            }
        }
        order();
    }
    res.x = xs[0];
    res.f = fs[0];
    return res;
}

} // namespace

double log_likelihood(const Dataset& data, const MomentBasis& basis, TargetModel model,
                      const Intensities& p) {
    if (!(p.p_b >= 0.0) || !(p.p_n >= 0.0) || !(p.p_x >= 0.0))
        throw std::invalid_argument("component powers must be nonnegative");
    return loglik_core(precompute(data, basis, model), p.p_b, p.p_n, p.p_x, true);
}

FitResult fit_model(const Dataset& data, const MomentBasis& basis, TargetModel model) {
    const std::vector<PairPre> pre = precompute(data, basis, model);
    const std::size_t n = pre.size();
    if (n == 0) throw std::invalid_argument("dataset has no pairs");

    double tbar = 0.0;
    double sbar = 0.0;
    double hbar = 0.0;
    double min_power = std::numeric_limits<double>::infinity();
    double gbar = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double pw = 0.5 * (pre[j].ss + pre[j].tt);
        tbar += pw;
        min_power = std::min(min_power, pw);
        if (j < data.n_streak) {
            sbar += pw;
            gbar += 0.5 * (pre[j].xa + pre[j].xb);
        } else {
            hbar += pw;
        }
    }
    tbar /= static_cast<double>(n);
    sbar = data.n_streak > 0 ? sbar / static_cast<double>(data.n_streak) : tbar;
    gbar = data.n_streak > 0 ? gbar / static_cast<double>(data.n_streak) : 0.0;
    const std::size_t n_hom = n - data.n_streak;
    hbar = n_hom > 0 ? hbar / static_cast<double>(n_hom) : min_power;

    const double floor = 1e-12 * (tbar > 0.0 ? tbar : 1.0);
    auto objective = [&](const Vec3& x) {
        double pw[3];
        for (int i = 0; i < 3; ++i)
            pw[i] = std::min(std::max(std::exp(x[i]), floor), 1e100);
        return -loglik_core(pre, pw[0], pw[1], pw[2], false);
    };
    auto to_log = [&](double pb, double pn, double px) {
        return Vec3{std::log(std::max(pb, floor)), std::log(std::max(pn, floor)),
                    std::log(std::max(px, floor))};
    };

    const double g_safe = std::max(gbar, 1e-6);
    const std::array<Vec3, 4> starts{
        to_log(0.8 * hbar, 0.2 * hbar, (sbar - hbar) / g_safe),
        to_log(tbar / 3.0, tbar / 3.0, tbar / 3.0),
        to_log(tbar, floor, floor),
        to_log(0.1 * tbar, 0.1 * tbar, 0.8 * tbar / g_safe),
    };

    FitResult out;
    double best = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
    bool best_converged = false;
    Vec3 best_x{};
    for (const Vec3& s : starts) {
        const NmResult r = nelder_mead(objective, s, 0.25, 1e-8, 2000);
        out.evaluations += r.evaluations;
        if (r.f < best) {
            second = best;
            best = r.f;
            best_x = r.x;
            best_converged = r.converged;
        } else if (r.f < second) {
            second = r.f;
        }
    }
    out.loglik = -best;
    out.intensities.p_b = std::max(std::exp(best_x[0]), floor);
    out.intensities.p_n = std::max(std::exp(best_x[1]), floor);
    out.intensities.p_x = std::max(std::exp(best_x[2]), floor);
    out.converged = best_converged && (second - best <= 1e-6);
    return out;
}

Decision discriminate(const Dataset& data, const MomentBasis& basis) {
    Decision d;
    d.fit_s = fit_model(data, basis, TargetModel::s_model);
    d.fit_t = fit_model(data, basis, TargetModel::t_model);
    d.margin = d.fit_t.loglik - d.fit_s.loglik;
    d.verdict = d.margin > 0.0 ? TargetModel::t_model : TargetModel::s_model;
    d.converged = d.fit_s.converged && d.fit_t.converged;
    return d;
}

Decision discriminate(const Dataset& data) {
    const MomentBasis basis(data.zetas, data.n_streak, data.kappa);
    return discriminate(data, basis);
}

} // namespace cdsar
