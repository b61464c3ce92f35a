#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace cdsar {

// Gauss-Kronrod 7-15 pair on [-1, 1].  Even-index abscissae extend the
// embedded 7-point Gauss rule; the difference of the two estimates serves
// as the local error indicator.
namespace gk {

inline constexpr double abscissae[15] = {
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
};

inline constexpr double kronrod_weights[15] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
};

inline constexpr double gauss_weights[7] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
};

} // namespace gk

// One GK15 panel; returns the Kronrod estimate and |K15 - G7|.
template <class T, class F>
std::pair<T, double> gk15_panel(F&& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    T k15{};
    T g7{};
    for (int i = 0; i < 15; ++i) {
        const T v = f(mid + half * gk::abscissae[i]);
        k15 += gk::kronrod_weights[i] * v;
        if (i % 2 == 1) g7 += gk::gauss_weights[i / 2] * v;
    }
    k15 *= half;
    g7 *= half;
    using std::abs;
    return {k15, abs(k15 - g7)};
}

// Globally adaptive bisection, worst interval first, absolute tolerance.
template <class T, class F>
T integrate_adaptive(F&& f, double a, double b, double abs_tol,
                     std::size_t max_intervals = 4096) {
    struct interval {
        double a, b, err;
        T val;
    };
    if (!(a < b)) {
        if (a == b) return T{};
        std::swap(a, b);
    }
    auto [v0, e0] = gk15_panel<T>(f, a, b);
    std::vector<interval> ivs{{a, b, e0, v0}};
    ivs.reserve(256);
    double err_sum = e0;
    while (err_sum > abs_tol && ivs.size() < max_intervals) {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < ivs.size(); ++i)
            if (ivs[i].err > ivs[worst].err) worst = i;
        const interval w = ivs[worst];
        const double m = 0.5 * (w.a + w.b);
        if (m <= w.a || m >= w.b) break; // interval at floating-point resolution
        auto [vl, el] = gk15_panel<T>(f, w.a, m);
        auto [vr, er] = gk15_panel<T>(f, m, w.b);
        err_sum += el + er - w.err;
        ivs[worst] = {w.a, m, el, vl};
        ivs.push_back({m, w.b, er, vr});
    }
    if (err_sum > abs_tol)
        throw numeric_error("adaptive quadrature failed to reach tolerance");
    T total{};
    for (const auto& iv : ivs) total += iv.val;
    return total;
}

// Composite GK15 over panels of fixed width (default pi).  Suited to
// integrands oscillating with period ~2*pi where one panel per half-period
// resolves the oscillation to machine precision.
template <class T, class F>
T integrate_panels(F&& f, double a, double b, double panel_width = 3.14159265358979323846) {
    T total{};
    if (!(b > a)) return total;
    const auto n = static_cast<std::size_t>(std::ceil((b - a) / panel_width));
    const double w = (b - a) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lo = a + w * static_cast<double>(i);
        const double hi = (i + 1 == n) ? b : lo + w;
        total += gk15_panel<T>(f, lo, hi).first;
    }
    return total;
}

} // namespace cdsar
