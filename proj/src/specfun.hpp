#pragma once

#include <complex>

namespace cdsar {

// Unnormalized cardinal sine, sin(x)/x.
double sinc(double x);

// Fresnel integrals C(t) = int_0^t cos(pi x^2/2) dx, S(t) likewise with sin.
struct fresnel_cs {
    double c;
    double s;
};
fresnel_cs fresnel(double t);

// Auxiliary Fresnel functions: C(t) + i S(t) = (1+i)/2 - (g + i f) e^{i pi t^2/2}.
// Valid for t >= 0; f, g are smooth, positive, and decay like 1/(pi t), 1/(pi^2 t^3).
struct fresnel_fg {
    double f;
    double g;
};
fresnel_fg fresnel_aux(double t);

// Sine integral Si(x) = int_0^x sin(u)/u du.  Odd; Si(inf) = pi/2.
// Rational approximations accurate to better than 1e-16 (coefficients as
// published on the Wikipedia "Trigonometric integral" page).
double sine_integral(double x);

// Aperture factor Phi(v1, v2) = int_{-1/2}^{1/2} exp(2i v1 s + i v2 s^2) ds.
// Absolute error <= 1e-10 for |v1|, |v2| <= 1e4.  Phi(v1, 0) = sinc(v1).
std::complex<double> phi(double v1, double v2);

// Phi(0, v2) evaluated directly through the Fresnel integrals:
// (C(t) + i sign(v2) S(t))/t with t = sqrt(|v2|/(2 pi)).
std::complex<double> phi_marginal_v2(double v2);

// First local minimizer of |Phi(0, v2)| for v2 > 0, located numerically
// (dense scan + golden-section refinement).  Defines the reach of the
// quadratic-phase ambiguity in range.
double find_b_phi();

// Cached value of find_b_phi(), computed once on first use.
double b_phi();

// Smoothed step response f-breve(zeta) = int_0^inf sinc^2(zeta - u) du
//                                      = pi/2 + Si(2 zeta) - sin(zeta) sinc(zeta).
// Rises from 0 at -inf through pi/2 at 0 to a plateau of pi.
double f_breve_t(double zeta);

} // namespace cdsar
