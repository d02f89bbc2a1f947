// The i-epsilon regularized two-point function of the massless field along
// the uniformly accelerated worldline with a constant transverse
// four-velocity component w:
//
//   x(tau) = ( (a/al^2) sinh(al tau), (a/al^2) cosh(al tau), w tau, 0 ),
//   al = a / sqrt(1 + w^2).
//
// In units of the transition frequency,
//
//   W(dtau) = -al^4 / (16 pi^2 abar^2)
//             / [ sinh^2(al dtau/2 - i eps al^2/abar) - w^2 al^4 dtau^2 / (4 abar^2) ].
//
// At w = 0 this reduces to the linear-acceleration form; the only real zero
// of the regulated denominator as eps -> 0 is the light-cone crossing at
// dtau = 0, where W behaves exactly like the inertial kernel -1/(4 pi^2 dtau^2).

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "udw/model.hpp"

namespace udw {

struct WightmanFrame {
    double abar;  // > 0
    double w;     // >= 0
    double eps;   // i-epsilon regulator in units of 1/Omega, > 0

    WightmanFrame(double abar_, double w_, double eps_) : abar(abar_), w(w_), eps(eps_) {
        if (!(abar > 0.0)) throw std::invalid_argument("WightmanFrame: abar must be > 0");
        if (!(w >= 0.0)) throw std::invalid_argument("WightmanFrame: w must be >= 0");
        if (!(eps > 0.0)) throw std::invalid_argument("WightmanFrame: eps must be > 0");
    }

    // Derived, never stored: al/Omega = abar / sqrt(1 + w^2).
    double alpha_eff() const { return abar / std::sqrt(1.0 + w * w); }
};

namespace detail {

// sinh with a short series near the origin.  The denominator subtracts a
// quadratic from sinh^2, and for |z| < ~1e-3 the series form keeps the
// cancellation between the two exact through the leading orders.
inline std::complex<double> sinh_small_safe(std::complex<double> z, bool small) {
    if (!small) return std::sinh(z);
    const std::complex<double> z2 = z * z;
    return z * (1.0 + z2 / 6.0 * (1.0 + z2 / 20.0));
}

}  // namespace detail

inline std::complex<double> eval_general(const WightmanFrame& f, double dtau) {
    if (!std::isfinite(dtau)) throw std::invalid_argument("eval_general: dtau must be finite");
    const double al = f.alpha_eff();
    const std::complex<double> z(al * dtau / 2.0, -f.eps * al * al / f.abar);
    // series only when the whole argument is small; a large regulator part
    // already keeps sinh^2 away from the cancellation
    const bool near_pole = std::abs(al * dtau) < 1e-3 && std::abs(z) < 1e-3;
    const std::complex<double> sh = detail::sinh_small_safe(z, near_pole);
    const double parab = f.w * f.w * al * al * al * al * dtau * dtau / (4.0 * f.abar * f.abar);
    const std::complex<double> den = sh * sh - parab;
    if (std::abs(den) < 1e-300)
        throw std::domain_error("eval_general: regulated denominator underflow; eps too small");
    const double pref = -(al * al * al * al) / (16.0 * kPi * kPi * f.abar * f.abar);
    return pref / den;
}

// Linear-acceleration (w = 0) two-point function.
inline std::complex<double> eval_linear(double abar, double eps, double dtau) {
    return eval_general(WightmanFrame(abar, 0.0, eps), dtau);
}

// The w^-4 suppressed closed form quoted for the ultra-relativistic branch:
// the w = 0 function at the same abar divided by w^4.  Note this is a formal
// asymptotic form, not the pointwise w -> infinity limit of eval_general
// (that limit is -1/(4 pi^2 dtau^2 (1 + abar^2 dtau^2 / 12))).
inline std::complex<double> eval_ultra(const WightmanFrame& f, double dtau) {
    if (f.w == 0.0) throw std::domain_error("eval_ultra: w must be > 0");
    const double w4 = f.w * f.w * f.w * f.w;
    return eval_linear(f.abar, f.eps, dtau) / w4;
}

// Pointwise w -> infinity limit of eval_general at fixed dtau (eps -> 0 form).
inline std::complex<double> eval_high_velocity_limit(double abar, double dtau) {
    const double d2 = dtau * dtau;
    return {-1.0 / (4.0 * kPi * kPi * d2 * (1.0 + abar * abar * d2 / 12.0)), 0.0};
}

// Coefficient of w^2 in the expansion of eval_general at fixed dtau,
// obtained by Richardson-refined differencing in w^2 at w in {h, h/2}.
inline std::complex<double> w2_coefficient_numeric(double abar, double eps, double dtau,
                                                   double h = 1e-2) {
    const std::complex<double> w0 = eval_linear(abar, eps, dtau);
    const auto quotient = [&](double wv) {
        const std::complex<double> ww = eval_general(WightmanFrame(abar, wv, eps), dtau);
        return (ww - w0) / (wv * wv);
    };
    const std::complex<double> qh = quotient(h);
    const std::complex<double> qh2 = quotient(h / 2.0);
    return (4.0 * qh2 - qh) / 3.0;  // removes the O(h^2) term of the even expansion
}

}  // namespace udw
