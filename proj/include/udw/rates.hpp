// Closed-form transition rates for the accelerated detector with a constant
// transverse velocity component, in units of the transition frequency.
//
//   excitation    R-(inf) = planck(abar) - F(abar) w^2
//   de-excitation R+(inf) = e^{2 pi/abar} planck(abar) - e^{2 pi/abar} F(abar) w^2
//
// with planck(abar) = 1/(2 pi (e^{2 pi/abar} - 1)) and the acceleration-
// dependent velocity factor
//
//   F(abar) = abar e^{2 pi/abar} / (6 (e^{2 pi/abar}-1)^2)
//             * [ 2 + 9/abar^2 - (2 pi/abar)(1 + 1/abar^2) coth(pi/abar) ].
//
// The bracket is a difference of O(1) terms that shrinks like 1/abar^2, so
// for abar > 20 it is evaluated from its coth-series expansion instead of
// the direct form.  Everything is expressed through m = e^{-2 pi/abar},
// which stays in [0, 1) for all abar and avoids overflow at small abar.
//
// Finite-time rates add the Gaussian-window curvature correction
//
//   R_sigma = R(inf) + (abar^2 / (2 sigma^2)) d^2 R(inf) / d abar^2
//
// (the frequency derivative at fixed physical acceleration maps to abar^2
// times the plain second abar-derivative of the dimensionless rate).  The
// second derivatives are hard-coded closed forms with their own large-abar
// series branches.

#pragma once

#include <cmath>
#include <stdexcept>

#include "udw/model.hpp"
#include "udw/special_functions.hpp"

namespace udw {

enum class Direction { Excite, Deexcite };
enum class RateWindow { InfiniteTime, FiniteTime };

struct TransitionRates {
    double excitation;    // R- per Omega
    double deexcitation;  // R+ per Omega
    RateWindow kind;
    double sigma;  // meaningful for FiniteTime only
};

inline constexpr double kBracketSeriesSwitch = 20.0;

// Thermal (Planck) rate 1/(2 pi (e^{2 pi/abar} - 1)); underflows to zero for
// abar below ~1e-2, which is the physical inertial limit.
inline double planck_rate(double abar) {
    const double m = std::exp(-2.0 * kPi / abar);
    const double d1 = -std::expm1(-2.0 * kPi / abar);  // 1 - m
    return m / (2.0 * kPi * d1);
}

// e^{2 pi/abar} * planck_rate, assembled without the exponential blow-up.
inline double boosted_planck_rate(double abar) {
    const double d1 = -std::expm1(-2.0 * kPi / abar);
    return 1.0 / (2.0 * kPi * d1);
}

// --- the bracket of F(abar) -------------------------------------------------

inline double velocity_factor_bracket_direct(double abar) {
    return 2.0 + 9.0 / (abar * abar)
           - (2.0 * kPi / abar) * (1.0 + 1.0 / (abar * abar)) * coth(kPi / abar);
}

// coth-series form: bracket = sum_m g_{2m} u^{2m}, u = pi/abar.
inline double velocity_factor_bracket_series(double abar) {
    constexpr double pi2 = kPi * kPi;
    const double g2 = 7.0 / pi2 - 2.0 / 3.0;
    const double g4 = 2.0 / 45.0 - 2.0 / (3.0 * pi2);
    const double g6 = -4.0 / 945.0 + 2.0 / (45.0 * pi2);
    const double g8 = 2.0 / 4725.0 - 4.0 / (945.0 * pi2);
    const double g10 = -4.0 / 93555.0 + 2.0 / (4725.0 * pi2);
    const double g12 = 2764.0 / 638512875.0 - 4.0 / (93555.0 * pi2);
    const double u2 = (kPi / abar) * (kPi / abar);
    return u2 * (g2 + u2 * (g4 + u2 * (g6 + u2 * (g8 + u2 * (g10 + u2 * g12)))));
}

inline double velocity_factor_bracket(double abar) {
    return abar > kBracketSeriesSwitch ? velocity_factor_bracket_series(abar)
                                       : velocity_factor_bracket_direct(abar);
}

// F(abar) = abar m G / (6 (1-m)^2); negative below abar ~ 10, positive above.
inline double velocity_factor(double abar) {
    if (!(abar > 0.0)) throw std::invalid_argument("velocity_factor: abar must be > 0");
    const double m = std::exp(-2.0 * kPi / abar);
    const double d1 = -std::expm1(-2.0 * kPi / abar);
    return abar * m * velocity_factor_bracket(abar) / (6.0 * d1 * d1);
}

// e^{2 pi/abar} * F(abar) = abar G / (6 (1-m)^2), overflow-free.
inline double boosted_velocity_factor(double abar) {
    const double d1 = -std::expm1(-2.0 * kPi / abar);
    return abar * velocity_factor_bracket(abar) / (6.0 * d1 * d1);
}

// --- second abar-derivatives ------------------------------------------------

// d^2 planck / d abar^2 = 2 pi m h(-t) / (abar^4 (1-m)^3), t = 2 pi / abar.
// Since e^{t} planck = planck + 1/(2 pi), the boosted rate has the same
// curvature and this single form serves both directions' thermal part.
inline double planck_rate_d2(double abar) {
    const double t = 2.0 * kPi / abar;
    const double m = std::exp(-t);
    const double d1 = -std::expm1(-t);
    return 2.0 * kPi * m * thermal_curvature_bracket(-t) / (abar * abar * abar * abar * d1 * d1 * d1);
}

namespace detail {

// Numerator polynomials of the exact second derivatives, in m and abar.
// F''  = m  * nf / (3 abar^6 (m-1)^5)
// EF'' =      nef / (3 abar^6 (m-1)^5)      (EF = e^{2 pi/abar} F)
inline double velocity_factor_d2_num(double abar, double m) {
    constexpr double pi2 = kPi * kPi;
    constexpr double pi3 = kPi * kPi * kPi;
    const double m2 = m * m, m3 = m * m * m;
    const double a2 = abar * abar, a3 = a2 * abar;
    return a3 * ((9.0 + 8.0 * pi2) * (m3 - 1.0) + (24.0 * pi2 - 27.0) * (m2 - m))
           + a2 * ((42.0 * kPi + 4.0 * pi3) * (m3 + 1.0) + (44.0 * pi3 - 42.0 * kPi) * (m2 + m))
           + abar * 30.0 * pi2 * (m3 + 3.0 * m2 - 3.0 * m - 1.0)
           + 4.0 * pi3 * (m3 + 11.0 * m2 + 11.0 * m + 1.0);
}

inline double boosted_velocity_factor_d2_num(double abar, double m) {
    constexpr double pi2 = kPi * kPi;
    constexpr double pi3 = kPi * kPi * kPi;
    const double m2 = m * m, m3 = m * m * m;
    const double a2 = abar * abar, a3 = a2 * abar;
    return a3 * ((9.0 + 24.0 * pi2) * m3 - 27.0 * m2 + (27.0 - 24.0 * pi2) * m - 9.0)
           + a2 * ((78.0 * kPi + 16.0 * pi3) * m3 + (64.0 * pi3 - 150.0 * kPi) * m2
                   + (66.0 * kPi + 16.0 * pi3) * m + 6.0 * kPi)
           + abar * pi2 * (96.0 * m3 - 12.0 * m2 - 84.0 * m)
           + 16.0 * pi3 * (m3 + 4.0 * m2 + m);
}

// Large-abar series of F(abar) in x = 1/abar: F = sum c_k x^k (odd k only,
// plus the x^-1 linear growth).  d^2/dabar^2 [x^k] = k (k+1) x^{k+2}.
inline double velocity_factor_d2_series(double abar) {
    constexpr double pi2 = kPi * kPi;
    constexpr double pi4 = pi2 * pi2;
    constexpr double pi6 = pi4 * pi2;
    constexpr double pi8 = pi4 * pi4;
    const double c1 = pi2 / 90.0 - 1.0 / 8.0;
    const double c3 = pi2 * (231.0 - 20.0 * pi2) / 7560.0;
    const double c5 = pi4 * (28.0 * pi2 - 325.0) / 56700.0;
    const double c7 = pi6 / 1080.0 - pi8 / 12474.0;
    const double c9 = pi8 * (30404.0 * pi2 - 348075.0) / 2554051500.0;
    const double x2 = 1.0 / (abar * abar);
    return (x2 / abar)
           * (2.0 * c1 + x2 * (12.0 * c3 + x2 * (30.0 * c5 + x2 * (56.0 * c7 + x2 * 90.0 * c9))));
}

inline double boosted_velocity_factor_d2_series(double abar) {
    constexpr double pi2 = kPi * kPi;
    constexpr double pi3 = pi2 * kPi;
    constexpr double pi4 = pi2 * pi2;
    constexpr double pi5 = pi4 * kPi;
    constexpr double pi6 = pi4 * pi2;
    constexpr double pi7 = pi6 * kPi;
    constexpr double pi8 = pi4 * pi4;
    const double e1 = 11.0 / 24.0 - 2.0 * pi2 / 45.0;
    const double e2 = kPi * (75.0 - 8.0 * pi2) / 540.0;
    const double e3 = pi4 / 945.0 - pi2 / 40.0;
    const double e4 = pi3 * (8.0 * pi2 - 105.0) / 3780.0;
    const double e5 = pi4 * (8.0 * pi2 - 115.0) / 56700.0;
    const double e6 = pi5 * (95.0 - 8.0 * pi2) / 28350.0;
    const double e7 = pi6 * (715.0 - 56.0 * pi2) / 1247400.0;
    const double e8 = pi7 * (200.0 * pi2 - 2277.0) / 5613300.0;
    const double e9 = pi8 * (21304.0 * pi2 - 257985.0) / 2554051500.0;
    const double x = 1.0 / abar;
    const double x2 = x * x;
    return x2 * x
           * (2.0 * e1
              + x * (6.0 * e2
                     + x * (12.0 * e3
                            + x * (20.0 * e4
                                   + x * (30.0 * e5
                                          + x * (42.0 * e6
                                                 + x * (56.0 * e7
                                                        + x * (72.0 * e8 + x * 90.0 * e9))))))));
}

}  // namespace detail

inline double velocity_factor_d2(double abar) {
    if (abar > kBracketSeriesSwitch) return detail::velocity_factor_d2_series(abar);
    const double m = std::exp(-2.0 * kPi / abar);
    const double mm1 = m - 1.0;
    const double den = 3.0 * std::pow(abar, 6) * std::pow(mm1, 5);
    return m * detail::velocity_factor_d2_num(abar, m) / den;
}

inline double boosted_velocity_factor_d2(double abar) {
    if (abar > kBracketSeriesSwitch) return detail::boosted_velocity_factor_d2_series(abar);
    const double m = std::exp(-2.0 * kPi / abar);
    const double mm1 = m - 1.0;
    const double den = 3.0 * std::pow(abar, 6) * std::pow(mm1, 5);
    return detail::boosted_velocity_factor_d2_num(abar, m) / den;
}

// --- rates -------------------------------------------------------------------

inline double rate_infinite(const DetectorParams& p, Direction d) {
    if (p.regime != Regime::NonRelativistic)
        throw std::domain_error("rate_infinite: requires the non-relativistic branch");
    if (!(p.w < 1.0)) throw std::domain_error("rate_infinite: requires w < 1");
    const double w2 = p.w * p.w;
    const double r = (d == Direction::Excite)
                         ? planck_rate(p.abar) - w2 * velocity_factor(p.abar)
                         : boosted_planck_rate(p.abar) - w2 * boosted_velocity_factor(p.abar);
    if (r < 0.0)
        throw std::domain_error("rate_infinite: negative rate; w outside the O(w^2) validity");
    return r;
}

inline double rate_finite(const DetectorParams& p, Direction d) {
    if (p.regime != Regime::NonRelativistic)
        throw std::domain_error("rate_finite: requires the non-relativistic branch");
    if (!(p.sigma >= 1.0))
        throw std::domain_error("rate_finite: sigma < 1, window correction is not perturbative");
    const double w2 = p.w * p.w;
    const double curvature =
        (d == Direction::Excite)
            ? planck_rate_d2(p.abar) - w2 * velocity_factor_d2(p.abar)
            : planck_rate_d2(p.abar) - w2 * boosted_velocity_factor_d2(p.abar);
    const double r = rate_infinite(p, d)
                     + (p.abar * p.abar / (2.0 * p.sigma * p.sigma)) * curvature;
    if (r < 0.0) throw std::domain_error("rate_finite: negative rate");
    return r;
}

inline double rate_ultra(const DetectorParams& p, Direction d) {
    if (p.regime != Regime::UltraRelativistic)
        throw std::domain_error("rate_ultra: requires the ultra-relativistic branch");
    if (!(p.w > 0.0)) throw std::domain_error("rate_ultra: requires w > 0");
    const double w4 = p.w * p.w * p.w * p.w;
    return (d == Direction::Excite ? planck_rate(p.abar) : boosted_planck_rate(p.abar)) / w4;
}

inline TransitionRates transition_rates(const DetectorParams& p, RateWindow window) {
    if (window == RateWindow::InfiniteTime)
        return {rate_infinite(p, Direction::Excite), rate_infinite(p, Direction::Deexcite),
                window, 0.0};
    return {rate_finite(p, Direction::Excite), rate_finite(p, Direction::Deexcite), window,
            p.sigma};
}

// --- coefficient-table form of the finite-time rates --------------------------
//
// Alternative assembly of the 1/sigma^2 correction from a closed coefficient
// table.  Kept for cross-checking the derivative path; the two disagree (the
// table appears to carry transcription defects), and the quadrature oracle
// sides with the derivative path.  See the rates tests.

namespace detail {

inline double coeff_form_a1_minus(double abar, double w, double E) {
    const double w2 = w * w;
    return 30.0 * kPi * kPi * abar * w2 * (-1.0 - 3.0 * E + 3.0 * E * E + 6.0 * E)
           + 4.0 * std::pow(kPi, 3) * w2 * (1.0 + 11.0 * E + 11.0 * E * E + E * E * E);
}

inline double coeff_form_a2_minus(double abar, double w, double E) {
    const double w2 = w * w;
    const double pi2 = kPi * kPi;
    const double inner = 3.0 + (21.0 + 2.0 * pi2) * w2 + E * ((20.0 * pi2 - 42.0) * w2 - 6.0);
    return 2.0 * kPi * abar * abar * (E + 1.0)
           * (3.0 + (21.0 + 2.0 * pi2) * w2 + E * E * inner);
}

inline double coeff_form_a3_minus(double abar, double w, double E) {
    const double w2 = w * w;
    const double pi2 = kPi * kPi;
    return -std::pow(abar, 3) * (E - 1.0)
           * (6.0 + (9.0 + 8.0 * pi2) * w2 + E * E * (6.0 + (9.0 + 8.0 * pi2) * w2)
              + 2.0 * E * ((16.0 * pi2 - 9.0) * w2 - 6.0));
}

inline double coeff_form_a1_plus(double abar, double w, double E) {
    const double w2 = w * w;
    const double E2 = E * E, E3 = E * E * E;
    // the second line carries a doubled E^3 term, reproduced as tabulated
    return -12.0 * kPi * kPi * abar * w2 * (-8.0 * E + E2 + 7.0 * E3)
           + 16.0 * std::pow(kPi, 3) * w2 * (E + 4.0 * E2 + E3 + E3);
}

inline double coeff_form_a2_plus(double abar, double w, double E) {
    const double w2 = w * w;
    const double pi2 = kPi * kPi;
    const double E2 = E * E, E3 = E * E * E, E4 = E2 * E2;
    return 2.0 * kPi * abar * abar
           * (3.0 + 3.0 * E4 * w2 + E3 * (3.0 + (33.0 + 8.0 * pi2) * w2)
              + E * (-3.0 + (39.0 + 8.0 * pi2) * w2) + E2 * ((32.0 * pi2 - 75.0) * w2 - 3.0));
}

inline double coeff_form_a3_plus(double abar, double w, double E) {
    const double w2 = w * w;
    const double pi2 = kPi * kPi;
    const double E2 = E * E, E3 = E * E * E;
    return -3.0 * std::pow(abar, 3) * (E - 1.0)
           * (2.0 + 3.0 * E3 * w2 + E2 * (2.0 + (-6.0 + 8.0 * pi2) * w2)
              + E * (-4.0 + (3.0 + 8.0 * pi2) * w2));
}

inline double coeff_form_b(double abar, double w, double E) {
    const double w2 = w * w;
    return 2.0 * kPi * std::pow(abar, 3) * w2 - 3.0 * abar * abar * (E - 1.0)
           + 9.0 * kPi * abar * w2
           - 2.0 * kPi * kPi * w2 * E * (1.0 + abar * abar) * coth(kPi / abar);
}

}  // namespace detail

inline double rate_finite_coeff(const DetectorParams& p, Direction d) {
    if (p.regime != Regime::NonRelativistic)
        throw std::domain_error("rate_finite_coeff: requires the non-relativistic branch");
    const double E = std::exp(2.0 * kPi / p.abar);
    if (!std::isfinite(E * E * E * E))
        throw std::domain_error("rate_finite_coeff: abar too small for the coefficient table");
    const double asum =
        (d == Direction::Excite)
            ? detail::coeff_form_a1_minus(p.abar, p.w, E) + detail::coeff_form_a2_minus(p.abar, p.w, E)
                  + detail::coeff_form_a3_minus(p.abar, p.w, E)
            : detail::coeff_form_a1_plus(p.abar, p.w, E) + detail::coeff_form_a2_plus(p.abar, p.w, E)
                  + detail::coeff_form_a3_plus(p.abar, p.w, E);
    const double B = detail::coeff_form_b(p.abar, p.w, E);
    const double denom = p.abar * p.abar * p.sigma * p.sigma * std::pow(E - 1.0, 3) * B;
    const double factor = 1.0 - kPi * E * asum / denom;
    return rate_infinite(p, d) * factor;
}

}  // namespace udw
