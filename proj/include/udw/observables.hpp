// Perturbative output density matrices for the accelerated qubit and the
// interferometric circuit, and the derived coherence / visibility /
// distinguishability / complementarity observables.
//
// The 2x2 output blocks are populated at O(lambda^2) with the response
// moments F-+ = sigma * R-+; Re(G-) is fixed by the trace relation of the
// circuit at hand and Im(G+-) is dropped (it dephases the off-diagonal at
// O(lambda^2) without changing its magnitude, and the closed-form
// observables carry no such phase).  C+- moments default to zero, which the
// quadrature oracle justifies for sigma >= 10 through the e^{-sigma^2}
// prefactor.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "udw/model.hpp"
#include "udw/oracle.hpp"
#include "udw/rates.hpp"

namespace udw {

// Which rates feed the closed-form observables: the finite-window rates by
// default; InfiniteTime reproduces the leading-order printed formulas
// exactly.
enum class RateKind { FiniteTime, InfiniteTime };

struct Density2 {
    double rho_gg;
    double rho_ee;
    std::complex<double> rho_ge;  // rho_eg = conj(rho_ge)

    Density2(double gg, double ee, std::complex<double> ge) : rho_gg(gg), rho_ee(ee), rho_ge(ge) {
        if (std::abs(gg + ee - 1.0) > 1e-12)
            throw std::domain_error("Density2: trace deviates from 1 beyond 1e-12");
    }

    double trace() const { return rho_gg + rho_ee; }

    double min_eigenvalue() const {
        const double d = rho_gg - rho_ee;
        return 0.5 * (1.0 - std::sqrt(d * d + 4.0 * std::norm(rho_ge)));
    }
};

// l1-norm coherence: sum of the absolute off-diagonal values.
inline double coherence_l1(const Density2& rho) { return 2.0 * std::abs(rho.rho_ge); }

struct DualityMetrics {
    double visibility;
    double distinguishability;
    double complementarity;       // the O(lambda^2) truncation of V^2 + D^2
    double vsq_plus_dsq;          // untruncated V^2 + D^2, for the <= 1 bound
};

namespace detail {

inline double rate_for(const DetectorParams& p, Direction d, RateKind kind) {
    return kind == RateKind::FiniteTime ? rate_finite(p, d) : rate_infinite(p, d);
}

inline void check_positivity(const Density2& rho, const char* who) {
    if (rho.min_eigenvalue() < -1e-10)
        throw std::domain_error(std::string(who) + ": output state not positive; "
                                                   "parameters outside the perturbative regime");
}

}  // namespace detail

// Moments for the single-qubit channel: Re(G-) = (F- sin^2(th/2) + F+ cos^2(th/2))/2.
inline ResponseMoments qubit_moments(const DetectorParams& p, const QubitAngles& angles,
                                     RateKind kind = RateKind::FiniteTime) {
    const double fm = p.sigma * detail::rate_for(p, Direction::Excite, kind);
    const double fp = p.sigma * detail::rate_for(p, Direction::Deexcite, kind);
    const double s2 = std::sin(angles.theta / 2.0) * std::sin(angles.theta / 2.0);
    const double c2 = std::cos(angles.theta / 2.0) * std::cos(angles.theta / 2.0);
    ResponseMoments m;
    m.f_minus = fm;
    m.f_plus = fp;
    m.re_g_minus = 0.5 * (fm * s2 + fp * c2);
    return m;
}

// Moments for the interferometric circuit: Re(G-) = (F- + F+)/4.
inline ResponseMoments interferometer_moments(const DetectorParams& p,
                                              RateKind kind = RateKind::FiniteTime) {
    const double fm = p.sigma * detail::rate_for(p, Direction::Excite, kind);
    const double fp = p.sigma * detail::rate_for(p, Direction::Deexcite, kind);
    ResponseMoments m;
    m.f_minus = fm;
    m.f_plus = fp;
    m.re_g_minus = 0.25 * (fm + fp);
    return m;
}

// Output state of the accelerated qubit prepared at Bloch angles (theta, phi).
inline Density2 qubit_density_out(const DetectorParams& p, const QubitAngles& angles,
                                  const ResponseMoments& m) {
    const double l2 = p.coupling * p.coupling;
    const double s2 = std::sin(angles.theta / 2.0) * std::sin(angles.theta / 2.0);
    const double c2 = std::cos(angles.theta / 2.0) * std::cos(angles.theta / 2.0);
    const double sth = std::sin(angles.theta);
    const double re_g_plus = m.re_g_minus;  // equal at this order by the trace relation

    const double gg = c2 + l2 * (s2 * m.f_minus - 2.0 * c2 * m.re_g_minus);
    const double ee = s2 + l2 * (c2 * m.f_plus - 2.0 * s2 * re_g_plus);
    const std::complex<double> eiphi = std::polar(1.0, angles.phi);
    // |g><e| block; G+ + G-* reduces to 2 Re(G-) with the imaginary parts dropped
    const std::complex<double> ge =
        0.5 * sth * (eiphi * (1.0 - 2.0 * l2 * m.re_g_minus) + std::conj(eiphi) * l2 * m.c_minus);

    Density2 rho(gg, ee, ge);
    detail::check_positivity(rho, "qubit_density_out");
    return rho;
}

// Closed-form l1 coherence of the accelerated qubit.
inline double coherence_qubit_closed(const DetectorParams& p, double theta,
                                     RateKind kind = RateKind::FiniteTime) {
    if (p.regime != Regime::NonRelativistic)
        throw std::domain_error("coherence_qubit_closed: requires the non-relativistic branch");
    const double s2 = std::sin(theta / 2.0) * std::sin(theta / 2.0);
    const double c2 = std::cos(theta / 2.0) * std::cos(theta / 2.0);
    const double depletion = p.sigma * p.coupling * p.coupling
                             * (detail::rate_for(p, Direction::Excite, kind) * s2
                                + detail::rate_for(p, Direction::Deexcite, kind) * c2);
    if (depletion > 1.0)
        throw std::domain_error("coherence_qubit_closed: depletion exceeds 1 (non-perturbative)");
    return std::abs(std::sin(theta)) * (1.0 - depletion);
}

// Output state of the interferometric circuit after the second Hadamard.
inline Density2 interferometer_density_out(const DetectorParams& p, const PhaseSetting& phase,
                                           const ResponseMoments& m) {
    const double l2 = p.coupling * p.coupling;
    const double ca2 = std::cos(phase.alpha / 2.0) * std::cos(phase.alpha / 2.0);
    const double sa2 = std::sin(phase.alpha / 2.0) * std::sin(phase.alpha / 2.0);
    const double ca = std::cos(phase.alpha);
    const double sa = std::sin(phase.alpha);
    const double fsum = m.f_minus + m.f_plus;
    const std::complex<double> cm = m.c_minus;

    const double gg =
        ca2 + 0.25 * l2 * (fsum - 8.0 * m.re_g_minus * ca2 + 2.0 * cm.real() * ca);
    const double ee =
        sa2 + 0.25 * l2 * (fsum - 8.0 * m.re_g_minus * sa2 - 2.0 * cm.real() * ca);
    const std::complex<double> i_unit(0.0, 1.0);
    const std::complex<double> ge =
        0.5 * i_unit * sa
        + 0.25 * l2 * ((m.f_minus - m.f_plus) - 2.0 * i_unit * sa * (2.0 * m.re_g_minus - cm));

    Density2 rho(gg, ee, ge);
    detail::check_positivity(rho, "interferometer_density_out");
    return rho;
}

// Interferometric visibility V = 1 - (sigma lambda^2 / 2)(R- + R+).
inline double visibility_closed(const DetectorParams& p, RateKind kind = RateKind::FiniteTime) {
    if (p.regime != Regime::NonRelativistic)
        throw std::domain_error("visibility_closed: requires the non-relativistic branch");
    const double v = 1.0
                     - 0.5 * p.sigma * p.coupling * p.coupling
                           * (detail::rate_for(p, Direction::Excite, kind)
                              + detail::rate_for(p, Direction::Deexcite, kind));
    if (v < 0.0 || v > 1.0)
        throw std::domain_error("visibility_closed: result outside [0, 1]");
    return v;
}

inline double interferometer_coherence_closed(const DetectorParams& p, const PhaseSetting& phase,
                                              RateKind kind = RateKind::FiniteTime) {
    return std::sin(phase.alpha) * visibility_closed(p, kind);
}

// Which-path distinguishability D = sigma lambda^2 (R+ - R-).
inline double distinguishability_closed(const DetectorParams& p,
                                        RateKind kind = RateKind::FiniteTime) {
    if (p.regime != Regime::NonRelativistic)
        throw std::domain_error("distinguishability_closed: requires the non-relativistic branch");
    return std::abs(p.sigma * p.coupling * p.coupling
                    * (detail::rate_for(p, Direction::Deexcite, kind)
                       - detail::rate_for(p, Direction::Excite, kind)));
}

// V, D and the complementarity combination; `complementarity` is the
// O(lambda^2) truncation 1 - sigma lambda^2 (R- + R+) ... coth-form, while
// vsq_plus_dsq keeps the untruncated sum for the <= 1 bound.
inline DualityMetrics complementarity_closed(const DetectorParams& p,
                                             RateKind kind = RateKind::FiniteTime) {
    const double v = visibility_closed(p, kind);
    const double dd = distinguishability_closed(p, kind);
    const double truncated = 1.0
                             - p.sigma * p.coupling * p.coupling
                                   * (detail::rate_for(p, Direction::Excite, kind)
                                      + detail::rate_for(p, Direction::Deexcite, kind));
    const double full = v * v + dd * dd;
    if (full > 1.0 + 1e-10)
        throw std::domain_error("complementarity_closed: V^2 + D^2 exceeds 1 beyond slack");
    return {v, dd, truncated, full};
}

}  // namespace udw
