// Dimensionless parameter space and validation shared by all other headers.
//
// Unit conventions: everything is expressed in units of the detector
// transition frequency (Omega = 1).  Rates are per Omega, the acceleration
// parameter is abar = a/Omega, the interaction time is sigma = Omega*T where
// T is the width of the Gaussian switching profile exp(-tau^2/(2 T^2)).

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace udw {

inline constexpr double kPi = 3.14159265358979323846;

// Which analytic branch the closed-form operations use.  Exact is served
// only by the numerical oracle.
enum class Regime { NonRelativistic, UltraRelativistic, Exact };

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::NonRelativistic: return "nonrelativistic";
        case Regime::UltraRelativistic: return "ultrarelativistic";
        case Regime::Exact: return "exact";
    }
    return "?";
}

struct DetectorParams {
    double abar;      // acceleration / transition frequency, > 0
    double w;         // constant transverse four-velocity component dy/dtau, >= 0
    double sigma;     // dimensionless interaction time Omega*T, > 0
    double coupling;  // interaction strength lambda, > 0
    Regime regime = Regime::NonRelativistic;

    DetectorParams(double abar_, double w_, double sigma_, double coupling_,
                   Regime regime_ = Regime::NonRelativistic)
        : abar(abar_), w(w_), sigma(sigma_), coupling(coupling_), regime(regime_) {
        if (!(abar > 0.0)) throw std::invalid_argument("DetectorParams: abar must be > 0");
        if (!(w >= 0.0)) throw std::invalid_argument("DetectorParams: w must be >= 0");
        if (!(sigma > 0.0)) throw std::invalid_argument("DetectorParams: sigma must be > 0");
        if (!(coupling > 0.0)) throw std::invalid_argument("DetectorParams: coupling must be > 0");
    }
};

// Bloch-sphere angles of the initial qubit state.
struct QubitAngles {
    double theta;  // polar, in [0, pi]
    double phi;    // azimuthal, in [0, 2 pi)

    explicit QubitAngles(double theta_, double phi_ = 0.0) : theta(theta_), phi(phi_) {
        if (!(theta >= 0.0 && theta <= kPi))
            throw std::invalid_argument("QubitAngles: theta must lie in [0, pi]");
        if (!(phi >= 0.0 && phi < 2.0 * kPi))
            throw std::invalid_argument("QubitAngles: phi must lie in [0, 2 pi)");
    }
};

// Interferometer phase-shift gate angle.
struct PhaseSetting {
    double alpha;  // in [0, 2 pi)

    explicit PhaseSetting(double alpha_) : alpha(alpha_) {
        if (!(alpha >= 0.0 && alpha < 2.0 * kPi))
            throw std::invalid_argument("PhaseSetting: alpha must lie in [0, 2 pi)");
    }
};

enum class Severity { Warning, Error };

struct ValidationIssue {
    Severity severity;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const {
        for (const auto& i : issues)
            if (i.severity == Severity::Error) return false;
        return true;
    }
    std::vector<std::string> errors() const {
        std::vector<std::string> out;
        for (const auto& i : issues)
            if (i.severity == Severity::Error) out.push_back(i.message);
        return out;
    }
    std::vector<std::string> warnings() const {
        std::vector<std::string> out;
        for (const auto& i : issues)
            if (i.severity == Severity::Warning) out.push_back(i.message);
        return out;
    }
};

// Deterministic, side-effect-free parameter checks.  Hard failures of the
// positivity invariants are already rejected at construction; this reports
// the regime-dependent constraints.
inline ValidationReport validate(const DetectorParams& p) {
    ValidationReport rep;
    if (p.regime == Regime::NonRelativistic) {
        if (p.w >= 1.0)
            rep.issues.push_back({Severity::Error, "w >= 1 outside non-relativistic branch"});
        else if (p.w >= 0.3)
            rep.issues.push_back({Severity::Warning,
                                  "w >= 0.3: O(w^2) truncation of the non-relativistic branch is degrading"});
    } else if (p.regime == Regime::UltraRelativistic) {
        if (p.w < 10.0)
            rep.issues.push_back({Severity::Warning,
                                  "w < 10: ultra-relativistic branch is an asymptotic w -> infinity form"});
        if (p.w == 0.0)
            rep.issues.push_back({Severity::Error, "w = 0 is singular in the ultra-relativistic branch"});
    }
    if (p.coupling * p.coupling * p.sigma >= 0.1)
        rep.issues.push_back({Severity::Warning,
                              "coupling^2 * sigma >= 0.1: first-order depletion approaching the "
                              "perturbative limit"});
    return rep;
}

}  // namespace udw
