// Single-point evaluation: every quantity at one parameter set, with
// suppression bookkeeping for the ultra-relativistic branch.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "udw/model.hpp"
#include "udw/observables.hpp"
#include "udw/rates.hpp"

namespace udw {

struct PointReport {
    DetectorParams params;
    QubitAngles angles;
    PhaseSetting phase;

    double excitation_rate_infinite = 0.0;
    double deexcitation_rate_infinite = 0.0;
    std::optional<double> excitation_rate_finite;
    std::optional<double> deexcitation_rate_finite;

    std::optional<double> coherence_qubit;
    std::optional<double> visibility;
    std::optional<double> interferometer_coherence;
    std::optional<double> distinguishability;
    std::optional<double> complementarity;
    std::optional<double> vsq_plus_dsq;

    std::optional<std::string> suppressed_reason;
    std::vector<std::string> warnings;
};

struct ValidationFailure : std::runtime_error {
    std::vector<std::string> errors;
    explicit ValidationFailure(std::vector<std::string> errs)
        : std::runtime_error("parameter validation failed"), errors(std::move(errs)) {}
};

inline PointReport eval_point(const DetectorParams& p, const QubitAngles& angles,
                              const PhaseSetting& phase,
                              RateKind kind = RateKind::FiniteTime) {
    ValidationReport v = validate(p);
    if (!v.ok()) throw ValidationFailure(v.errors());

    PointReport rep{p, angles, phase};
    rep.warnings = v.warnings();

    if (p.regime == Regime::UltraRelativistic) {
        rep.excitation_rate_infinite = rate_ultra(p, Direction::Excite);
        rep.deexcitation_rate_infinite = rate_ultra(p, Direction::Deexcite);
        rep.suppressed_reason = "suppressed: detector does not respond in the "
                                "ultra-relativistic branch";
        return rep;
    }

    rep.excitation_rate_infinite = rate_infinite(p, Direction::Excite);
    rep.deexcitation_rate_infinite = rate_infinite(p, Direction::Deexcite);
    if (p.sigma >= 1.0) {
        rep.excitation_rate_finite = rate_finite(p, Direction::Excite);
        rep.deexcitation_rate_finite = rate_finite(p, Direction::Deexcite);
    }
    rep.coherence_qubit = coherence_qubit_closed(p, angles.theta, kind);
    rep.visibility = visibility_closed(p, kind);
    rep.interferometer_coherence = interferometer_coherence_closed(p, phase, kind);
    rep.distinguishability = distinguishability_closed(p, kind);
    const DualityMetrics dm = complementarity_closed(p, kind);
    rep.complementarity = dm.complementarity;
    rep.vsq_plus_dsq = dm.vsq_plus_dsq;
    return rep;
}

}  // namespace udw
