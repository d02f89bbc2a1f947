// Parameter sweeps over the closed-form observables, with deterministic CSV
// output (17 significant digits via to_chars, '\n' line endings, no locale
// dependence) and the canned figure datasets.

#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <system_error>
#include <vector>

#include "udw/model.hpp"
#include "udw/observables.hpp"
#include "udw/rates.hpp"

namespace udw {

enum class Quantity {
    ExcitationRate,
    DeexcitationRate,
    CoherenceQubit,
    Visibility,
    InterferometerCoherence,
    Distinguishability,
    Complementarity,
};

inline const std::vector<Quantity>& all_quantities() {
    static const std::vector<Quantity> q = {
        Quantity::ExcitationRate,       Quantity::DeexcitationRate,
        Quantity::CoherenceQubit,       Quantity::Visibility,
        Quantity::InterferometerCoherence, Quantity::Distinguishability,
        Quantity::Complementarity,
    };
    return q;
}

inline const char* to_string(Quantity q) {
    switch (q) {
        case Quantity::ExcitationRate: return "excitation_rate";
        case Quantity::DeexcitationRate: return "deexcitation_rate";
        case Quantity::CoherenceQubit: return "coherence_qubit";
        case Quantity::Visibility: return "visibility";
        case Quantity::InterferometerCoherence: return "interferometer_coherence";
        case Quantity::Distinguishability: return "distinguishability";
        case Quantity::Complementarity: return "complementarity";
    }
    return "?";
}

inline std::optional<Quantity> quantity_from_string(const std::string& s) {
    for (Quantity q : all_quantities())
        if (s == to_string(q)) return q;
    return std::nullopt;
}

enum class SweepVariable { Abar, W, Sigma, Theta, AlphaPhase };

inline const char* to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::Abar: return "abar";
        case SweepVariable::W: return "w";
        case SweepVariable::Sigma: return "sigma";
        case SweepVariable::Theta: return "theta";
        case SweepVariable::AlphaPhase: return "alpha";
    }
    return "?";
}

inline std::optional<SweepVariable> sweep_variable_from_string(const std::string& s) {
    for (SweepVariable v : {SweepVariable::Abar, SweepVariable::W, SweepVariable::Sigma,
                            SweepVariable::Theta, SweepVariable::AlphaPhase})
        if (s == to_string(v)) return v;
    return std::nullopt;
}

enum class GridSpacing { Linear, Log };

struct GridSpec {
    double start;
    double stop;
    std::size_t points;
    GridSpacing spacing = GridSpacing::Linear;

    void check() const {
        if (!(start < stop)) throw std::invalid_argument("GridSpec: requires start < stop");
        if (points < 2) throw std::invalid_argument("GridSpec: requires points >= 2");
        if (spacing == GridSpacing::Log && !(start > 0.0))
            throw std::invalid_argument("GridSpec: log spacing requires start > 0");
    }

    std::vector<double> values() const {
        check();
        std::vector<double> out(points);
        if (spacing == GridSpacing::Linear) {
            for (std::size_t i = 0; i < points; ++i)
                out[i] = start + (stop - start) * double(i) / double(points - 1);
        } else {
            const double la = std::log(start), lb = std::log(stop);
            for (std::size_t i = 0; i < points; ++i)
                out[i] = std::exp(la + (lb - la) * double(i) / double(points - 1));
        }
        out.front() = start;
        out.back() = stop;
        return out;
    }
};

struct SweepSpec {
    SweepVariable variable;
    GridSpec grid;
    DetectorParams fixed;
    QubitAngles angles{kPi / 2.0, 0.0};
    PhaseSetting phase{kPi / 2.0};
    std::vector<Quantity> quantities;
    RateKind rate_kind = RateKind::FiniteTime;
};

struct SweepRecord {
    double swept;
    std::vector<std::optional<double>> values;  // one per requested quantity; empty on failure
};

struct SweepResult {
    std::vector<SweepRecord> records;
    std::size_t failures = 0;
};

// 17-significant-digit, locale-independent formatting.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

// shortest round-trip form, for filenames and labels
inline std::string format_double_short(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace detail {

inline double evaluate_quantity(const DetectorParams& p, const QubitAngles& angles,
                                const PhaseSetting& phase, Quantity q, RateKind kind) {
    switch (q) {
        case Quantity::ExcitationRate:
            return kind == RateKind::FiniteTime ? rate_finite(p, Direction::Excite)
                                                : rate_infinite(p, Direction::Excite);
        case Quantity::DeexcitationRate:
            return kind == RateKind::FiniteTime ? rate_finite(p, Direction::Deexcite)
                                                : rate_infinite(p, Direction::Deexcite);
        case Quantity::CoherenceQubit: return coherence_qubit_closed(p, angles.theta, kind);
        case Quantity::Visibility: return visibility_closed(p, kind);
        case Quantity::InterferometerCoherence:
            return interferometer_coherence_closed(p, phase, kind);
        case Quantity::Distinguishability: return distinguishability_closed(p, kind);
        case Quantity::Complementarity: return complementarity_closed(p, kind).complementarity;
    }
    throw std::logic_error("evaluate_quantity: unknown quantity");
}

inline DetectorParams with_variable(const DetectorParams& base, SweepVariable v, double x) {
    switch (v) {
        case SweepVariable::Abar: return DetectorParams(x, base.w, base.sigma, base.coupling, base.regime);
        case SweepVariable::W: return DetectorParams(base.abar, x, base.sigma, base.coupling, base.regime);
        case SweepVariable::Sigma:
            return DetectorParams(base.abar, base.w, x, base.coupling, base.regime);
        default: return base;
    }
}

}  // namespace detail

inline SweepResult run_sweep(const SweepSpec& spec) {
    if (spec.quantities.empty()) throw std::invalid_argument("run_sweep: no quantities selected");
    SweepResult out;
    for (double x : spec.grid.values()) {
        SweepRecord rec;
        rec.swept = x;
        QubitAngles angles = spec.angles;
        PhaseSetting phase = spec.phase;
        if (spec.variable == SweepVariable::Theta) angles = QubitAngles(x, spec.angles.phi);
        if (spec.variable == SweepVariable::AlphaPhase) phase = PhaseSetting(x);
        for (Quantity q : spec.quantities) {
            try {
                const DetectorParams p = detail::with_variable(spec.fixed, spec.variable, x);
                rec.values.push_back(
                    detail::evaluate_quantity(p, angles, phase, q, spec.rate_kind));
            } catch (const std::exception&) {
                rec.values.push_back(std::nullopt);
                ++out.failures;
            }
        }
        out.records.push_back(std::move(rec));
    }
    return out;
}

inline std::string sweep_csv(const SweepSpec& spec, const SweepResult& result,
                             const std::vector<std::string>& comment_lines = {}) {
    std::string csv;
    for (const auto& line : comment_lines) {
        csv += "# ";
        csv += line;
        csv += '\n';
    }
    csv += to_string(spec.variable);
    for (Quantity q : spec.quantities) {
        csv += ',';
        csv += to_string(q);
    }
    csv += '\n';
    for (const auto& rec : result.records) {
        csv += format_double(rec.swept);
        for (const auto& v : rec.values) {
            csv += ',';
            if (v) csv += format_double(*v);
        }
        csv += '\n';
    }
    return csv;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os.write(content.data(), std::streamsize(content.size()));
    if (!os) throw std::runtime_error("write failed: " + path);
}

// --- figure datasets ----------------------------------------------------------

struct FigureFile {
    std::string name;
    std::string csv;
};

// Default curve families; the captions behind figures 1-5 fix the axes and
// the constant parameters but not the plotted curve values, so these are
// tool defaults and the emitted header comments say so.
inline const std::vector<double>& default_w_set() {
    static const std::vector<double> v = {0.0, 0.05, 0.10, 0.15};
    return v;
}
inline const std::vector<double>& default_abar_set() {
    static const std::vector<double> v = {10.0, 50.0, 100.0};
    return v;
}

inline std::vector<FigureFile> figure_dataset(int fig_id,
                                              const std::vector<double>& w_set_in = {},
                                              const std::vector<double>& abar_set_in = {}) {
    if (fig_id < 1 || fig_id > 5) throw std::invalid_argument("figure_dataset: fig id must be 1..5");
    const std::vector<double>& w_set = w_set_in.empty() ? default_w_set() : w_set_in;
    const std::vector<double>& abar_set = abar_set_in.empty() ? default_abar_set() : abar_set_in;
    const double sigma = 10.0, lambda = 0.01;
    const std::string defaults_note =
        "curve-family values are tool defaults; override with --w-set / --abar-set";

    std::vector<FigureFile> files;
    auto emit = [&](const std::string& name, const SweepSpec& spec, const std::string& title,
                    const std::string& curve) {
        SweepResult res = run_sweep(spec);
        if (res.failures) throw std::runtime_error("figure_dataset: evaluation failed for " + name);
        files.push_back({name, sweep_csv(spec, res,
                                         {title,
                                          "fixed: sigma=" + format_double(sigma)
                                              + " coupling=" + format_double(lambda),
                                          "curve: " + curve, defaults_note})});
    };

    const GridSpec abar_grid{10.0, 200.0, 51, GridSpacing::Log};
    const GridSpec w_grid{0.0, 0.2, 51, GridSpacing::Linear};
    const GridSpec theta_grid{0.0, kPi, 51, GridSpacing::Linear};

    switch (fig_id) {
        case 1:
            for (double w : w_set) {
                SweepSpec s{SweepVariable::Abar, abar_grid,
                            DetectorParams(10.0, w, sigma, lambda), QubitAngles(kPi / 2.0),
                            PhaseSetting(kPi / 2.0), {Quantity::CoherenceQubit}};
                emit("fig1_w" + format_double_short(w) + ".csv", s,
                     "figure 1: qubit l1 coherence vs acceleration (theta=pi/2)",
                     "w=" + format_double_short(w));
            }
            break;
        case 2:
            for (double ab : abar_set) {
                SweepSpec s{SweepVariable::W, w_grid, DetectorParams(ab, 0.0, sigma, lambda),
                            QubitAngles(kPi / 2.0), PhaseSetting(kPi / 2.0),
                            {Quantity::CoherenceQubit}};
                emit("fig2_abar" + format_double_short(ab) + ".csv", s,
                     "figure 2: qubit l1 coherence vs transverse velocity (theta=pi/2)",
                     "abar=" + format_double_short(ab));
            }
            break;
        case 3:
            for (double w : w_set) {
                SweepSpec s{SweepVariable::Theta, theta_grid,
                            DetectorParams(100.0, w, sigma, lambda), QubitAngles(kPi / 2.0),
                            PhaseSetting(kPi / 2.0), {Quantity::CoherenceQubit}};
                emit("fig3_w" + format_double_short(w) + ".csv", s,
                     "figure 3: qubit l1 coherence vs polar angle (abar=100)",
                     "w=" + format_double_short(w));
            }
            break;
        case 4:
            for (double w : w_set) {
                SweepSpec s{SweepVariable::Abar, abar_grid,
                            DetectorParams(10.0, w, sigma, lambda), QubitAngles(kPi / 2.0),
                            PhaseSetting(kPi / 2.0), {Quantity::Complementarity}};
                emit("fig4_w" + format_double_short(w) + ".csv", s,
                     "figure 4: complementarity vs acceleration", "w=" + format_double_short(w));
            }
            break;
        case 5:
            for (double ab : abar_set) {
                SweepSpec s{SweepVariable::W, w_grid, DetectorParams(ab, 0.0, sigma, lambda),
                            QubitAngles(kPi / 2.0), PhaseSetting(kPi / 2.0),
                            {Quantity::Complementarity}};
                emit("fig5_abar" + format_double_short(ab) + ".csv", s,
                     "figure 5: complementarity vs transverse velocity",
                     "abar=" + format_double_short(ab));
            }
            break;
    }
    return files;
}

}  // namespace udw
