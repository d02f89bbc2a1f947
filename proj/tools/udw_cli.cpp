// Command-line front end: single-point evaluation, parameter sweeps,
// figure-dataset generation, and oracle cross-check runs.
//
// Exit codes: 0 success, 1 evaluation failure, 2 validation/usage failure,
// 3 oracle non-convergence.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <map>

#include "udw/udw.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitEvaluation = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNonConvergence = 3;

struct CommonOptions {
    double abar = 100.0;
    double w = 0.0;
    double sigma = 10.0;
    double coupling = 0.01;
    double theta = udw::kPi / 2.0;
    double phi = 0.0;
    double alpha = udw::kPi / 2.0;
    std::string regime = "nonrelativistic";
    std::vector<double> eps_schedule;
    double quad_tol = 1e-10;

    udw::Regime parse_regime() const {
        if (regime == "nonrelativistic") return udw::Regime::NonRelativistic;
        if (regime == "ultrarelativistic") return udw::Regime::UltraRelativistic;
        if (regime == "exact") return udw::Regime::Exact;
        throw CLI::ValidationError("--regime", "unknown regime: " + regime);
    }

    udw::DetectorParams params() const {
        return udw::DetectorParams(abar, w, sigma, coupling, parse_regime());
    }

    udw::QuadratureConfig quad_config() const {
        udw::QuadratureConfig cfg;
        if (!eps_schedule.empty()) cfg.eps_schedule = eps_schedule;
        cfg.abs_tol = quad_tol;
        return cfg;
    }
};

// flat key=value configuration; lines starting with '#' are comments
std::map<std::string, std::string> read_flat_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw CLI::ValidationError("--config", "cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--config", "expected key=value, got: " + line);
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

// apply config values for every key whose flag was not given on the command
// line; flags win on conflict
void apply_config(const CLI::App* cmd, const std::string& path, CommonOptions& o) {
    if (path.empty()) return;
    const auto kv = read_flat_config(path);
    auto want = [&](const char* key, const char* flag) -> const std::string* {
        auto it = kv.find(key);
        if (it == kv.end()) return nullptr;
        if (cmd->count(flag) > 0) return nullptr;
        return &it->second;
    };
    if (const auto* v = want("abar", "--abar")) o.abar = std::stod(*v);
    if (const auto* v = want("w", "--w")) o.w = std::stod(*v);
    if (const auto* v = want("sigma", "--sigma")) o.sigma = std::stod(*v);
    if (const auto* v = want("coupling", "--coupling")) o.coupling = std::stod(*v);
    if (const auto* v = want("theta", "--theta")) o.theta = std::stod(*v);
    if (const auto* v = want("phi", "--phi")) o.phi = std::stod(*v);
    if (const auto* v = want("alpha", "--alpha")) o.alpha = std::stod(*v);
    if (const auto* v = want("regime", "--regime")) o.regime = *v;
    if (const auto* v = want("eps-schedule", "--eps-schedule"))
        o.eps_schedule = parse_double_list(*v);
    if (const auto* v = want("quad-tol", "--quad-tol")) o.quad_tol = std::stod(*v);
}

void add_common_flags(CLI::App* cmd, CommonOptions& o, std::string& config_path) {
    cmd->add_option("--config", config_path,
                    "flat key=value configuration file; flags win on conflict");
    cmd->add_option("--abar", o.abar, "acceleration in units of the transition frequency");
    cmd->add_option("--w", o.w, "constant transverse four-velocity component");
    cmd->add_option("--sigma", o.sigma, "dimensionless interaction time (Omega*T)");
    cmd->add_option("--coupling", o.coupling, "interaction strength lambda");
    cmd->add_option("--theta", o.theta, "polar Bloch angle of the initial qubit state");
    cmd->add_option("--phi", o.phi, "azimuthal Bloch angle");
    cmd->add_option("--alpha", o.alpha, "interferometer phase-shift angle");
    cmd->add_option("--regime", o.regime,
                    "analytic branch: nonrelativistic|ultrarelativistic|exact");
    cmd->add_option("--eps-schedule", o.eps_schedule,
                    "regulator schedule for the quadrature oracle (decreasing)")
        ->delimiter(',');
    cmd->add_option("--quad-tol", o.quad_tol, "absolute tolerance per oracle integral");
}

json point_report_json(const udw::PointReport& rep) {
    json j;
    j["abar"] = rep.params.abar;
    j["w"] = rep.params.w;
    j["sigma"] = rep.params.sigma;
    j["coupling"] = rep.params.coupling;
    j["regime"] = udw::to_string(rep.params.regime);
    j["theta"] = rep.angles.theta;
    j["phi"] = rep.angles.phi;
    j["alpha"] = rep.phase.alpha;
    j["excitation_rate_infinite"] = rep.excitation_rate_infinite;
    j["deexcitation_rate_infinite"] = rep.deexcitation_rate_infinite;

    auto put = [&j](const char* key, const std::optional<double>& v) {
        if (v)
            j[key] = *v;
        else
            j[key] = nullptr;
    };
    put("excitation_rate_finite", rep.excitation_rate_finite);
    put("deexcitation_rate_finite", rep.deexcitation_rate_finite);
    put("coherence_qubit", rep.coherence_qubit);
    put("visibility", rep.visibility);
    put("interferometer_coherence", rep.interferometer_coherence);
    put("distinguishability", rep.distinguishability);
    put("complementarity", rep.complementarity);
    put("vsq_plus_dsq", rep.vsq_plus_dsq);
    if (rep.suppressed_reason) j["suppressed_reason"] = *rep.suppressed_reason;
    j["warnings"] = rep.warnings;
    return j;
}

std::string point_report_csv(const udw::PointReport& rep) {
    const json j = point_report_json(rep);
    std::string header, row;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!header.empty()) {
            header += ',';
            row += ',';
        }
        header += it.key();
        if (it.value().is_number_float())
            row += udw::format_double(it.value().get<double>());
        else if (it.value().is_null())
            row += "";
        else if (it.value().is_string())
            row += it.value().get<std::string>();
        else if (it.value().is_array()) {
            std::string joined;
            for (const auto& e : it.value()) {
                if (!joined.empty()) joined += ';';
                joined += e.get<std::string>();
            }
            row += joined;
        }
    }
    return header + "\n" + row + "\n";
}

int run_eval(const CommonOptions& opts, const std::string& format, const std::string& out_path) {
    udw::PointReport rep = udw::eval_point(opts.params(), udw::QubitAngles(opts.theta, opts.phi),
                                           udw::PhaseSetting(opts.alpha));
    std::string text = (format == "csv") ? point_report_csv(rep)
                                         : point_report_json(rep).dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        udw::write_text_file(out_path, text);
    return kExitOk;
}

int run_sweep_cmd(const CommonOptions& opts, const std::string& variable,
                  const std::string& grid_spec, const std::vector<std::string>& quantity_names,
                  const std::string& format, const std::string& out_path) {
    auto var = udw::sweep_variable_from_string(variable);
    if (!var) throw CLI::ValidationError("--variable", "unknown sweep variable: " + variable);

    // grid syntax: start:stop:points[:log]
    udw::GridSpec grid{};
    {
        std::vector<std::string> parts;
        std::stringstream ss(grid_spec);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(item);
        if (parts.size() < 3 || parts.size() > 4)
            throw CLI::ValidationError("--grid", "expected start:stop:points[:log]");
        grid.start = std::stod(parts[0]);
        grid.stop = std::stod(parts[1]);
        grid.points = std::stoul(parts[2]);
        grid.spacing = (parts.size() == 4 && parts[3] == "log") ? udw::GridSpacing::Log
                                                                : udw::GridSpacing::Linear;
    }

    std::vector<udw::Quantity> quantities;
    for (const auto& name : quantity_names) {
        auto q = udw::quantity_from_string(name);
        if (!q) throw CLI::ValidationError("--quantities", "unknown quantity: " + name);
        quantities.push_back(*q);
    }
    if (quantities.empty())
        quantities = {udw::Quantity::CoherenceQubit, udw::Quantity::Complementarity};

    udw::DetectorParams params = opts.params();
    udw::ValidationReport v = udw::validate(params);
    if (!v.ok()) throw udw::ValidationFailure(v.errors());

    udw::SweepSpec spec{*var, grid, params, udw::QubitAngles(opts.theta, opts.phi),
                        udw::PhaseSetting(opts.alpha), quantities};
    udw::SweepResult result = udw::run_sweep(spec);

    std::string text;
    if (format == "json") {
        json rows = json::array();
        for (const auto& rec : result.records) {
            json row;
            row[udw::to_string(spec.variable)] = rec.swept;
            for (std::size_t i = 0; i < quantities.size(); ++i) {
                if (rec.values[i])
                    row[udw::to_string(quantities[i])] = *rec.values[i];
                else
                    row[udw::to_string(quantities[i])] = nullptr;
            }
            rows.push_back(row);
        }
        text = rows.dump(2) + "\n";
    } else {
        text = udw::sweep_csv(spec, result);
    }

    if (out_path.empty())
        std::cout << text;
    else
        udw::write_text_file(out_path, text);

    if (result.failures) {
        std::cerr << "sweep: " << result.failures << " point(s) failed to evaluate\n";
        return kExitEvaluation;
    }
    return kExitOk;
}

int run_figure(int fig_id, const std::vector<double>& w_set, const std::vector<double>& abar_set,
               const std::string& out_dir) {
    namespace fs = std::filesystem;
    auto files = udw::figure_dataset(fig_id, w_set, abar_set);
    fs::create_directories(out_dir);
    for (const auto& f : files) {
        const std::string path = (fs::path(out_dir) / f.name).string();
        udw::write_text_file(path, f.csv);
        std::cout << path << "\n";
    }
    return kExitOk;
}

struct CheckResult {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string verdict;  // pass | fail | nonconvergent
};

int run_check(const CommonOptions& opts, const std::string& format, const std::string& out_path) {
    using udw::Direction;
    const double abar = opts.abar;
    const double w = opts.w;
    std::vector<CheckResult> results;
    bool any_nonconv = false;

    udw::QuadratureConfig cfg = opts.quad_config();
    udw::QuadratureConfig cfg_w = cfg;
    if (w != 0.0 && opts.eps_schedule.empty()) {
        // finite-w runs need one more extrapolation node and a realistic target
        cfg_w.eps_schedule = {1e-2, 5e-3, 2.5e-3, 1.25e-3};
        if (cfg_w.abs_tol < 1e-6) cfg_w.abs_tol = 1e-6;
        if (w >= 1.0 && cfg_w.abs_tol < 1e-4) cfg_w.abs_tol = 1e-4;
    }

    auto guard = [&](const std::string& name, double tol, auto&& body) {
        CheckResult r;
        r.name = name;
        r.tolerance = tol;
        try {
            r.measured = body();
            r.verdict = (std::abs(r.measured) <= tol) ? "pass" : "fail";
        } catch (const udw::NonConvergenceError&) {
            r.verdict = "nonconvergent";
            any_nonconv = true;
        }
        results.push_back(r);
    };

    if (w == 0.0) {
        guard("planck_relative_deviation", 1e-6, [&] {
            const double v = udw::rate_numeric_infinite(abar, 0.0, Direction::Excite, cfg);
            return (v - udw::planck_rate(abar)) / udw::planck_rate(abar);
        });
    }

    // thermality is only claimed in the small-w expansion; skip the balance
    // comparison once w leaves it
    if (w < 1.0) {
        guard("detailed_balance_relative_deviation", 1e-5, [&] {
            const double rm = udw::rate_numeric_infinite(abar, w, Direction::Excite, cfg_w);
            const double rp = udw::rate_numeric_infinite(abar, w, Direction::Deexcite, cfg_w);
            const double E = std::exp(2.0 * udw::kPi / abar);
            return (rp / rm - E) / E;
        });
    }

    if (w > 0.0 && w <= 0.3) {
        guard("velocity_slope_relative_deviation", 5e-2, [&] {
            const double r0 = udw::rate_numeric_infinite(abar, 0.0, Direction::Excite, cfg_w);
            const double rw = udw::rate_numeric_infinite(abar, w, Direction::Excite, cfg_w);
            const double slope = (rw - r0) / (w * w);
            return (slope + udw::velocity_factor(abar)) / udw::velocity_factor(abar);
        });
    }

    if (w >= 1.0) {
        guard("ultra_asymptote_relative_deviation", 0.1, [&] {
            udw::QuadratureConfig c = cfg;
            if (c.abs_tol < 1e-5) c.abs_tol = 1e-5;
            const double v = udw::rate_numeric_infinite(abar, w, Direction::Excite, c);
            const double asym = udw::planck_rate(abar) / (w * w * w * w);
            return (v - asym) / asym;
        });
    }

    guard("eps_schedule_robustness", cfg_w.abs_tol, [&] {
        udw::QuadratureConfig halved = cfg_w;
        for (double& e : halved.eps_schedule) e *= 0.5;
        const double a = udw::rate_numeric_infinite(abar, w, Direction::Excite, cfg_w);
        const double b = udw::rate_numeric_infinite(abar, w, Direction::Excite, halved);
        return a - b;
    });

    guard("cutoff_robustness", cfg_w.abs_tol, [&] {
        udw::QuadratureConfig wide = cfg_w;
        wide.cutoff_multiplier = 60.0;
        const double a = udw::rate_numeric_infinite(abar, w, Direction::Excite, cfg_w);
        const double b = udw::rate_numeric_infinite(abar, w, Direction::Excite, wide);
        return a - b;
    });

    bool any_fail = false;
    std::string text;
    if (format == "json") {
        json arr = json::array();
        for (const auto& r : results) {
            arr.push_back({{"check", r.name},
                           {"measured_deviation", r.measured},
                           {"tolerance", r.tolerance},
                           {"verdict", r.verdict}});
            if (r.verdict == "fail") any_fail = true;
        }
        text = arr.dump(2) + "\n";
    } else {
        std::ostringstream os;
        for (const auto& r : results) {
            os << r.verdict << "  " << r.name << "  measured=" << udw::format_double(r.measured)
               << "  tolerance=" << udw::format_double(r.tolerance) << "\n";
            if (r.verdict == "fail") any_fail = true;
        }
        text = os.str();
    }
    if (out_path.empty())
        std::cout << text;
    else
        udw::write_text_file(out_path, text);

    if (any_nonconv) return kExitNonConvergence;
    return any_fail ? kExitEvaluation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Detector response and quantum-information observables for an accelerated "
                 "detector with constant transverse velocity"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::string eval_format = "json";
    std::string sweep_format = "csv";
    std::string check_format = "text";
    std::string out_path;

    std::string config_path;
    CLI::App* eval = app.add_subcommand("eval", "evaluate all quantities at one parameter point");
    add_common_flags(eval, opts, config_path);
    eval->add_option("--format", eval_format, "output format: csv|json");
    eval->add_option("--out", out_path, "output file (stdout if omitted)");

    std::string sweep_variable = "w";
    std::string grid = "0:0.2:51";
    std::vector<std::string> quantity_names;
    CLI::App* sweep = app.add_subcommand("sweep", "sweep one variable, emit CSV/JSON records");
    add_common_flags(sweep, opts, config_path);
    sweep->add_option("--variable", sweep_variable, "swept axis: abar|w|sigma|theta|alpha");
    sweep->add_option("--grid", grid, "start:stop:points[:log]");
    sweep->add_option("--quantities", quantity_names, "quantities to evaluate")->delimiter(',');
    sweep->add_option("--format", sweep_format, "output format: csv|json");
    sweep->add_option("--out", out_path, "output file (stdout if omitted)");

    int fig_id = 1;
    std::vector<double> w_set, abar_set;
    std::string out_dir = ".";
    CLI::App* figure = app.add_subcommand("figure", "emit the dataset behind one figure");
    figure->add_option("id", fig_id, "figure id, 1..5")->required();
    figure->add_option("--w-set", w_set, "curve family of w values")->delimiter(',');
    figure->add_option("--abar-set", abar_set, "curve family of abar values")->delimiter(',');
    figure->add_option("--out", out_dir, "output directory");

    CLI::App* check = app.add_subcommand("check", "compare closed forms against the quadrature oracle");
    add_common_flags(check, opts, config_path);
    check->add_option("--format", check_format, "output format: text|json");
    check->add_option("--out", out_path, "output file (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return kExitValidation;
    }

    try {
        for (CLI::App* sub : {eval, sweep, check})
            if (sub->parsed()) apply_config(sub, config_path, opts);
        if (eval->parsed()) return run_eval(opts, eval_format, out_path);
        if (sweep->parsed())
            return run_sweep_cmd(opts, sweep_variable, grid, quantity_names, sweep_format, out_path);
        if (figure->parsed()) return run_figure(fig_id, w_set, abar_set, out_dir);
        if (check->parsed()) return run_check(opts, check_format, out_path);
    } catch (const udw::ValidationFailure& e) {
        nlohmann::json j;
        j["error"] = "validation";
        j["details"] = e.errors;
        std::cerr << j.dump() << "\n";
        return kExitValidation;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return kExitValidation;
    } catch (const udw::NonConvergenceError& e) {
        std::cerr << "oracle non-convergence: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const std::exception& e) {
        std::cerr << "evaluation error: " << e.what() << "\n";
        return kExitEvaluation;
    }
    return kExitOk;
}
