// Acceptance suite: one pass/fail line per criterion, every tolerance pinned
// in code.  Exit status is the number of failed criteria.
//
// Criteria 2, 10 and 11 each contain a clause that the quadrature oracle
// contradicts; those clauses are evaluated exactly as stated and reported
// honestly (see the notes printed next to them and the rates/oracle tests).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "udw/udw.hpp"

using namespace udw;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %2d. %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

QuadratureConfig tight_cfg() {
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-13;
    return cfg;
}

QuadratureConfig finite_w_cfg() {
    QuadratureConfig cfg;
    cfg.eps_schedule = {1e-2, 5e-3, 2.5e-3, 1.25e-3};
    cfg.abs_tol = 1e-6;
    return cfg;
}

// 1. Thermal response: oracle vs 1/(2 pi (e^{2 pi/abar}-1)) to relative 1e-6,
//    each point under 10 s.
void criterion_1() {
    double worst = 0.0;
    double slowest = 0.0;
    for (double abar : {0.5, 1.0, 2.0, 10.0, 100.0}) {
        const auto t0 = std::chrono::steady_clock::now();
        const double v = rate_numeric_infinite(abar, 0.0, Direction::Excite, tight_cfg());
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        slowest = std::max(slowest, secs);
        worst = std::max(worst, std::abs(v - planck_rate(abar)) / planck_rate(abar));
    }
    report(1, "thermal response", worst <= 1e-6 && slowest < 10.0,
           "max rel dev " + fmt(worst) + " (tol 1e-6), slowest point " + fmt(slowest) + " s");
}

// 2. Detailed balance: closed forms to 1e-12 everywhere; oracle ratio to
//    1e-5 at (1, 0) and (100, 0.05).
void criterion_2() {
    double worst_closed = 0.0;
    for (double abar : {0.1, 0.5, 1.0, 10.0, 100.0, 1000.0}) {
        for (double w : {0.0, 0.1, 0.3}) {
            DetectorParams p(abar, w, 10.0, 0.01);
            const double ratio =
                rate_infinite(p, Direction::Deexcite) / rate_infinite(p, Direction::Excite);
            const double E = std::exp(2.0 * kPi / abar);
            worst_closed = std::max(worst_closed, std::abs(ratio - E) / E);
        }
    }
    const bool closed_ok = worst_closed <= 1e-12;

    const double r1m = rate_numeric_infinite(1.0, 0.0, Direction::Excite, tight_cfg());
    const double r1p = rate_numeric_infinite(1.0, 0.0, Direction::Deexcite, tight_cfg());
    const double dev1 = std::abs(r1p / r1m - std::exp(2.0 * kPi)) / std::exp(2.0 * kPi);

    const double r2m = rate_numeric_infinite(100.0, 0.05, Direction::Excite, finite_w_cfg());
    const double r2p = rate_numeric_infinite(100.0, 0.05, Direction::Deexcite, finite_w_cfg());
    const double E100 = std::exp(2.0 * kPi / 100.0);
    const double dev2 = std::abs(r2p / r2m - E100) / E100;

    const bool pass = closed_ok && dev1 <= 1e-5 && dev2 <= 1e-5;
    report(2, "detailed balance", pass,
           "closed-form max dev " + fmt(worst_closed) + " (tol 1e-12); oracle dev " + fmt(dev1)
               + " at (1,0), " + fmt(dev2)
               + " at (100,0.05) (tol 1e-5; the second is structural: the quadrature keeps "
                 "R+ - R- = 1/2pi at every w, which shifts the ratio by (w^2 F/2pi)/(R- planck) "
                 "~ 1.1e-5 here)");
}

// 3. Velocity factor: oracle slope vs -F to 5e-2 at abar in {10, 100};
//    F(100) against a 30-digit evaluation, within 0.1773 +/- 0.0018.
void criterion_3() {
    const QuadratureConfig cfg = finite_w_cfg();
    double worst_slope = 0.0;
    for (double abar : {10.0, 100.0}) {
        const double r0 = rate_numeric_infinite(abar, 0.0, Direction::Excite, cfg);
        const double rw = rate_numeric_infinite(abar, 0.05, Direction::Excite, cfg);
        const double slope = (rw - r0) / (0.05 * 0.05);
        worst_slope = std::max(worst_slope,
                               std::abs(slope + velocity_factor(abar)) / velocity_factor(abar));
    }
    // 30-digit reference: 0.177270078368520105420123...
    const double f100_ref = 0.17727007836852010542;
    const double impl_dev = std::abs(velocity_factor(100.0) - f100_ref) / f100_ref;
    const bool band = std::abs(f100_ref - 0.1773) <= 0.0018;
    const bool pass = worst_slope <= 5e-2 && impl_dev <= 1e-12 && band;
    report(3, "velocity factor", pass,
           "max slope dev " + fmt(worst_slope) + " (tol 0.05); F(100) vs 30-digit ref rel "
               + fmt(impl_dev) + ", band check |0.1772700784 - 0.1773| <= 0.0018");
}

// 4. Cancellation safety: bracket branches agree to 1e-9 on [18, 22];
//    F/abar asymptote within 1% at abar = 1e4.
void criterion_4() {
    double worst = 0.0;
    for (double abar = 18.0; abar <= 22.0001; abar += 0.125) {
        const double d = velocity_factor_bracket_direct(abar);
        const double s = velocity_factor_bracket_series(abar);
        worst = std::max(worst, std::abs(s - d) / std::abs(d));
    }
    const double asym = (7.0 - 2.0 * kPi * kPi / 3.0) / (24.0 * kPi * kPi);
    const double adev = std::abs(velocity_factor(1e4) / 1e4 - asym) / asym;
    const bool pass = worst <= 1e-9 && adev <= 1e-2;
    report(4, "cancellation safety", pass,
           "crossover branch dev " + fmt(worst) + " (tol 1e-9); asymptote dev " + fmt(adev)
               + " (tol 0.01)");
}

// 5. Finite-time correction: analytic curvature equals the frequency-scaling
//    central difference to 1e-6; rate_finite equals the Gaussian-window
//    response to 1e-3 at sigma = 10.
void criterion_5() {
    double worst_fd = 0.0;
    for (double abar : {1.0, 10.0, 100.0}) {
        for (double w : {0.0, 0.1}) {
            for (Direction d : {Direction::Excite, Direction::Deexcite}) {
                DetectorParams p(abar, w, 10.0, 0.01);
                const double analytic =
                    abar * abar
                    * ((d == Direction::Excite)
                           ? planck_rate_d2(abar) - w * w * velocity_factor_d2(abar)
                           : planck_rate_d2(abar) - w * w * boosted_velocity_factor_d2(abar));
                const double fd = omega_second_derivative_fd(p, d, 4e-3);
                worst_fd = std::max(worst_fd, std::abs(analytic - fd) / std::abs(fd));
            }
        }
    }

    double worst_resp = 0.0;
    for (double w : {0.0, 0.1}) {
        DetectorParams p(100.0, w, 10.0, 0.01);
        // the windowed branch at w != 0 carries a larger eps residual; the
        // comparison below only needs 1e-3 relative
        QuadratureConfig rcfg = finite_w_cfg();
        rcfg.abs_tol = 1e-5;
        const double resp = response_rate(100.0, w, 10.0, Direction::Excite, rcfg);
        worst_resp =
            std::max(worst_resp, std::abs(rate_finite(p, Direction::Excite) - resp) / resp);
    }
    const bool pass = worst_fd <= 1e-6 && worst_resp <= 1e-3;
    report(5, "finite-time correction", pass,
           "analytic-vs-difference dev " + fmt(worst_fd) + " (tol 1e-6); window-response dev "
               + fmt(worst_resp) + " (tol 1e-3)");
}

// 6. Mitigation magnitude: dQ = 1.83e-6 +/- 5 %, dC = 3.66e-6 +/- 5 % between
//    w = 0.1 and w = 0 at (abar=100, theta=pi/2, sigma=10, lambda=0.01).
void criterion_6() {
    DetectorParams p0(100.0, 0.0, 10.0, 0.01);
    DetectorParams p1(100.0, 0.1, 10.0, 0.01);
    const double dq =
        coherence_qubit_closed(p1, kPi / 2.0) - coherence_qubit_closed(p0, kPi / 2.0);
    const double dc = complementarity_closed(p1).complementarity
                      - complementarity_closed(p0).complementarity;
    const bool pass = std::abs(dq - 1.83e-6) <= 0.05 * 1.83e-6
                      && std::abs(dc - 3.66e-6) <= 0.05 * 3.66e-6;
    report(6, "mitigation magnitude", pass,
           "dQ = " + fmt(dq) + " (target 1.83e-6 +/- 5%), dC = " + fmt(dc)
               + " (target 3.66e-6 +/- 5%)");
}

// 7. Matrix/closed-form equivalence within 5 lambda^4 over the validated
//    grid, with trace, Hermiticity-by-construction and positivity held.
void criterion_7() {
    double worst_qubit = 0.0;
    double worst_interf_ratio = 0.0;  // gap / lambda^4
    double worst_trace = 0.0;
    double min_eig = 0.0;
    bool ok = true;
    for (double abar : {10.0, 31.6, 100.0, 316.0, 1000.0}) {
        for (double w : {0.0, 0.1, 0.2}) {
            for (double sigma : {5.0, 10.0, 50.0}) {
                for (double lambda : {0.005, 0.01, 0.02}) {
                    DetectorParams p(abar, w, sigma, lambda);
                    QubitAngles angles(kPi / 2.0, 0.4);
                    const auto rho = qubit_density_out(p, angles, qubit_moments(p, angles));
                    const double gap =
                        std::abs(coherence_l1(rho) - coherence_qubit_closed(p, kPi / 2.0));
                    const PhaseSetting phase(kPi / 3.0);
                    const auto rho_i =
                        interferometer_density_out(p, phase, interferometer_moments(p));
                    const double gap_i = std::abs(
                        coherence_l1(rho_i) - interferometer_coherence_closed(p, phase));
                    const double bound = 5.0 * std::pow(lambda, 4);
                    if (gap > bound || gap_i > bound) ok = false;
                    worst_qubit = std::max(worst_qubit, gap);
                    worst_interf_ratio =
                        std::max(worst_interf_ratio, gap_i / std::pow(lambda, 4));
                    worst_trace = std::max({worst_trace, std::abs(rho.trace() - 1.0),
                                            std::abs(rho_i.trace() - 1.0)});
                    min_eig = std::min({min_eig, rho.min_eigenvalue(), rho_i.min_eigenvalue()});
                }
            }
        }
    }
    const bool pass = ok && worst_trace <= 1e-12 && min_eig >= -1e-10;
    report(7, "matrix/closed-form equivalence", pass,
           "qubit max |l1 - closed| " + fmt(worst_qubit)
               + " (within 5 lambda^4 everywhere); interferometer max gap/lambda^4 = "
               + fmt(worst_interf_ratio)
               + " vs bound 5 -- its true lambda^4 envelope is (sigma/4pi)^2/(2 sin(alpha) "
                 "(1-depletion)), which exceeds 5 once sigma > ~25; trace dev "
               + fmt(worst_trace) + "; min eigenvalue " + fmt(min_eig));
}

// 8. Complementarity: untruncated V^2 + D^2 <= 1 + 1e-10 over the grid, and
//    exact w = 0 reductions of all four printed closed forms.
void criterion_8() {
    double worst_bound = 0.0;
    for (double abar : {10.0, 31.6, 100.0, 316.0, 1000.0}) {
        for (double w : {0.0, 0.1, 0.2}) {
            for (double sigma : {5.0, 10.0, 50.0}) {
                for (double lambda : {0.005, 0.01, 0.02}) {
                    DetectorParams p(abar, w, sigma, lambda);
                    worst_bound =
                        std::max(worst_bound, complementarity_closed(p).vsq_plus_dsq - 1.0);
                }
            }
        }
    }

    double worst_red = 0.0;
    for (double abar : {1.0, 10.0, 100.0}) {
        for (double sigma : {5.0, 10.0}) {
            const double lambda = 0.01;
            DetectorParams p(abar, 0.0, sigma, lambda);
            const double sl2 = sigma * lambda * lambda;
            const double E = std::exp(2.0 * kPi / abar);
            const double cth = coth(kPi / abar);
            const double theta = 1.1;
            const double s2 = std::sin(theta / 2.0) * std::sin(theta / 2.0);
            const double c2 = std::cos(theta / 2.0) * std::cos(theta / 2.0);
            const double q_ref =
                std::abs(std::sin(theta))
                * (1.0 - (1.0 / (2.0 * kPi)) * (sl2 / (E - 1.0)) * (s2 + E * c2));
            const double v_ref = 1.0 - sl2 / (4.0 * kPi) * cth;
            const double d_ref = sl2 / (2.0 * kPi);
            const double c_ref = 1.0 - sl2 / (2.0 * kPi) * cth;
            worst_red = std::max(
                {worst_red,
                 std::abs(coherence_qubit_closed(p, theta, RateKind::InfiniteTime) - q_ref),
                 std::abs(visibility_closed(p, RateKind::InfiniteTime) - v_ref),
                 std::abs(distinguishability_closed(p, RateKind::InfiniteTime) - d_ref),
                 std::abs(complementarity_closed(p, RateKind::InfiniteTime).complementarity
                          - c_ref)});
        }
    }
    const bool pass = worst_bound <= 1e-10 && worst_red <= 1e-14;
    report(8, "complementarity", pass,
           "max (V^2+D^2) - 1 = " + fmt(worst_bound) + " (slack 1e-10); w=0 reduction dev "
               + fmt(worst_red));
}

// 9. Monotonicity suite on 51-point sweeps plus byte-exact figure datasets.
void criterion_9(const std::string& regression_dir) {
    bool mono = true;

    SweepSpec in_abar{SweepVariable::Abar,
                      {10.0, 200.0, 51, GridSpacing::Log},
                      DetectorParams(10.0, 0.1, 10.0, 0.01),
                      QubitAngles(kPi / 2.0),
                      PhaseSetting(kPi / 2.0),
                      {Quantity::CoherenceQubit, Quantity::Complementarity}};
    auto res = run_sweep(in_abar);
    for (std::size_t i = 1; i < res.records.size(); ++i) {
        if (!(*res.records[i].values[0] < *res.records[i - 1].values[0])) mono = false;
        if (!(*res.records[i].values[1] < *res.records[i - 1].values[1])) mono = false;
    }

    for (double abar : {10.0, 100.0}) {
        SweepSpec in_w{SweepVariable::W,
                       {0.0, 0.2, 51, GridSpacing::Linear},
                       DetectorParams(abar, 0.0, 10.0, 0.01),
                       QubitAngles(kPi / 2.0),
                       PhaseSetting(kPi / 2.0),
                       {Quantity::CoherenceQubit, Quantity::Complementarity}};
        auto rw = run_sweep(in_w);
        for (std::size_t i = 1; i < rw.records.size(); ++i) {
            if (!(*rw.records[i].values[0] > *rw.records[i - 1].values[0])) mono = false;
            if (!(*rw.records[i].values[1] > *rw.records[i - 1].values[1])) mono = false;
        }
    }

    SweepSpec in_theta{SweepVariable::Theta,
                       {0.0, kPi, 51, GridSpacing::Linear},
                       DetectorParams(100.0, 0.05, 10.0, 0.01),
                       QubitAngles(kPi / 2.0),
                       PhaseSetting(kPi / 2.0),
                       {Quantity::CoherenceQubit}};
    auto rt = run_sweep(in_theta);
    const std::size_t mid = 25;  // theta = pi/2 on the 51-point grid
    for (std::size_t i = 0; i < rt.records.size(); ++i) {
        if (*rt.records[i].values[0] > *rt.records[mid].values[0] + 1e-15) mono = false;
        if (i < mid && !(*rt.records[i].values[0] <= *rt.records[i + 1].values[0] + 1e-15))
            mono = false;
    }
    if (std::abs(*rt.records[0].values[0]) > 1e-15) mono = false;
    if (std::abs(*rt.records[50].values[0]) > 1e-12) mono = false;

    // regression: regenerate all figure datasets and compare byte-for-byte
    const auto t0 = std::chrono::steady_clock::now();
    bool regression_ok = true;
    std::size_t files = 0;
    std::string first_mismatch;
    for (int fig = 1; fig <= 5; ++fig) {
        for (const auto& f : figure_dataset(fig)) {
            ++files;
            std::ifstream is(std::filesystem::path(regression_dir) / f.name, std::ios::binary);
            if (!is) {
                regression_ok = false;
                if (first_mismatch.empty()) first_mismatch = f.name + " (missing)";
                continue;
            }
            std::stringstream ss;
            ss << is.rdbuf();
            if (ss.str() != f.csv) {
                regression_ok = false;
                if (first_mismatch.empty()) first_mismatch = f.name;
            }
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const bool pass = mono && regression_ok && secs < 10.0;
    report(9, "monotonicity and figure regression", pass,
           std::string("monotone sweeps ") + (mono ? "ok" : "VIOLATED") + "; "
               + std::to_string(files) + " regression files "
               + (regression_ok ? "byte-identical" : ("MISMATCH at " + first_mismatch)) + " in "
               + fmt(secs) + " s");
}

// 10. Ultra-relativistic suppression: exact 16x scaling of the closed form
//     under w -> 2w, and the oracle against the w^-4 asymptote at (1, 10).
void criterion_10() {
    DetectorParams p1(1.0, 10.0, 10.0, 0.01, Regime::UltraRelativistic);
    DetectorParams p2(1.0, 20.0, 10.0, 0.01, Regime::UltraRelativistic);
    const double ratio = rate_ultra(p1, Direction::Excite) / rate_ultra(p2, Direction::Excite);
    const bool scaling_ok = std::abs(ratio - 16.0) <= 1e-12 * 16.0;

    QuadratureConfig cfg;
    cfg.abs_tol = 1e-5;
    const double oracle = rate_numeric_infinite(1.0, 10.0, Direction::Excite, cfg);
    const double asym = rate_ultra(p1, Direction::Excite);
    const double dev = std::abs(oracle - asym) / asym;
    const bool asym_ok = dev <= 0.1;

    report(10, "ultra-relativistic suppression", scaling_ok && asym_ok,
           "w->2w ratio " + fmt(ratio) + " (exact 16); oracle/asymptote dev " + fmt(dev)
               + " (tol 0.1) -- the oracle gives " + fmt(oracle) + " vs asymptote " + fmt(asym)
               + ": the w^-4 form is not the pointwise large-w limit of the two-point "
                 "function, whose response tends to (abar/(8 sqrt3 pi)) e^{-2 sqrt3/abar} = "
               + fmt((1.0 / (8.0 * std::sqrt(3.0) * kPi)) * std::exp(-2.0 * std::sqrt(3.0)))
               + " instead");
}

// 11. C-moment suppression: ratio below 1e-3 at sigma = 3 (at the abar = 1
//     reference point) and below the double floor at sigma = 10.
void criterion_11() {
    QuadratureConfig cfg = finite_w_cfg();
    const CMoment c3 = c_moment_numeric(1.0, 0.0, 3.0, Direction::Excite, cfg);
    const double f3 = response_numeric_finite(1.0, 0.0, 3.0, Direction::Excite, cfg);
    const double ratio3 = std::abs(c3.value) / f3;

    const CMoment c10 = c_moment_numeric(1.0, 0.0, 10.0, Direction::Excite, cfg);
    const double f10 = response_numeric_finite(1.0, 0.0, 10.0, Direction::Excite, cfg);
    const double ratio10 = std::abs(c10.value) / f10;

    // the high-acceleration regime the dropped C-terms actually serve
    const CMoment c3h = c_moment_numeric(100.0, 0.0, 3.0, Direction::Excite, cfg);
    const double f3h = response_numeric_finite(100.0, 0.0, 3.0, Direction::Excite, cfg);

    const bool pass = ratio3 < 1e-3 && ratio10 < 1e-16;
    report(11, "C-moment suppression", pass,
           "|C|/F- = " + fmt(ratio3) + " at (sigma=3, abar=1) (tol 1e-3) and " + fmt(ratio10)
               + " at sigma=10 (double floor) -- at abar=1 the e^{-9} prefactor meets a "
                 "C-integral ~50x the thermally suppressed F- integral; at abar=100 the "
                 "stated bound does hold: "
               + fmt(std::abs(c3h.value) / f3h));
}

}  // namespace

int main(int argc, char** argv) {
    std::string regression_dir = "tests/regression";
    for (int i = 1; i < argc - 1; ++i) {
        if (std::string(argv[i]) == "--data-dir") regression_dir = argv[i + 1];
    }

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9(regression_dir);
    criterion_10();
    criterion_11();

    std::printf("%d of 11 criteria passed\n", 11 - g_failures);
    return g_failures;
}
