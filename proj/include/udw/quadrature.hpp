// Adaptive Gauss-Kronrod (G7, K15) integration of complex-valued integrands
// on a finite interval, plus polynomial (Neville) extrapolation.
//
// Refinement is globally adaptive: the segment with the largest error
// estimate is bisected until the summed estimate meets the tolerance or the
// subdivision budget is exhausted.  The final value is a pairwise reduction
// over segments sorted by position, so the result does not depend on the
// order in which segments were refined.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace udw {

struct BudgetExceededError : std::runtime_error {
    explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

struct NonConvergenceError : std::runtime_error {
    explicit NonConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// QUADPACK dqk15 nodes and weights.
inline constexpr double kGK15X[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kGK15WK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGK15WG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
struct GK15Result {
    std::complex<double> integral;
    double error;
};

template <class F>
GK15Result<F> gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    std::complex<double> fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kGK15X[i]);
        fv[14 - i] = f(c + h * kGK15X[i]);
    }
    fv[7] = f(c);
    std::complex<double> kron = kGK15WK[7] * fv[7];
    std::complex<double> gauss = kGK15WG[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        kron += kGK15WK[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) gauss += kGK15WG[i / 2] * (fv[i] + fv[14 - i]);
    }
    kron *= h;
    gauss *= h;
    return {kron, std::abs(kron - gauss)};
}

}  // namespace detail

struct QuadOutcome {
    std::complex<double> value;
    double error_estimate;
    std::size_t subdivisions;
};

// Integrate f over [a, b].  `breakpoints` seeds the initial partition
// (values outside (a, b) are ignored); `abs_tol` is the target for the
// summed error estimate; `max_subdivisions` bounds the bisection count.
template <class F>
QuadOutcome integrate_adaptive(F&& f, double a, double b, double abs_tol,
                               std::size_t max_subdivisions,
                               std::span<const double> breakpoints = {}) {
    if (!(b > a)) throw std::invalid_argument("integrate_adaptive: requires b > a");

    struct Segment {
        double a, b;
        std::complex<double> value;
        double error;
    };

    std::vector<double> edges{a, b};
    for (double p : breakpoints)
        if (p > a && p < b) edges.push_back(p);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<Segment> segs;
    segs.reserve(256);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        auto r = detail::gk15(f, edges[i], edges[i + 1]);
        segs.push_back({edges[i], edges[i + 1], r.integral, r.error});
    }

    const double width_floor = 1e-15 * (std::abs(a) + std::abs(b) + 1.0);
    std::size_t used = 0;
    auto total_error = [&segs] {
        double e = 0.0;
        for (const auto& s : segs) e += s.error;
        return e;
    };

    // refine well past the requested tolerance; the K-G estimate is cheap to
    // drive down and downstream extrapolation differences see the real error
    const double target = abs_tol / 64.0;
    while (total_error() > target) {
        // split the worst refinable segment
        std::size_t worst = segs.size();
        double worst_err = 0.0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            if (segs[i].b - segs[i].a <= width_floor) continue;
            if (segs[i].error > worst_err) {
                worst_err = segs[i].error;
                worst = i;
            }
        }
        if (worst == segs.size()) break;  // nothing refinable left; roundoff floor
        if (++used > max_subdivisions)
            throw BudgetExceededError("integrate_adaptive: subdivision budget exhausted");
        const Segment s = segs[worst];
        const double mid = 0.5 * (s.a + s.b);
        auto left = detail::gk15(f, s.a, mid);
        auto right = detail::gk15(f, mid, s.b);
        segs[worst] = {s.a, mid, left.integral, left.error};
        segs.push_back({mid, s.b, right.integral, right.error});
    }

    std::sort(segs.begin(), segs.end(),
              [](const Segment& x, const Segment& y) { return x.a < y.a; });

    // pairwise reduction over the position-ordered segment values
    std::vector<std::complex<double>> vals;
    vals.reserve(segs.size());
    for (const auto& s : segs) vals.push_back(s.value);
    while (vals.size() > 1) {
        std::vector<std::complex<double>> next;
        next.reserve((vals.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < vals.size(); i += 2) next.push_back(vals[i] + vals[i + 1]);
        if (vals.size() % 2 == 1) next.push_back(vals.back());
        vals.swap(next);
    }
    return {vals.empty() ? std::complex<double>(0.0) : vals[0], total_error(), used};
}

// Neville extrapolation of (x_i, y_i) to x = 0.  Returns the extrapolated
// value and the magnitude of the last diagonal correction.
inline std::pair<std::complex<double>, double> extrapolate_to_zero(
    std::span<const double> xs, std::span<const std::complex<double>> ys) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("extrapolate_to_zero: mismatched or empty inputs");
    std::vector<std::complex<double>> row(ys.begin(), ys.end());
    std::complex<double> diag_prev = row[0], diag_last = row[0];
    for (std::size_t k = 1; k < row.size(); ++k) {
        for (std::size_t i = 0; i + k < ys.size(); ++i)
            row[i] = (xs[i] * row[i + 1] - xs[i + k] * row[i]) / (xs[i] - xs[i + k]);
        diag_prev = diag_last;
        diag_last = row[0];
    }
    return {diag_last, std::abs(diag_last - diag_prev)};
}

}  // namespace udw
