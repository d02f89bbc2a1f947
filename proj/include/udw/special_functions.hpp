// Scalar special functions used by the rate formulas and the quadrature
// counterterms.

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace udw {

// Scaled complementary error function erfcx(y) = exp(y^2) * erfc(y).
//
// For |y| < 5 the direct product is accurate (erfc is well above the
// denormal range and exp(y^2) < e^25).  For y >= 5 the product degrades and
// eventually overflows, so we switch to the Laplace continued fraction
//
//   erfcx(y) = 1/sqrt(pi) * 1/(y + (1/2)/(y + 1/(y + (3/2)/(y + ...))))
//
// evaluated with Lentz's method.  Negative y uses erfcx(y) = 2 exp(y^2) -
// erfcx(-y), which overflows for y << 0 exactly where exp(y^2) does.
inline double erfcx(double y) {
    if (y < 0.0) {
        return 2.0 * std::exp(y * y) - erfcx(-y);
    }
    if (y < 5.0) {
        return std::exp(y * y) * std::erfc(y);
    }
    const double tiny = std::numeric_limits<double>::min();
    const double eps = std::numeric_limits<double>::epsilon();
    double f = y;
    double C = f;
    double D = 0.0;
    double a = 0.0;
    for (int it = 0; it < 200; ++it) {
        a += 0.5;
        D = y + a * D;
        C = y + a / C;
        if (D == 0.0) D = tiny;
        if (C == 0.0) C = tiny;
        D = 1.0 / D;
        const double delta = C * D;
        f *= delta;
        if (std::abs(delta - 1.0) < eps) break;
    }
    return 1.0 / (std::sqrt(3.14159265358979323846) * f);
}

inline double coth(double x) { return 1.0 / std::tanh(x); }

// h(x) = (e^x + 1) - (2/x)(e^x - 1) = sum_{k>=2} (k-1) x^k / (k+1)!
//
// This combination controls the second frequency derivative of the thermal
// rate; both terms are O(1) while the sum is O(x^2), so for small |x| the
// direct form loses the leading digits and the series is used instead.
inline double thermal_curvature_bracket(double x) {
    if (std::abs(x) < 0.75) {
        double term = x * x / 6.0;  // k = 2
        double sum = term;
        for (int k = 3; k < 24; ++k) {
            // term_{k} = (k-1) x^k / (k+1)!  =>  ratio = x * (k-1) / ((k-2)(k+1))
            term *= x * double(k - 1) / (double(k - 2) * double(k + 1));
            sum += term;
            if (std::abs(term) < 1e-20 * std::abs(sum)) break;
        }
        return sum;
    }
    return (std::exp(x) + 1.0) - (2.0 / x) * std::expm1(x);
}

}  // namespace udw
