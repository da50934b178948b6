#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "gwdecohere/errors.hpp"

namespace gwd {

struct RootResult {
    double root = 0.0;
    int iterations = 0;
};

/// Brent-Dekker root finding on a bracket [a, b] with f(a) f(b) <= 0.
/// Non-finite function values (e.g. -inf from log(0)) are tolerated: the step
/// falls back to bisection whenever interpolation would use them.
inline RootResult brent_root(const std::function<double(double)>& f, double a, double b,
                             double x_tol, int max_iter = 200) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return {a, 0};
    if (fb == 0.0) return {b, 0};
    if ((fa > 0.0) == (fb > 0.0)) {
        throw BracketFailure("brent_root: f(a) and f(b) have the same sign");
    }
    if (std::abs(fa) < std::abs(fb)) {
        std::swap(a, b);
        std::swap(fa, fb);
    }
    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    for (int iter = 1; iter <= max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * x_tol;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) return {b, iter};

        const bool finite = std::isfinite(fa) && std::isfinite(fb) && std::isfinite(fc);
        if (finite && std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double p;
            double q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
    }
    throw BracketFailure("brent_root: no convergence within iteration budget");
}

}  // namespace gwd
