#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace gwd::quad {

struct Estimate {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t subdivisions = 0;
};

/// 21-point Gauss-Kronrod rule on [a, b] with the 10-point Gauss rule embedded
/// for the error estimate.
[[nodiscard]] Estimate gauss_kronrod21(const std::function<double(double)>& f, double a, double b);

struct AdaptiveOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    std::size_t max_subdivisions = 200000;
};

/// Globally adaptive integration over consecutive panels [b0,b1], [b1,b2], ...
/// The panel with the largest error estimate is bisected until the summed error
/// drops below max(abs_tol, rel_tol * |value|). Throws QuadratureFailure when the
/// subdivision budget runs out.
[[nodiscard]] Estimate integrate_adaptive(const std::function<double(double)>& f,
                                          std::span<const double> breakpoints,
                                          const AdaptiveOptions& opts);

}  // namespace gwd::quad
